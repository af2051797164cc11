/*
 * Copyright 2026 The hetgen Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>

namespace hetgen {

/// Every knob of a run. Serialized as `key=value` lines; unknown keys are
/// rejected so typos surface immediately.
struct TrainConfig {
  std::uint64_t seed = 1;

  // data
  double train_fraction = 0.6;

  // embeddings
  std::size_t embed_dim = 32;
  std::size_t embed_window = 2;
  std::size_t embed_negatives = 5;
  std::size_t embed_epochs = 5;
  double embed_lr = 0.025;
  std::size_t embed_walks_per_node = 20;
  std::size_t embed_walk_length = 8;
  double embed_radius = 4.0;  // rows scaled to this norm; 0 keeps raw vectors

  // networks
  std::size_t noise_dim = 16;
  std::size_t hidden_dim = 32;
  std::size_t encode_dim = 32;
  std::size_t disc_hidden_dim = 32;

  // adversarial training
  std::set<std::size_t> walk_lengths{1, 2, 3};
  std::size_t max_len = 4;
  std::size_t batch_size = 64;
  std::size_t n_critic = 5;
  double clip = 0.1;
  double critic_lr = 5e-4;
  double generator_lr = 5e-4;
  double rms_decay = 0.9;
  double temperature = 0.5;
  std::size_t steps = 5000;
  std::size_t checkpoint_interval = 500;
  double edge_loss_weight = 1.0;
  std::size_t max_type_resamples = 10;

  // generation and assembly
  std::size_t num_graphs = 10;
  std::size_t target_edges = 0;  // 0 = edge count of the training graph
  std::size_t walks_per_edge = 16;
  std::size_t eval_samples = 10000;

  // ablations
  bool single_long_walk = false;         // one walk length of 8 edges
  bool uniform_node_sampling = false;    // no embedding-guided node choice
  bool probabilistic_assembler = false;  // edges drawn from S, patterns ignored

  /// Applies ablation side effects (walk lengths, max_len) and validates.
  void finalize();
  void validate() const;

  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  std::string to_text() const;
  /// Overrides only the keys present in `text`.
  void apply_text(const std::string& text);
  static TrainConfig from_text(const std::string& text);
  static TrainConfig from_file(const std::filesystem::path& file);
};

}  // namespace hetgen
