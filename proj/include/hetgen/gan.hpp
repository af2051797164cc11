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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hetgen/autodiff.hpp"
#include "hetgen/config.hpp"
#include "hetgen/embed.hpp"
#include "hetgen/graph.hpp"
#include "hetgen/nn.hpp"
#include "hetgen/walk.hpp"

namespace hetgen {

struct GeneratorDims {
  std::size_t num_node_types = 0;  // excluding the end-of-sequence slot
  std::size_t num_edge_types = 0;
  std::size_t noise_dim = 16;
  std::size_t hidden_dim = 64;
  std::size_t encode_dim = 32;
  std::size_t embed_dim = 32;
};

/// Recurrent walk generator.
///  m0 = tanh(f0(z)),  (m_t, h_t) = lstm(m_{t-1}, h_{t-1}, a_{t-1})
///  type_t ~ gumbel(g_o(h_t)),  target_t = g_v([h_t, type_t])
///  node_t ~ softmax(-|target_t - e_i|^2) over members of type_t
///  a_t = tanh(g_c([type_t, e(node_t)]))
///  edge_t = argmax g_e([type_t, e_t, type_{t-1}, e_{t-1}])
struct GeneratorParams {
  GeneratorDims dims;
  nn::Dense f0;
  nn::LstmParams lstm;
  nn::Dense g_o;
  nn::Dense g_v;
  nn::Dense g_c;
  nn::Dense g_e;

  static GeneratorParams create(const GeneratorDims& dims, Rng& rng);
  std::size_t type_slots() const { return dims.num_node_types + 1; }
  nn::ParamList params() const;
};

/// Two recurrent tracks, one over node-type one-hots and one over node
/// embeddings, each ending in a scalar head. Walks are padded to seq_len.
struct DiscriminatorParams {
  std::size_t seq_len = 0;
  std::size_t type_slots = 0;
  std::size_t embed_dim = 0;
  nn::LstmParams type_lstm;
  nn::Dense type_head;
  nn::LstmParams node_lstm;
  nn::Dense node_head;

  static DiscriminatorParams create(std::size_t seq_len, std::size_t type_slots,
                                    std::size_t embed_dim, std::size_t hidden_dim, Rng& rng);
  static DiscriminatorParams zeros(std::size_t seq_len, std::size_t type_slots,
                                   std::size_t embed_dim, std::size_t hidden_dim);
  nn::ParamList params() const;
};

struct GenerationOptions {
  std::size_t max_len = 4;  // nodes
  double temperature = 0.5;
  bool uniform_node_sampling = false;
  std::size_t max_type_resamples = 10;
  /// Forward with relaxed type and node-selection values instead of the
  /// straight-through hard ones. The gradient is then exact, which is what
  /// finite-difference checks compare against.
  bool relaxed_forward = false;
  /// Forces the end-of-sequence type at this step (0-based) for every walk.
  std::optional<std::size_t> force_eos_at_step;
};

/// Per-step discriminator inputs plus the discrete walks they encode.
struct WalkBatch {
  std::vector<HeteroWalk> walks;
  std::vector<ad::Var> type_inputs;  // seq_len tensors, batch x type_slots
  std::vector<ad::Var> node_inputs;  // seq_len tensors, batch x embed_dim
};

/// Runs the generator for `batch` walks. Ops are recorded on `tape` when
/// it has gradients enabled.
WalkBatch run_generator(ad::Tape& tape, const GeneratorParams& gen, const EmbeddingTable& table,
                        const TypeSchema& schema, std::size_t batch,
                        const GenerationOptions& options, Rng& rng);

HeteroWalk generate_walk(const GeneratorParams& gen, const EmbeddingTable& table,
                         const TypeSchema& schema, const GenerationOptions& options, Rng& rng);

/// Generates in fixed chunks so the output depends only on `rng` and `count`.
std::vector<HeteroWalk> generate_walks(const GeneratorParams& gen, const EmbeddingTable& table,
                                       const TypeSchema& schema, std::size_t count,
                                       const GenerationOptions& options, Rng& rng);

/// One-hot types padded with the end-of-sequence slot, embeddings padded
/// with zeros.
WalkBatch encode_walks(std::span<const HeteroWalk> walks, const EmbeddingTable& table,
                       std::size_t seq_len, std::size_t type_slots);

/// batch x 1 scores D_o(types) + D_v(nodes).
ad::Var score_batch(ad::Tape& tape, const DiscriminatorParams& disc, const WalkBatch& batch);

double score_walk(const DiscriminatorParams& disc, const HeteroWalk& walk,
                  const EmbeddingTable& table);

/// Optimizer state that persists across steps of one training session.
struct TrainerState {
  nn::RmsProp critic_opt;
  nn::RmsProp generator_opt;

  explicit TrainerState(double decay = 0.9) : critic_opt(decay), generator_opt(decay) {}
};

/// One descent step on mean D(fake) - mean D(real), then clamps every critic
/// weight into [-clip, clip]. Returns the loss before the update.
double critic_step(const GeneratorParams& gen, DiscriminatorParams& disc,
                   std::span<const HeteroWalk> real_batch, const EmbeddingTable& table,
                   const TypeSchema& schema, double clip, double lr,
                   const GenerationOptions& options, TrainerState& state, Rng& rng);

/// One descent step on -mean D(G(z)) (plus the auxiliary edge-type
/// cross-entropy on `edge_supervision` when the schema has no edge-type
/// rule). The critic is left unchanged.
double generator_step(GeneratorParams& gen, const DiscriminatorParams& disc,
                      std::size_t batch_size, const EmbeddingTable& table,
                      const TypeSchema& schema, double lr, const GenerationOptions& options,
                      std::span<const HeteroWalk> edge_supervision, double edge_loss_weight,
                      TrainerState& state, Rng& rng);

/// Generator loss without an update; used by gradient checks.
ad::Var generator_loss(ad::Tape& tape, const GeneratorParams& gen,
                       const DiscriminatorParams& disc, std::size_t batch_size,
                       const EmbeddingTable& table, const TypeSchema& schema,
                       const GenerationOptions& options,
                       std::span<const HeteroWalk> edge_supervision, double edge_loss_weight,
                       Rng& rng);

struct TrainLogEntry {
  std::size_t step = 0;
  double critic_loss = 0.0;
  double generator_loss = 0.0;
};

struct TrainedModel {
  GeneratorParams gen;
  DiscriminatorParams disc;
  EmbeddingTable table;
  std::vector<TrainLogEntry> log;
};

GenerationOptions generation_options(const TrainConfig& config);

/// Called every checkpoint_interval steps with the step count completed.
using CheckpointFn = std::function<void(const TrainedModel&, std::size_t steps_done)>;

/// Embedding training, then alternating n_critic critic steps per generator
/// step. A non-finite loss or parameter raises a training error after the
/// callback has seen the state of the last completed step.
TrainedModel train(const HetGraph& graph, const TrainConfig& config,
                   const CheckpointFn& on_checkpoint = {});

/// Trains only the embedding table (stage one of train()).
EmbeddingTable train_graph_embeddings(const HetGraph& graph, const TrainConfig& config);

}  // namespace hetgen
