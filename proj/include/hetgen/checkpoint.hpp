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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hetgen/config.hpp"
#include "hetgen/embed.hpp"
#include "hetgen/gan.hpp"
#include "hetgen/graph.hpp"
#include "hetgen/nn.hpp"

namespace hetgen {

/// Everything needed to generate graphs after training: the node skeleton
/// of the training graph, the effective config and all tensors.
struct Model {
  TypeSchema schema;
  std::vector<TypeIndex> node_types;
  std::vector<std::string> external_ids;
  TrainConfig config;
  GeneratorParams gen;
  DiscriminatorParams disc;
  EmbeddingTable table;

  /// The training graph's nodes with no edges.
  HetGraph node_skeleton() const;
};

Model make_model(const HetGraph& graph, const TrainConfig& config, const TrainedModel& trained);

/// Text header (`key<TAB>value` lines), a tensor manifest (`name d1 d2 ...`)
/// and a payload of little-endian doubles in manifest order.
void save_model(const Model& model, const std::filesystem::path& file);
Model load_model(const std::filesystem::path& file);

/// Manifest plus payload for a bare list of named tensors.
void write_tensors(std::ostream& out, const nn::ParamList& tensors);
/// Fills `tensors` in place; names and shapes must match the manifest.
void read_tensors(std::istream& in, const nn::ParamList& tensors, const std::string& source);

}  // namespace hetgen
