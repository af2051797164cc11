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
#include <span>
#include <utility>
#include <vector>

#include "hetgen/graph.hpp"
#include "hetgen/rng.hpp"
#include "hetgen/walk.hpp"

namespace hetgen {

/// Frozen per-node latent vectors, grouped by node type for candidate lookup.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  /// `vectors` is row-major, one row of `dim` values per node.
  EmbeddingTable(std::size_t dim, std::vector<double> vectors, std::vector<TypeIndex> node_types,
                 std::size_t num_types);

  std::size_t dim() const { return dim_; }
  std::size_t num_nodes() const { return node_types_.size(); }
  std::size_t num_types() const { return by_type_.size(); }
  std::span<const double> vector(NodeId n) const { return {data_.data() + n * dim_, dim_}; }
  std::span<const double> data() const { return data_; }
  std::span<const TypeIndex> node_types() const { return node_types_; }
  /// Members of a type in ascending node id order.
  std::span<const NodeId> members(TypeIndex type) const;

  bool operator==(const EmbeddingTable&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
  std::vector<TypeIndex> node_types_;
  std::vector<std::vector<NodeId>> by_type_;
};

struct EmbedParams {
  std::size_t dim = 32;
  std::size_t window = 2;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double lr = 0.025;
};

/// Skip-gram with negative sampling over the walk corpus. Context is every
/// node within `window` positions; negatives follow the unigram^0.75 law.
EmbeddingTable train_embeddings(const std::vector<HeteroWalk>& corpus, const HetGraph& graph,
                                const EmbedParams& params, Rng& rng);

/// Scales every vector to Euclidean norm `radius`. Zero vectors stay zero.
/// On a common sphere, softmax over negative squared distances reduces to a
/// softmax over 2 q.v, so a query near the origin selects near-uniformly.
EmbeddingTable normalize_rows(const EmbeddingTable& table, double radius);

/// Squared Euclidean distance from `query` to every member of `type`, in
/// member order.
std::vector<std::pair<NodeId, double>> type_distances(const EmbeddingTable& table,
                                                      std::span<const double> query,
                                                      TypeIndex type);

/// `dim=<d> count=<n>` manifest line followed by n*d little-endian doubles.
void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& file);
/// Node types come from the graph the table was trained on.
EmbeddingTable load_embeddings(const std::filesystem::path& file, const HetGraph& graph);

}  // namespace hetgen
