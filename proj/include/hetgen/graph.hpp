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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hetgen/rng.hpp"

namespace hetgen {

using NodeId = std::uint32_t;
using TypeIndex = std::uint32_t;

/// Unordered node-type pair, stored with first <= second.
struct TypePair {
  TypeIndex first = 0;
  TypeIndex second = 0;

  static TypePair of(TypeIndex a, TypeIndex b) {
    return a <= b ? TypePair{a, b} : TypePair{b, a};
  }
  auto operator<=>(const TypePair&) const = default;
};

/// Node and edge type vocabularies. The index equal to the number of node
/// types is reserved as the end-of-sequence marker and never labels a node.
class TypeSchema {
 public:
  TypeSchema() = default;
  TypeSchema(std::vector<std::string> node_types, std::vector<std::string> edge_types,
             std::optional<std::map<TypePair, TypeIndex>> edge_rule = std::nullopt);

  const std::vector<std::string>& node_type_labels() const { return node_types_; }
  const std::vector<std::string>& edge_type_labels() const { return edge_types_; }
  std::size_t num_node_types() const { return node_types_.size(); }
  std::size_t num_edge_types() const { return edge_types_.size(); }
  TypeIndex eos_index() const { return static_cast<TypeIndex>(node_types_.size()); }

  const std::optional<std::map<TypePair, TypeIndex>>& edge_type_rule() const {
    return edge_rule_;
  }
  /// Edge type the rule assigns to a node-type pair, if the rule covers it.
  std::optional<TypeIndex> rule_edge_type(TypeIndex a, TypeIndex b) const;

  std::optional<TypeIndex> find_node_type(const std::string& label) const;
  std::optional<TypeIndex> find_edge_type(const std::string& label) const;

  /// Appends a label if absent and returns its index.
  TypeIndex intern_node_type(const std::string& label);
  TypeIndex intern_edge_type(const std::string& label);
  void set_edge_type_rule(std::optional<std::map<TypePair, TypeIndex>> rule);

  bool operator==(const TypeSchema&) const = default;

 private:
  std::vector<std::string> node_types_;
  std::vector<std::string> edge_types_;
  std::optional<std::map<TypePair, TypeIndex>> edge_rule_;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  TypeIndex type = 0;

  auto operator<=>(const Edge&) const = default;
};

struct Neighbor {
  NodeId node;
  TypeIndex edge_type;
};

/// Undirected simple typed graph. Immutable once built.
class HetGraph {
 public:
  HetGraph() = default;

  /// Validates and canonicalizes. Edges may be given in either orientation;
  /// exact duplicates collapse, conflicting duplicates are an integrity error.
  /// An empty `external_ids` means ids are the decimal dense ids.
  HetGraph(TypeSchema schema, std::vector<TypeIndex> node_types, std::vector<Edge> edges,
           std::vector<std::string> external_ids = {});

  const TypeSchema& schema() const { return schema_; }
  std::size_t num_nodes() const { return node_types_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  TypeIndex node_type(NodeId n) const { return node_types_[n]; }
  std::span<const TypeIndex> node_types() const { return node_types_; }
  /// Canonical edges (u < v), sorted.
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(NodeId n) const {
    return {adjacency_.data() + offsets_[n], adjacency_.data() + offsets_[n + 1]};
  }
  std::size_t degree(NodeId n) const { return offsets_[n + 1] - offsets_[n]; }
  std::optional<TypeIndex> edge_type(NodeId a, NodeId b) const;
  bool has_edge(NodeId a, NodeId b) const { return edge_type(a, b).has_value(); }

  const std::string& external_id(NodeId n) const { return external_ids_[n]; }
  std::span<const std::string> external_ids() const { return external_ids_; }

  /// Same nodes and schema, different edge set.
  HetGraph with_edges(std::vector<Edge> edges) const;

 private:
  TypeSchema schema_;
  std::vector<TypeIndex> node_types_;
  std::vector<Edge> edges_;
  std::vector<std::string> external_ids_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

/// Reads the node and edge TSV files. Labels already present in `base`
/// keep their indices; new labels are appended in order of first appearance.
/// The edge-type rule is inferred when every observed node-type pair maps
/// to exactly one edge type.
HetGraph load_graph(const std::filesystem::path& node_file,
                    const std::filesystem::path& edge_file, const TypeSchema& base = {});

void save_graph(const HetGraph& graph, const std::filesystem::path& node_file,
                const std::filesystem::path& edge_file);

/// Infers the edge-type rule from a set of edges, or nullopt when some
/// node-type pair carries more than one edge type.
std::optional<std::map<TypePair, TypeIndex>> infer_edge_type_rule(
    std::span<const TypeIndex> node_types, std::span<const Edge> edges);

struct SynthParams {
  std::size_t num_types = 3;
  std::size_t per_type_size = 34;
  double intra_edge_prob = 0.1;
  double share_fraction = 0.2;
};

/// Overlapping homogeneous Erdos-Renyi blocks, one per node type. A
/// share_fraction of each block are junction nodes that also join every
/// other block's random graph with the same edge probability.
HetGraph synth_hetero_graph(const SynthParams& params, Rng& rng);

/// Preset for the 100/200/500-node, 3-type synthetic graphs.
SynthParams synth_preset(std::size_t total_nodes);

struct EdgeSplit {
  HetGraph train;
  HetGraph test;
};

EdgeSplit split_edges(const HetGraph& graph, double train_fraction, Rng& rng);

std::size_t count_components(const HetGraph& graph);

}  // namespace hetgen
