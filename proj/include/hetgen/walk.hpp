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

#include <compare>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "hetgen/graph.hpp"
#include "hetgen/rng.hpp"

namespace hetgen {

/// A node sequence together with its node types and the edge types joining
/// consecutive nodes.
struct HeteroWalk {
  std::vector<NodeId> nodes;
  std::vector<TypeIndex> types;
  std::vector<TypeIndex> edge_types;

  std::size_t num_edges() const { return edge_types.size(); }
  bool operator==(const HeteroWalk&) const = default;
};

/// The type skeleton of a walk. length() counts edges.
struct MetaPathPattern {
  std::vector<TypeIndex> types;
  std::vector<TypeIndex> edge_types;

  std::size_t length() const { return edge_types.size(); }
  auto operator<=>(const MetaPathPattern&) const = default;
};

/// Throws a contract error unless the walk's internal lengths agree.
void check_well_formed(const HeteroWalk& walk);

/// Throws an integrity error unless every node, type and edge matches `graph`.
void check_bound(const HeteroWalk& walk, const HetGraph& graph);

/// Uniform start over non-isolated nodes, uniform steps over neighbors.
HeteroWalk sample_walk(const HetGraph& graph, std::size_t length, Rng& rng);

MetaPathPattern extract_pattern(const HeteroWalk& walk);

HeteroWalk reversed(const HeteroWalk& walk);

/// Each walk's length is drawn uniformly from `lengths` before sampling.
std::vector<HeteroWalk> sample_corpus(const HetGraph& graph, std::size_t count,
                                      const std::set<std::size_t>& lengths, Rng& rng);

/// Renders `t0 -[t0-t1]-> t1 ...` with schema labels.
std::string pattern_label(const MetaPathPattern& pattern, const TypeSchema& schema);

/// One walk per line: `v1:T1,E1,v2:T2,...` using external ids and labels.
void save_corpus(const std::vector<HeteroWalk>& walks, const HetGraph& graph,
                 const std::filesystem::path& file);
std::vector<HeteroWalk> load_corpus(const std::filesystem::path& file, const HetGraph& graph);

}  // namespace hetgen
