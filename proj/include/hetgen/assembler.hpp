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
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hetgen/error.hpp"
#include "hetgen/graph.hpp"
#include "hetgen/rng.hpp"
#include "hetgen/walk.hpp"

namespace hetgen {

/// Symmetric counts of consecutive node pairs in a walk multiset. Each
/// unordered pair is one logical cell; rows are kept for both endpoints.
/// Self pairs carry no edge and are not counted.
class ScoreMatrix {
 public:
  explicit ScoreMatrix(std::size_t num_nodes = 0) : rows_(num_nodes), degree_(num_nodes, 0) {}

  std::size_t size() const { return rows_.size(); }
  void increment(NodeId u, NodeId v, std::uint64_t by = 1);
  std::uint64_t count(NodeId u, NodeId v) const;
  /// deg(u) = sum over v of S[u, v].
  std::uint64_t degree(NodeId u) const { return degree_[u]; }
  const std::map<NodeId, std::uint64_t>& row(NodeId u) const { return rows_[u]; }
  /// Sum over unordered pairs.
  std::uint64_t total() const { return total_; }
  std::size_t support() const { return support_; }

 private:
  std::vector<std::map<NodeId, std::uint64_t>> rows_;
  std::vector<std::uint64_t> degree_;
  std::uint64_t total_ = 0;
  std::size_t support_ = 0;
};

ScoreMatrix build_score_matrix(std::span<const HeteroWalk> walks, std::size_t num_nodes);

/// Pattern counts c(p) and, per start type, T(o) = sum of c(p) over
/// patterns starting with o.
struct MetaPathTable {
  std::map<MetaPathPattern, std::uint64_t> counts;
  std::map<TypeIndex, std::uint64_t> start_totals;
};

MetaPathTable build_pattern_table(std::span<const HeteroWalk> walks);

/// Node drawn with probability deg(node) / sum of degrees.
std::pair<NodeId, TypeIndex> sample_start(const ScoreMatrix& scores,
                                          std::span<const TypeIndex> node_types, Rng& rng);

/// Pattern drawn with probability c(p) / T(start_type) among patterns
/// starting with start_type.
MetaPathPattern sample_pattern(const MetaPathTable& table, TypeIndex start_type, Rng& rng);

struct Extension {
  std::vector<NodeId> nodes;
  bool complete = false;
};

/// Follows the pattern from `start`, choosing each next node with
/// probability proportional to S[current, next] among neighbors of the
/// required type. Stops early, flagged incomplete, at a dead end.
Extension extend_by_pattern(const ScoreMatrix& scores, std::span<const TypeIndex> node_types,
                            const MetaPathPattern& pattern, NodeId start, Rng& rng);

struct AssemblyTraceEntry {
  MetaPathPattern pattern;
  std::vector<NodeId> nodes;
};

struct AssemblyOptions {
  std::size_t target_edges = 1;
  /// Stop once this many patterns completed; 0 disables.
  std::size_t trace_limit = 0;
  /// Consecutive fruitless restarts tolerated; 0 means 10 x target_edges.
  std::size_t stall_limit = 0;
  /// Draw edges straight from S in proportion to their counts and ignore
  /// meta-paths. Trace entries are then single oriented edges.
  bool probabilistic = false;
};

struct AssemblyResult {
  HetGraph graph;
  std::vector<AssemblyTraceEntry> trace;
};

/// Thrown when the stall bound trips; carries everything built so far.
class PartialGraphError : public Error {
 public:
  PartialGraphError(const std::string& what, AssemblyResult partial)
      : Error(ErrorKind::kPartialGraph, what), partial_(std::move(partial)) {}
  const AssemblyResult& partial() const { return partial_; }

 private:
  AssemblyResult partial_;
};

/// Stratified edge sampling: degree-weighted start, frequency-weighted
/// pattern for the start type, S-weighted typed extension; repeated until
/// the distinct edge count reaches the target. `skeleton` supplies nodes,
/// types, ids and schema; its edges are ignored.
AssemblyResult assemble(std::span<const HeteroWalk> walks, const HetGraph& skeleton,
                        const AssemblyOptions& options, Rng& rng);

}  // namespace hetgen
