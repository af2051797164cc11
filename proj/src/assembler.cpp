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

#include "hetgen/assembler.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace hetgen {

void ScoreMatrix::increment(NodeId u, NodeId v, std::uint64_t by) {
  if (u >= rows_.size() || v >= rows_.size()) {
    throw integrity_error("score matrix index (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") out of range");
  }
  if (u == v || by == 0) return;
  auto& cell = rows_[u][v];
  if (cell == 0) ++support_;
  cell += by;
  rows_[v][u] += by;
  degree_[u] += by;
  degree_[v] += by;
  total_ += by;
}

std::uint64_t ScoreMatrix::count(NodeId u, NodeId v) const {
  if (u >= rows_.size()) return 0;
  auto it = rows_[u].find(v);
  return it == rows_[u].end() ? 0 : it->second;
}

ScoreMatrix build_score_matrix(std::span<const HeteroWalk> walks, std::size_t num_nodes) {
  ScoreMatrix s(num_nodes);
  for (const HeteroWalk& w : walks) {
    for (std::size_t i = 0; i + 1 < w.nodes.size(); ++i) s.increment(w.nodes[i], w.nodes[i + 1]);
    if (w.nodes.size() == 1 && w.nodes[0] >= num_nodes) {
      throw integrity_error("walk node out of range");
    }
  }
  return s;
}

MetaPathTable build_pattern_table(std::span<const HeteroWalk> walks) {
  MetaPathTable t;
  for (const HeteroWalk& w : walks) {
    MetaPathPattern p = extract_pattern(w);
    if (p.types.empty()) continue;
    ++t.start_totals[p.types.front()];
    ++t.counts[std::move(p)];
  }
  return t;
}

std::pair<NodeId, TypeIndex> sample_start(const ScoreMatrix& scores,
                                          std::span<const TypeIndex> node_types, Rng& rng) {
  if (scores.total() == 0) throw sampling_error("score matrix has no positive entry");
  std::vector<double> weights(scores.size());
  for (NodeId n = 0; n < scores.size(); ++n) weights[n] = static_cast<double>(scores.degree(n));
  const auto node = static_cast<NodeId>(CumulativeSampler(weights).sample(rng));
  return {node, node_types[node]};
}

MetaPathPattern sample_pattern(const MetaPathTable& table, TypeIndex start_type, Rng& rng) {
  auto total = table.start_totals.find(start_type);
  if (total == table.start_totals.end() || total->second == 0) {
    throw sampling_error("no pattern starts with node type " + std::to_string(start_type));
  }
  // Patterns sharing a start type are contiguous in the ordered map.
  auto lo = table.counts.lower_bound(MetaPathPattern{{start_type}, {}});
  std::vector<const MetaPathPattern*> eligible;
  std::vector<double> weights;
  for (auto it = lo; it != table.counts.end() && it->first.types.front() == start_type; ++it) {
    eligible.push_back(&it->first);
    weights.push_back(static_cast<double>(it->second));
  }
  return *eligible[CumulativeSampler(weights).sample(rng)];
}

Extension extend_by_pattern(const ScoreMatrix& scores, std::span<const TypeIndex> node_types,
                            const MetaPathPattern& pattern, NodeId start, Rng& rng) {
  if (pattern.types.empty() || node_types[start] != pattern.types.front()) {
    throw contract_error("start node type does not match the pattern");
  }
  Extension ext;
  ext.nodes.push_back(start);
  std::vector<NodeId> candidates;
  std::vector<double> weights;
  for (std::size_t step = 1; step < pattern.types.size(); ++step) {
    candidates.clear();
    weights.clear();
    for (const auto& [node, count] : scores.row(ext.nodes.back())) {
      if (node_types[node] == pattern.types[step]) {
        candidates.push_back(node);
        weights.push_back(static_cast<double>(count));
      }
    }
    if (candidates.empty()) return ext;
    ext.nodes.push_back(candidates[CumulativeSampler(weights).sample(rng)]);
  }
  ext.complete = true;
  return ext;
}

namespace {

// Output edge type per node-type pair: the schema rule when it covers the
// pair, else the majority edge type observed in the walks (lowest index on
// ties).
class EdgeTyper {
 public:
  EdgeTyper(const TypeSchema& schema, std::span<const HeteroWalk> walks) : schema_(schema) {
    for (const HeteroWalk& w : walks) {
      for (std::size_t i = 0; i < w.edge_types.size(); ++i) {
        auto& votes = votes_[TypePair::of(w.types[i], w.types[i + 1])];
        if (votes.size() <= w.edge_types[i]) votes.resize(w.edge_types[i] + 1, 0);
        ++votes[w.edge_types[i]];
      }
    }
  }

  TypeIndex operator()(TypeIndex a, TypeIndex b) const {
    if (auto rule = schema_.rule_edge_type(a, b)) return *rule;
    auto it = votes_.find(TypePair::of(a, b));
    if (it == votes_.end()) throw integrity_error("no edge type evidence for a node-type pair");
    return static_cast<TypeIndex>(std::max_element(it->second.begin(), it->second.end()) -
                                  it->second.begin());
  }

 private:
  const TypeSchema& schema_;
  std::map<TypePair, std::vector<std::uint64_t>> votes_;
};

HetGraph build_output(const HetGraph& skeleton, std::vector<Edge> edges) {
  TypeSchema schema = skeleton.schema();
  std::vector<TypeIndex> types(skeleton.node_types().begin(), skeleton.node_types().end());
  schema.set_edge_type_rule(infer_edge_type_rule(types, edges));
  return HetGraph(std::move(schema), std::move(types), std::move(edges),
                  {skeleton.external_ids().begin(), skeleton.external_ids().end()});
}

}  // namespace

AssemblyResult assemble(std::span<const HeteroWalk> walks, const HetGraph& skeleton,
                        const AssemblyOptions& options, Rng& rng) {
  if (options.target_edges < 1) throw parameter_error("target_edges must be at least 1");
  if (walks.empty()) throw parameter_error("assembly needs at least one walk");
  const std::size_t n = skeleton.num_nodes();
  for (const HeteroWalk& w : walks) {
    check_well_formed(w);
    for (std::size_t i = 0; i < w.nodes.size(); ++i) {
      if (w.nodes[i] >= n) throw integrity_error("walk node out of range");
      if (w.types[i] != skeleton.node_type(w.nodes[i])) {
        throw integrity_error("walk type disagrees with node " + std::to_string(w.nodes[i]));
      }
    }
  }
  const auto node_types = skeleton.node_types();
  const ScoreMatrix scores = build_score_matrix(walks, n);
  if (scores.total() == 0) throw sampling_error("walks contain no edges");
  const EdgeTyper edge_type(skeleton.schema(), walks);

  std::size_t stall_limit = options.stall_limit;
  if (stall_limit == 0) {
    stall_limit = options.target_edges > std::numeric_limits<std::size_t>::max() / 10
                      ? std::numeric_limits<std::size_t>::max()
                      : 10 * options.target_edges;
  }

  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<Edge> edges;
  AssemblyResult result;
  auto add_edge = [&](NodeId a, NodeId b) {
    const auto key = std::minmax(a, b);
    if (!seen.insert(key).second) return false;
    edges.push_back({key.first, key.second, edge_type(node_types[a], node_types[b])});
    return true;
  };
  auto done = [&] {
    return edges.size() >= options.target_edges ||
           (options.trace_limit > 0 && result.trace.size() >= options.trace_limit);
  };

  std::size_t fruitless = 0;
  if (options.probabilistic) {
    std::vector<std::pair<NodeId, NodeId>> cells;
    std::vector<double> weights;
    for (NodeId u = 0; u < n; ++u) {
      for (const auto& [v, count] : scores.row(u)) {
        if (u < v) {
          cells.emplace_back(u, v);
          weights.push_back(static_cast<double>(count));
        }
      }
    }
    const CumulativeSampler sampler(weights);
    while (!done() && fruitless < stall_limit) {
      auto [u, v] = cells[sampler.sample(rng)];
      if (rng.bernoulli(0.5)) std::swap(u, v);
      result.trace.push_back({{{node_types[u], node_types[v]}, {edge_type(node_types[u], node_types[v])}},
                              {u, v}});
      fruitless = add_edge(u, v) ? 0 : fruitless + 1;
    }
  } else {
    const MetaPathTable patterns = build_pattern_table(walks);
    std::vector<double> degree(n);
    for (NodeId u = 0; u < n; ++u) degree[u] = static_cast<double>(scores.degree(u));
    const CumulativeSampler starts(degree);
    while (!done() && fruitless < stall_limit) {
      const auto start = static_cast<NodeId>(starts.sample(rng));
      if (!patterns.start_totals.contains(node_types[start])) {
        ++fruitless;
        continue;
      }
      const MetaPathPattern pattern = sample_pattern(patterns, node_types[start], rng);
      Extension ext = extend_by_pattern(scores, node_types, pattern, start, rng);
      if (!ext.complete) {
        ++fruitless;
        continue;
      }
      bool progress = false;
      for (std::size_t i = 0; i + 1 < ext.nodes.size(); ++i) {
        progress = add_edge(ext.nodes[i], ext.nodes[i + 1]) || progress;
      }
      result.trace.push_back({pattern, std::move(ext.nodes)});
      fruitless = progress ? 0 : fruitless + 1;
    }
  }

  const bool complete = done();
  result.graph = build_output(skeleton, std::move(edges));
  if (!complete) {
    const std::string what = "assembly stalled at " + std::to_string(result.graph.num_edges()) +
                             " of " + std::to_string(options.target_edges) + " edges";
    throw PartialGraphError(what, std::move(result));
  }
  return result;
}

}  // namespace hetgen
