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

#include "hetgen/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hetgen/error.hpp"
#include "hetgen/text.hpp"

namespace hetgen {

TypeSchema::TypeSchema(std::vector<std::string> node_types, std::vector<std::string> edge_types,
                       std::optional<std::map<TypePair, TypeIndex>> edge_rule)
    : node_types_(std::move(node_types)), edge_types_(std::move(edge_types)) {
  std::set<std::string> seen(node_types_.begin(), node_types_.end());
  if (seen.size() != node_types_.size()) throw integrity_error("duplicate node type label");
  seen = std::set<std::string>(edge_types_.begin(), edge_types_.end());
  if (seen.size() != edge_types_.size()) throw integrity_error("duplicate edge type label");
  set_edge_type_rule(std::move(edge_rule));
}

void TypeSchema::set_edge_type_rule(std::optional<std::map<TypePair, TypeIndex>> rule) {
  if (rule) {
    for (const auto& [pair, type] : *rule) {
      if (pair.first > pair.second || pair.second >= node_types_.size() ||
          type >= edge_types_.size()) {
        throw integrity_error("edge type rule references unknown types");
      }
    }
  }
  edge_rule_ = std::move(rule);
}

std::optional<TypeIndex> TypeSchema::rule_edge_type(TypeIndex a, TypeIndex b) const {
  if (!edge_rule_) return std::nullopt;
  auto it = edge_rule_->find(TypePair::of(a, b));
  if (it == edge_rule_->end()) return std::nullopt;
  return it->second;
}

namespace {

std::optional<TypeIndex> find_label(const std::vector<std::string>& labels,
                                    const std::string& label) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<TypeIndex>(it - labels.begin());
}

}  // namespace

std::optional<TypeIndex> TypeSchema::find_node_type(const std::string& label) const {
  return find_label(node_types_, label);
}

std::optional<TypeIndex> TypeSchema::find_edge_type(const std::string& label) const {
  return find_label(edge_types_, label);
}

TypeIndex TypeSchema::intern_node_type(const std::string& label) {
  if (auto idx = find_node_type(label)) return *idx;
  node_types_.push_back(label);
  return static_cast<TypeIndex>(node_types_.size() - 1);
}

TypeIndex TypeSchema::intern_edge_type(const std::string& label) {
  if (auto idx = find_edge_type(label)) return *idx;
  edge_types_.push_back(label);
  return static_cast<TypeIndex>(edge_types_.size() - 1);
}

HetGraph::HetGraph(TypeSchema schema, std::vector<TypeIndex> node_types, std::vector<Edge> edges,
                   std::vector<std::string> external_ids)
    : schema_(std::move(schema)), node_types_(std::move(node_types)) {
  const std::size_t n = node_types_.size();
  for (TypeIndex t : node_types_) {
    if (t >= schema_.num_node_types()) throw integrity_error("node type index out of range");
  }
  if (external_ids.empty()) {
    external_ids_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) external_ids_.push_back(std::to_string(i));
  } else if (external_ids.size() != n) {
    throw integrity_error("external id count does not match node count");
  } else {
    external_ids_ = std::move(external_ids);
  }

  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw integrity_error("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") references an unknown node");
    }
    if (e.u == e.v) throw integrity_error("self-loop on node " + std::to_string(e.u));
    if (e.type >= schema_.num_edge_types()) throw integrity_error("edge type index out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (auto rule = schema_.rule_edge_type(node_types_[e.u], node_types_[e.v])) {
      if (*rule != e.type) throw integrity_error("edge type disagrees with the edge type rule");
    } else if (schema_.edge_type_rule()) {
      throw integrity_error("edge type rule does not cover an edge's node-type pair");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw integrity_error("conflicting edge types for (" + std::to_string(edges[i].u) + ", " +
                            std::to_string(edges[i].v) + ")");
    }
  }
  edges_ = std::move(edges);

  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.type};
    adjacency_[cursor[e.v]++] = {e.u, e.type};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

std::optional<TypeIndex> HetGraph::edge_type(NodeId a, NodeId b) const {
  if (a >= num_nodes() || b >= num_nodes()) return std::nullopt;
  auto row = neighbors(a);
  auto it = std::lower_bound(row.begin(), row.end(), b,
                             [](const Neighbor& nb, NodeId id) { return nb.node < id; });
  if (it == row.end() || it->node != b) return std::nullopt;
  return it->edge_type;
}

HetGraph HetGraph::with_edges(std::vector<Edge> edges) const {
  return HetGraph(schema_, node_types_, std::move(edges), external_ids_);
}

std::optional<std::map<TypePair, TypeIndex>> infer_edge_type_rule(
    std::span<const TypeIndex> node_types, std::span<const Edge> edges) {
  std::map<TypePair, TypeIndex> rule;
  for (const Edge& e : edges) {
    auto key = TypePair::of(node_types[e.u], node_types[e.v]);
    auto [it, inserted] = rule.emplace(key, e.type);
    if (!inserted && it->second != e.type) return std::nullopt;
  }
  return rule;
}

HetGraph load_graph(const std::filesystem::path& node_file,
                    const std::filesystem::path& edge_file, const TypeSchema& base) {
  std::ifstream nodes_in(node_file);
  if (!nodes_in) throw io_error("cannot open node file " + node_file.string());
  std::ifstream edges_in(edge_file);
  if (!edges_in) throw io_error("cannot open edge file " + edge_file.string());

  TypeSchema schema(base.node_type_labels(), base.edge_type_labels());
  std::vector<TypeIndex> node_types;
  std::vector<std::string> ids;
  std::unordered_map<std::string, NodeId> dense;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(nodes_in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 2) {
      throw parse_error(node_file.string() + ": line " + std::to_string(line_no) +
                        ": expected 2 columns, got " + std::to_string(cols.size()));
    }
    const TypeIndex type = schema.intern_node_type(cols[1]);
    auto [it, inserted] = dense.emplace(cols[0], static_cast<NodeId>(ids.size()));
    if (inserted) {
      ids.push_back(cols[0]);
      node_types.push_back(type);
    } else if (node_types[it->second] != type) {
      throw integrity_error(node_file.string() + ": line " + std::to_string(line_no) +
                            ": conflicting type for node " + cols[0]);
    }
  }

  std::vector<Edge> edges;
  line_no = 0;
  while (std::getline(edges_in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3) {
      throw parse_error(edge_file.string() + ": line " + std::to_string(line_no) +
                        ": expected 3 columns, got " + std::to_string(cols.size()));
    }
    auto u = dense.find(cols[0]);
    auto v = dense.find(cols[1]);
    if (u == dense.end() || v == dense.end()) {
      throw integrity_error(edge_file.string() + ": line " + std::to_string(line_no) +
                            ": edge references unknown node " +
                            (u == dense.end() ? cols[0] : cols[1]));
    }
    edges.push_back({u->second, v->second, schema.intern_edge_type(cols[2])});
  }

  schema.set_edge_type_rule(infer_edge_type_rule(node_types, edges));
  return HetGraph(std::move(schema), std::move(node_types), std::move(edges), std::move(ids));
}

void save_graph(const HetGraph& graph, const std::filesystem::path& node_file,
                const std::filesystem::path& edge_file) {
  std::ofstream nodes_out(node_file, std::ios::binary | std::ios::trunc);
  if (!nodes_out) throw io_error("cannot write node file " + node_file.string());
  const auto& node_labels = graph.schema().node_type_labels();
  const auto& edge_labels = graph.schema().edge_type_labels();
  for (NodeId n = 0; n < graph.num_nodes(); ++n) {
    nodes_out << graph.external_id(n) << '\t' << node_labels[graph.node_type(n)] << '\n';
  }
  std::ofstream edges_out(edge_file, std::ios::binary | std::ios::trunc);
  if (!edges_out) throw io_error("cannot write edge file " + edge_file.string());
  for (const Edge& e : graph.edges()) {
    edges_out << graph.external_id(e.u) << '\t' << graph.external_id(e.v) << '\t'
              << edge_labels[e.type] << '\n';
  }
  nodes_out.flush();
  edges_out.flush();
  if (!nodes_out || !edges_out) throw io_error("write failed for " + node_file.string());
}

HetGraph synth_hetero_graph(const SynthParams& params, Rng& rng) {
  if (params.num_types < 2) throw parameter_error("num_types must be at least 2");
  if (params.per_type_size < 2) throw parameter_error("per_type_size must be at least 2");
  if (!(params.intra_edge_prob >= 0.0 && params.intra_edge_prob <= 1.0)) {
    throw parameter_error("intra_edge_prob must lie in [0, 1]");
  }
  if (!(params.share_fraction >= 0.0 && params.share_fraction <= 1.0)) {
    throw parameter_error("share_fraction must lie in [0, 1]");
  }
  const std::size_t k = params.num_types;
  const std::size_t s = params.per_type_size;

  std::vector<std::string> node_labels;
  for (std::size_t t = 0; t < k; ++t) node_labels.push_back("t" + std::to_string(t));
  std::vector<std::string> edge_labels;
  std::map<TypePair, TypeIndex> rule;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      rule[TypePair::of(a, b)] = static_cast<TypeIndex>(edge_labels.size());
      edge_labels.push_back(node_labels[a] + "-" + node_labels[b]);
    }
  }

  std::vector<TypeIndex> node_types(k * s);
  for (std::size_t i = 0; i < k * s; ++i) node_types[i] = static_cast<TypeIndex>(i / s);
  auto edge_of = [&](NodeId a, NodeId b) {
    return Edge{a, b, rule.at(TypePair::of(node_types[a], node_types[b]))};
  };

  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<Edge> edges;
  auto add = [&](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    if (seen.emplace(a, b).second) edges.push_back(edge_of(a, b));
  };

  for (std::size_t t = 0; t < k; ++t) {
    const auto base = static_cast<NodeId>(t * s);
    for (NodeId i = 0; i < s; ++i) {
      for (NodeId j = i + 1; j < s; ++j) {
        if (rng.bernoulli(params.intra_edge_prob)) add(base + i, base + j);
      }
    }
  }

  std::size_t shared = 0;
  if (params.share_fraction > 0.0) {
    shared = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(params.share_fraction * static_cast<double>(s))));
  }
  std::vector<std::vector<NodeId>> junctions(k);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<NodeId> members(s);
    std::iota(members.begin(), members.end(), static_cast<NodeId>(t * s));
    for (std::size_t i = 0; i < shared; ++i) {
      std::swap(members[i], members[i + rng.below(s - i)]);
    }
    junctions[t].assign(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(shared));
    std::sort(junctions[t].begin(), junctions[t].end());
  }
  std::size_t cross = 0;
  for (std::size_t t = 0; t < k; ++t) {
    for (NodeId u : junctions[t]) {
      for (std::size_t other = 0; other < k; ++other) {
        if (other == t) continue;
        for (NodeId j = 0; j < s; ++j) {
          if (rng.bernoulli(params.intra_edge_prob)) {
            add(u, static_cast<NodeId>(other * s + j));
            ++cross;
          }
        }
      }
    }
  }
  if (shared > 0 && cross == 0) {
    add(junctions[0][0], static_cast<NodeId>(s + rng.below(s)));
  }

  TypeSchema schema(std::move(node_labels), std::move(edge_labels), std::move(rule));
  return HetGraph(std::move(schema), std::move(node_types), std::move(edges));
}

SynthParams synth_preset(std::size_t total_nodes) {
  SynthParams p;
  p.num_types = 3;
  p.per_type_size = (total_nodes + 2) / 3;
  return p;
}

EdgeSplit split_edges(const HetGraph& graph, double train_fraction, Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw parameter_error("train_fraction must lie in (0, 1)");
  }
  std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  for (std::size_t i = edges.size(); i > 1; --i) {
    std::swap(edges[i - 1], edges[rng.below(i)]);
  }
  const auto n_train = static_cast<std::size_t>(
      std::lround(train_fraction * static_cast<double>(edges.size())));
  std::vector<Edge> train(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<Edge> test(edges.begin() + static_cast<std::ptrdiff_t>(n_train), edges.end());
  return {graph.with_edges(std::move(train)), graph.with_edges(std::move(test))};
}

std::size_t count_components(const HetGraph& graph) {
  std::vector<bool> seen(graph.num_nodes(), false);
  std::vector<NodeId> stack;
  std::size_t components = 0;
  for (NodeId start = 0; start < graph.num_nodes(); ++start) {
    if (seen[start]) continue;
    ++components;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId cur = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : graph.neighbors(cur)) {
        if (!seen[nb.node]) {
          seen[nb.node] = true;
          stack.push_back(nb.node);
        }
      }
    }
  }
  return components;
}

}  // namespace hetgen
