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

#include "hetgen/walk.hpp"

#include <fstream>
#include <unordered_map>

#include "hetgen/error.hpp"
#include "hetgen/text.hpp"

namespace hetgen {

void check_well_formed(const HeteroWalk& walk) {
  if (walk.types.size() != walk.nodes.size() ||
      walk.edge_types.size() + 1 != walk.nodes.size()) {
    throw contract_error("malformed walk: " + std::to_string(walk.nodes.size()) + " nodes, " +
                         std::to_string(walk.types.size()) + " types, " +
                         std::to_string(walk.edge_types.size()) + " edge types");
  }
}

void check_bound(const HeteroWalk& walk, const HetGraph& graph) {
  check_well_formed(walk);
  for (std::size_t i = 0; i < walk.nodes.size(); ++i) {
    if (walk.nodes[i] >= graph.num_nodes()) throw integrity_error("walk node out of range");
    if (graph.node_type(walk.nodes[i]) != walk.types[i]) {
      throw integrity_error("walk type disagrees with node " + std::to_string(walk.nodes[i]));
    }
    if (i > 0) {
      auto et = graph.edge_type(walk.nodes[i - 1], walk.nodes[i]);
      if (!et) throw integrity_error("walk step is not a graph edge");
      if (*et != walk.edge_types[i - 1]) throw integrity_error("walk edge type mismatch");
    }
  }
}

namespace {

// Non-isolated nodes of a graph; cached per call site by the corpus sampler.
std::vector<NodeId> start_candidates(const HetGraph& graph) {
  std::vector<NodeId> out;
  for (NodeId n = 0; n < graph.num_nodes(); ++n) {
    if (graph.degree(n) > 0) out.push_back(n);
  }
  return out;
}

HeteroWalk walk_from(const HetGraph& graph, NodeId start, std::size_t length, Rng& rng) {
  HeteroWalk walk;
  walk.nodes.push_back(start);
  walk.types.push_back(graph.node_type(start));
  NodeId cur = start;
  for (std::size_t step = 0; step < length; ++step) {
    auto nbrs = graph.neighbors(cur);
    if (nbrs.empty()) break;
    const Neighbor& next = nbrs[rng.below(nbrs.size())];
    walk.nodes.push_back(next.node);
    walk.types.push_back(graph.node_type(next.node));
    walk.edge_types.push_back(next.edge_type);
    cur = next.node;
  }
  return walk;
}

}  // namespace

HeteroWalk sample_walk(const HetGraph& graph, std::size_t length, Rng& rng) {
  if (graph.num_edges() == 0) throw sampling_error("cannot sample a walk from an edgeless graph");
  if (length < 1) throw parameter_error("walk length must be at least 1");
  auto starts = start_candidates(graph);
  return walk_from(graph, starts[rng.below(starts.size())], length, rng);
}

MetaPathPattern extract_pattern(const HeteroWalk& walk) {
  return {walk.types, walk.edge_types};
}

HeteroWalk reversed(const HeteroWalk& walk) {
  return {{walk.nodes.rbegin(), walk.nodes.rend()},
          {walk.types.rbegin(), walk.types.rend()},
          {walk.edge_types.rbegin(), walk.edge_types.rend()}};
}

std::vector<HeteroWalk> sample_corpus(const HetGraph& graph, std::size_t count,
                                      const std::set<std::size_t>& lengths, Rng& rng) {
  if (count == 0) throw parameter_error("corpus count must be at least 1");
  if (lengths.empty()) throw parameter_error("walk length set must not be empty");
  if (graph.num_edges() == 0) throw sampling_error("cannot sample a walk from an edgeless graph");
  if (*lengths.begin() < 1) throw parameter_error("walk lengths must be at least 1");
  const std::vector<std::size_t> choices(lengths.begin(), lengths.end());
  const auto starts = start_candidates(graph);
  std::vector<HeteroWalk> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t len = choices[rng.below(choices.size())];
    corpus.push_back(walk_from(graph, starts[rng.below(starts.size())], len, rng));
  }
  return corpus;
}

std::string pattern_label(const MetaPathPattern& pattern, const TypeSchema& schema) {
  auto node_label = [&](TypeIndex t) -> std::string {
    return t < schema.num_node_types() ? schema.node_type_labels()[t] : "<eos>";
  };
  std::string out = pattern.types.empty() ? "" : node_label(pattern.types[0]);
  for (std::size_t i = 0; i < pattern.edge_types.size(); ++i) {
    const TypeIndex et = pattern.edge_types[i];
    out += " -[";
    out += et < schema.num_edge_types() ? schema.edge_type_labels()[et] : "?";
    out += "]-> ";
    out += node_label(pattern.types[i + 1]);
  }
  return out;
}

void save_corpus(const std::vector<HeteroWalk>& walks, const HetGraph& graph,
                 const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write corpus " + file.string());
  const auto& nl = graph.schema().node_type_labels();
  const auto& el = graph.schema().edge_type_labels();
  for (const HeteroWalk& w : walks) {
    check_well_formed(w);
    for (std::size_t i = 0; i < w.nodes.size(); ++i) {
      if (i > 0) out << ',' << el[w.edge_types[i - 1]] << ',';
      out << graph.external_id(w.nodes[i]) << ':' << nl[w.types[i]];
    }
    out << '\n';
  }
  if (!out) throw io_error("write failed for " + file.string());
}

std::vector<HeteroWalk> load_corpus(const std::filesystem::path& file, const HetGraph& graph) {
  std::ifstream in(file);
  if (!in) throw io_error("cannot open corpus " + file.string());
  std::unordered_map<std::string, NodeId> dense;
  for (NodeId n = 0; n < graph.num_nodes(); ++n) dense.emplace(graph.external_id(n), n);

  std::vector<HeteroWalk> walks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    if (line.back() == '\r') line.pop_back();
    auto fields = split_on(line, ',');
    auto fail = [&](const std::string& why) {
      return parse_error(file.string() + ": line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() % 2 == 0) throw fail("expected alternating node and edge fields");
    HeteroWalk w;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i % 2 == 1) {
        auto et = graph.schema().find_edge_type(fields[i]);
        if (!et) throw fail("unknown edge type " + fields[i]);
        w.edge_types.push_back(*et);
        continue;
      }
      auto colon = fields[i].rfind(':');
      if (colon == std::string::npos) throw fail("node field lacks ':'");
      auto id = dense.find(fields[i].substr(0, colon));
      if (id == dense.end()) throw fail("unknown node " + fields[i].substr(0, colon));
      auto t = graph.schema().find_node_type(fields[i].substr(colon + 1));
      if (!t) throw fail("unknown node type " + fields[i].substr(colon + 1));
      w.nodes.push_back(id->second);
      w.types.push_back(*t);
    }
    walks.push_back(std::move(w));
  }
  return walks;
}

}  // namespace hetgen
