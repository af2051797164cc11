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

// Shared fixture builders for the test binaries.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "files.hpp"
#include "hetgen/error.hpp"
#include "hetgen/graph.hpp"
#include "hetgen/rng.hpp"

namespace hetgen::testing {

/// Node types given per node; edges as (u, v, edge type). Labels are
/// generated as "T<i>" and "E<i>".
inline HetGraph make_graph(const std::vector<TypeIndex>& node_types,
                           const std::vector<Edge>& edges, std::size_t num_edge_types = 0) {
  TypeIndex max_type = 0;
  for (TypeIndex t : node_types) max_type = std::max(max_type, t);
  TypeIndex max_edge = 0;
  for (const Edge& e : edges) max_edge = std::max(max_edge, e.type);
  std::vector<std::string> nl;
  for (TypeIndex t = 0; t <= max_type; ++t) nl.push_back("T" + std::to_string(t));
  std::vector<std::string> el;
  const std::size_t ne = std::max<std::size_t>(num_edge_types, edges.empty() ? 1 : max_edge + 1);
  for (std::size_t t = 0; t < ne; ++t) el.push_back("E" + std::to_string(t));
  return HetGraph(TypeSchema(nl, el), node_types, edges);
}

/// Single-type graph from an untyped edge list.
inline HetGraph plain_graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 0});
  return make_graph(std::vector<TypeIndex>(n, 0), edges, 1);
}

/// G(n, p) with random types in [0, num_types).
inline HetGraph random_graph(std::size_t n, double p, std::size_t num_types, Rng& rng) {
  std::vector<TypeIndex> types(n);
  for (auto& t : types) t = static_cast<TypeIndex>(rng.below(num_types));
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.push_back({u, v, 0});
    }
  }
  return make_graph(types, edges, 1);
}

/// Kind of the hetgen::Error raised by `fn`, or nullopt when none is.
inline std::optional<ErrorKind> error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace hetgen::testing
