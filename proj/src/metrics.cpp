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

#include "hetgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hetgen/error.hpp"

namespace hetgen {

std::size_t lcc(const HetGraph& graph) {
  const std::size_t n = graph.num_nodes();
  std::vector<bool> visited(n, false);
  std::vector<NodeId> stack;
  std::size_t best = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (visited[s]) continue;
    visited[s] = true;
    stack.assign(1, s);
    std::size_t size = 0;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (const Neighbor& nb : graph.neighbors(u)) {
        if (!visited[nb.node]) {
          visited[nb.node] = true;
          stack.push_back(nb.node);
        }
      }
    }
    best = std::max(best, size);
  }
  return best;
}

namespace {

// Number of edges among the neighbors of u, optionally only those with a
// larger id than u.
std::uint64_t closed_pairs(const HetGraph& graph, NodeId u, bool higher_only) {
  const auto nbrs = graph.neighbors(u);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    if (higher_only && nbrs[i].node <= u) continue;
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (higher_only && nbrs[j].node <= u) continue;
      if (graph.has_edge(nbrs[i].node, nbrs[j].node)) ++count;
    }
  }
  return count;
}

}  // namespace

std::uint64_t triangle_count(const HetGraph& graph) {
  std::uint64_t total = 0;
  for (NodeId u = 0; u < graph.num_nodes(); ++u) total += closed_pairs(graph, u, true);
  return total;
}

double clustering_coef(const HetGraph& graph) {
  const std::size_t n = graph.num_nodes();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    const double d = static_cast<double>(graph.degree(u));
    if (d < 2) continue;
    sum += static_cast<double>(closed_pairs(graph, u, false)) /
           (d * (d - 1) / 2.0);
  }
  return sum / static_cast<double>(n);
}

double powerlaw_exponent(std::span<const std::size_t> degrees) {
  std::size_t count = 0;
  double log_sum = 0.0;
  for (std::size_t d : degrees) {
    if (d < 1) continue;
    ++count;
    log_sum += std::log(static_cast<double>(d) / 0.5);
  }
  if (count == 0) return std::numeric_limits<double>::quiet_NaN();
  const bool all_min = std::all_of(degrees.begin(), degrees.end(), [](std::size_t d) { return d <= 1; });
  if (all_min) return std::numeric_limits<double>::infinity();
  return 1.0 + static_cast<double>(count) / log_sum;
}

double powerlaw_coef(const HetGraph& graph) {
  std::vector<std::size_t> degrees(graph.num_nodes());
  for (NodeId u = 0; u < graph.num_nodes(); ++u) degrees[u] = graph.degree(u);
  return powerlaw_exponent(degrees);
}

double assortativity(const HetGraph& graph) {
  if (graph.num_edges() == 0) return std::numeric_limits<double>::quiet_NaN();
  // Both orientations make the x and y marginals identical.
  double sum = 0.0;
  double sum_sq = 0.0;
  double sum_xy = 0.0;
  for (const Edge& e : graph.edges()) {
    const double a = static_cast<double>(graph.degree(e.u));
    const double b = static_cast<double>(graph.degree(e.v));
    sum += a + b;
    sum_sq += a * a + b * b;
    sum_xy += 2.0 * a * b;
  }
  const double m = 2.0 * static_cast<double>(graph.num_edges());
  const double mean = sum / m;
  const double var = sum_sq / m - mean * mean;
  if (var <= 1e-12 * std::max(1.0, mean * mean)) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp((sum_xy / m - mean * mean) / var, -1.0, 1.0);
}

std::vector<double> degree_histogram(const HetGraph& graph) {
  std::vector<double> hist;
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    const std::size_t d = graph.degree(u);
    if (hist.size() <= d) hist.resize(d + 1, 0.0);
    hist[d] += 1.0;
  }
  for (double& h : hist) h /= static_cast<double>(graph.num_nodes());
  return hist;
}

double histogram_mmd(std::span<const std::vector<double>> xs,
                     std::span<const std::vector<double>> ys, double sigma) {
  if (xs.empty() || ys.empty()) throw parameter_error("MMD needs non-empty sample sets");
  if (!(sigma > 0)) throw parameter_error("MMD bandwidth must be positive");
  auto kernel = [sigma](const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t len = std::max(a.size(), b.size());
    double l1 = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      l1 += std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0));
    }
    const double tv = 0.5 * l1;
    return std::exp(-tv * tv / (sigma * sigma));
  };
  auto mean_kernel = [&](std::span<const std::vector<double>> p,
                         std::span<const std::vector<double>> q) {
    double s = 0.0;
    for (const auto& a : p) {
      for (const auto& b : q) s += kernel(a, b);
    }
    return s / static_cast<double>(p.size() * q.size());
  };
  return std::max(0.0, mean_kernel(xs, xs) + mean_kernel(ys, ys) - 2.0 * mean_kernel(xs, ys));
}

double degree_mmd(const HetGraph& g1, const HetGraph& g2) {
  const std::vector<std::vector<double>> a{degree_histogram(g1)};
  const std::vector<std::vector<double>> b{degree_histogram(g2)};
  return histogram_mmd(a, b);
}

double eo_rate(const HetGraph& generated, const HetGraph& test) {
  if (generated.num_edges() == 0) return 0.0;
  std::size_t overlap = 0;
  for (const Edge& e : generated.edges()) {
    if (e.u < test.num_nodes() && e.v < test.num_nodes() && test.edge_type(e.u, e.v) == e.type) {
      ++overlap;
    }
  }
  return 100.0 * static_cast<double>(overlap) / static_cast<double>(generated.num_edges());
}

double uniqueness(std::span<const HetGraph> graphs) {
  if (graphs.size() < 2) throw parameter_error("uniqueness needs at least two graphs");
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      const auto a = graphs[i].edges();
      const auto b = graphs[j].edges();
      std::vector<Edge> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      const std::size_t uni = a.size() + b.size() - common.size();
      sum += uni == 0 ? 0.0
                      : 100.0 * static_cast<double>(uni - common.size()) / static_cast<double>(uni);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

void PatternDistribution::add(const MetaPathPattern& pattern, std::uint64_t by) {
  counts[pattern] += by;
  total += by;
}

double PatternDistribution::probability(const MetaPathPattern& pattern) const {
  auto it = counts.find(pattern);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

std::map<MetaPathPattern, double> PatternDistribution::probabilities() const {
  std::map<MetaPathPattern, double> out;
  for (const auto& [p, c] : counts) out[p] = static_cast<double>(c) / static_cast<double>(total);
  return out;
}

std::map<std::size_t, double> PatternDistribution::by_length() const {
  std::map<std::size_t, double> out;
  for (const auto& [p, c] : counts) {
    out[p.length()] += static_cast<double>(c) / static_cast<double>(total);
  }
  return out;
}

std::map<MetaPathPattern, double> PatternDistribution::conditional(std::size_t length) const {
  std::uint64_t sub = 0;
  for (const auto& [p, c] : counts) {
    if (p.length() == length) sub += c;
  }
  std::map<MetaPathPattern, double> out;
  if (sub == 0) return out;
  for (const auto& [p, c] : counts) {
    if (p.length() == length) out[p] = static_cast<double>(c) / static_cast<double>(sub);
  }
  return out;
}

MetaPathPattern canonical_pattern(const MetaPathPattern& pattern) {
  MetaPathPattern back{{pattern.types.rbegin(), pattern.types.rend()},
                       {pattern.edge_types.rbegin(), pattern.edge_types.rend()}};
  return std::min(pattern, back);
}

PatternDistribution pattern_distribution(std::span<const HeteroWalk> walks) {
  PatternDistribution d;
  for (const HeteroWalk& w : walks) d.add(canonical_pattern(extract_pattern(w)));
  return d;
}

PatternDistribution metapath_distribution(const HetGraph& graph,
                                          const std::set<std::size_t>& lengths,
                                          std::size_t samples, Rng& rng) {
  return pattern_distribution(sample_corpus(graph, samples, lengths, rng));
}

double total_variation(const std::map<MetaPathPattern, double>& p,
                       const std::map<MetaPathPattern, double>& q) {
  double l1 = 0.0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    l1 += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q) {
    if (!p.contains(k)) l1 += v;
  }
  return 0.5 * l1;
}

DistributionDistance distribution_distance(const PatternDistribution& p,
                                           const PatternDistribution& q) {
  if (p.total == 0 || q.total == 0) throw parameter_error("empty pattern distribution");
  DistributionDistance out;
  out.overall = total_variation(p.probabilities(), q.probabilities());
  const auto pl = p.by_length();
  const auto ql = q.by_length();
  std::set<std::size_t> lengths;
  double l1 = 0.0;
  for (const auto& [len, v] : pl) lengths.insert(len);
  for (const auto& [len, v] : ql) lengths.insert(len);
  for (std::size_t len : lengths) {
    const double a = pl.contains(len) ? pl.at(len) : 0.0;
    const double b = ql.contains(len) ? ql.at(len) : 0.0;
    l1 += std::abs(a - b);
    const auto pc = p.conditional(len);
    const auto qc = q.conditional(len);
    out.by_length[len] = (pc.empty() || qc.empty()) ? 1.0 : total_variation(pc, qc);
  }
  out.length_ratio = 0.5 * l1;
  return out;
}

}  // namespace hetgen
