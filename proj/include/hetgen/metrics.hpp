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
#include <set>
#include <span>
#include <vector>

#include "hetgen/graph.hpp"
#include "hetgen/rng.hpp"
#include "hetgen/walk.hpp"

namespace hetgen {

/// Node count of the largest connected component, 0 for an empty graph.
std::size_t lcc(const HetGraph& graph);
std::uint64_t triangle_count(const HetGraph& graph);
/// Average local clustering over all nodes; nodes of degree < 2 count as 0.
double clustering_coef(const HetGraph& graph);
/// Continuous MLE exponent 1 + n / sum ln(d / 0.5) with d_min = 1 over
/// degrees >= 1. +infinity when every degree equals 1, NaN when none is >= 1.
double powerlaw_exponent(std::span<const std::size_t> degrees);
double powerlaw_coef(const HetGraph& graph);
/// Degree Pearson correlation over both orientations of every edge.
/// NaN when the degree variance is zero or there are no edges.
double assortativity(const HetGraph& graph);

/// Normalized degree histogram, index = degree.
std::vector<double> degree_histogram(const HetGraph& graph);
/// Squared MMD between two sets of histograms under
/// k(x, y) = exp(-TV(x, y)^2 / sigma^2), histograms zero-padded to equal length.
double histogram_mmd(std::span<const std::vector<double>> xs,
                     std::span<const std::vector<double>> ys, double sigma = 1.0);
double degree_mmd(const HetGraph& g1, const HetGraph& g2);

/// Percentage of generated typed edges also present in `test`; 0 when
/// nothing was generated.
double eo_rate(const HetGraph& generated, const HetGraph& test);
/// Mean pairwise 100 * |A xor B| / |A u B| over typed edge sets.
double uniqueness(std::span<const HetGraph> graphs);

struct PatternDistribution {
  std::map<MetaPathPattern, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const MetaPathPattern& pattern, std::uint64_t by = 1);
  double probability(const MetaPathPattern& pattern) const;
  std::map<MetaPathPattern, double> probabilities() const;
  std::map<std::size_t, double> by_length() const;
  /// Distribution restricted to one length and renormalized.
  std::map<MetaPathPattern, double> conditional(std::size_t length) const;
};

/// The lesser of a pattern and its reversal. A walk and its reversal trace
/// the same meta-path instance, so distributions count them once.
MetaPathPattern canonical_pattern(const MetaPathPattern& pattern);

/// Patterns of `walks` in canonical orientation.
PatternDistribution pattern_distribution(std::span<const HeteroWalk> walks);
PatternDistribution metapath_distribution(const HetGraph& graph,
                                          const std::set<std::size_t>& lengths,
                                          std::size_t samples, Rng& rng);

struct DistributionDistance {
  double overall = 0.0;
  /// TV between the length marginals.
  double length_ratio = 0.0;
  /// TV between the per-length conditionals, for lengths present in either side.
  std::map<std::size_t, double> by_length;
};

double total_variation(const std::map<MetaPathPattern, double>& p,
                       const std::map<MetaPathPattern, double>& q);
DistributionDistance distribution_distance(const PatternDistribution& p,
                                           const PatternDistribution& q);

}  // namespace hetgen
