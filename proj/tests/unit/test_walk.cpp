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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "hetgen/error.hpp"
#include "hetgen/walk.hpp"
#include "support.hpp"

namespace hetgen {
namespace {

using testing::TempDir;
using testing::make_graph;

// Upper-tail chi-square critical value at p = 0.01 via Wilson-Hilferty.
double chi2_critical_01(double dof) {
  const double z = 2.3263478740408408;
  const double a = 2.0 / (9.0 * dof);
  return dof * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

HetGraph single_edge() { return make_graph({0, 1}, {{0, 1, 0}}); }

HetGraph star(std::size_t leaves) {
  std::vector<TypeIndex> types(leaves + 1, 1);
  types[0] = 0;
  std::vector<Edge> edges;
  for (NodeId l = 1; l <= leaves; ++l) edges.push_back({0, l, 0});
  return make_graph(types, edges);
}

TEST(SampleWalk, SingleEdgeBothOrientations) {
  const HetGraph g = single_edge();
  Rng rng(1);
  int forward = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const HeteroWalk w = sample_walk(g, 1, rng);
    ASSERT_EQ(w.nodes.size(), 2u);
    forward += w.nodes[0] == 0;
  }
  EXPECT_NEAR(forward / static_cast<double>(n), 0.5, 0.02);
}

TEST(SampleWalk, StarSecondStepUniformOverLeaves) {
  const HetGraph g = star(4);
  Rng rng(2);
  std::map<NodeId, int> counts;
  int from_leaf = 0;
  for (int i = 0; i < 40000; ++i) {
    const HeteroWalk w = sample_walk(g, 2, rng);
    if (w.nodes[0] == 0) continue;
    ++from_leaf;
    ASSERT_EQ(w.nodes[1], 0u);
    ++counts[w.nodes[2]];
  }
  ASSERT_EQ(counts.size(), 4u);
  double chi2 = 0.0;
  const double expected = from_leaf / 4.0;
  for (auto [leaf, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, chi2_critical_01(3));
}

TEST(SampleWalk, Deterministic) {
  Rng a(99);
  Rng b(99);
  const HetGraph g = star(5);
  EXPECT_EQ(sample_walk(g, 3, a), sample_walk(g, 3, b));
}

TEST(SampleWalk, EdgelessGraphIsSamplingError) {
  const HetGraph g = make_graph({0, 1}, {});
  Rng rng(1);
  try {
    sample_walk(g, 1, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSampling);
  }
}

TEST(SampleWalk, StartUniformOverNonIsolatedNodes) {
  // Path 0-1-2-3 plus isolated node 4.
  const HetGraph g = make_graph({0, 0, 0, 0, 0}, {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}});
  Rng rng(17);
  std::vector<int> counts(5, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[sample_walk(g, 1, rng).nodes[0]];
  EXPECT_EQ(counts[4], 0);
  double chi2 = 0.0;
  for (int i = 0; i < 4; ++i) chi2 += (counts[i] - n / 4.0) * (counts[i] - n / 4.0) / (n / 4.0);
  EXPECT_LT(chi2, chi2_critical_01(3));
}

TEST(Pattern, ExtractKeepsDirection) {
  HeteroWalk w{{5, 6, 7}, {0, 1, 2}, {0, 1}};
  const MetaPathPattern p = extract_pattern(w);
  EXPECT_EQ(p.types, (std::vector<TypeIndex>{0, 1, 2}));
  EXPECT_EQ(p.edge_types, (std::vector<TypeIndex>{0, 1}));
  EXPECT_EQ(p.length(), 2u);
  const MetaPathPattern r = extract_pattern(reversed(w));
  EXPECT_EQ(r.types, (std::vector<TypeIndex>{2, 1, 0}));
  EXPECT_EQ(r.edge_types, (std::vector<TypeIndex>{1, 0}));
}

TEST(Pattern, LengthOneWalk) {
  const MetaPathPattern p = extract_pattern(HeteroWalk{{0, 1}, {0, 1}, {0}});
  EXPECT_EQ(p.length(), 1u);
  EXPECT_EQ(p.edge_types.size(), 1u);
}

TEST(Pattern, MalformedWalkIsContractError) {
  const HeteroWalk bad{{0, 1}, {0}, {0}};
  try {
    check_well_formed(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kContract);
  }
}

TEST(Corpus, LengthOneOnSingleEdge) {
  Rng rng(3);
  const auto walks = sample_corpus(single_edge(), 3, {1}, rng);
  ASSERT_EQ(walks.size(), 3u);
  for (const auto& w : walks) EXPECT_EQ(w.num_edges(), 1u);
}

TEST(Corpus, LengthFrequenciesUniform) {
  Rng graph_rng(4);
  const HetGraph g = testing::random_graph(40, 0.15, 3, graph_rng);
  Rng rng(5);
  const auto walks = sample_corpus(g, 30000, {1, 2, 3}, rng);
  std::map<std::size_t, int> counts;
  for (const auto& w : walks) {
    ++counts[w.num_edges()];
    EXPECT_EQ(extract_pattern(w).length(), w.num_edges());
    EXPECT_NO_THROW(check_bound(w, g));
  }
  for (std::size_t l : {1u, 2u, 3u}) EXPECT_NEAR(counts[l] / 30000.0, 1.0 / 3.0, 0.02);
}

TEST(Corpus, ZeroCountIsParameterError) {
  Rng rng(1);
  try {
    sample_corpus(single_edge(), 0, {1}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParameter);
  }
}

TEST(Corpus, BoundCheckRejectsForeignEdges) {
  const HetGraph g = star(3);
  HeteroWalk w{{1, 2}, {1, 1}, {0}};
  try {
    check_bound(w, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIntegrity);
  }
}

TEST(Corpus, FileRoundTrip) {
  TempDir dir;
  Rng rng(8);
  const HetGraph g = star(6);
  const auto walks = sample_corpus(g, 50, {1, 2, 3}, rng);
  save_corpus(walks, g, dir / "c.txt");
  EXPECT_EQ(load_corpus(dir / "c.txt", g), walks);
}

TEST(Pattern, LabelUsesSchemaNames) {
  const HetGraph g = single_edge();
  const MetaPathPattern p{{0, 1}, {0}};
  EXPECT_EQ(pattern_label(p, g.schema()), "T0 -[E0]-> T1");
}

}  // namespace
}  // namespace hetgen
