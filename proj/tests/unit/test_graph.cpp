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

#include <set>
#include <string>
#include <tuple>

#include "hetgen/error.hpp"
#include "hetgen/graph.hpp"
#include "support.hpp"

namespace hetgen {
namespace {

using testing::TempDir;
using testing::error_kind;
using testing::read_file;
using testing::write_file;

TEST(LoadGraph, MinimalInput) {
  TempDir dir;
  write_file(dir / "n.tsv", "0\tA\n1\tP\n");
  write_file(dir / "e.tsv", "0\t1\twrite\n");
  const HetGraph g = load_graph(dir / "n.tsv", dir / "e.tsv");
  EXPECT_EQ(g.num_nodes(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.schema().node_type_labels(), (std::vector<std::string>{"A", "P"}));
  EXPECT_EQ(g.schema().edge_type_labels(), (std::vector<std::string>{"write"}));
  ASSERT_TRUE(g.schema().edge_type_rule().has_value());
  EXPECT_EQ(g.schema().rule_edge_type(0, 1), 0u);
}

TEST(LoadGraph, DuplicateOrientationsCollapse) {
  TempDir dir;
  write_file(dir / "n.tsv", "# comment\n0\tA\n1\tP\n");
  write_file(dir / "e.tsv", "0\t1\twrite\n1\t0\twrite\n");
  const HetGraph g = load_graph(dir / "n.tsv", dir / "e.tsv");
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edges()[0].u, 0u);
  EXPECT_EQ(g.edges()[0].v, 1u);
}

TEST(LoadGraph, DanglingEndpointIsIntegrityError) {
  TempDir dir;
  write_file(dir / "n.tsv", "0\tA\n1\tP\n");
  write_file(dir / "e.tsv", "0\t7\twrite\n");
  EXPECT_EQ(error_kind([&] { load_graph(dir / "n.tsv", dir / "e.tsv"); }), ErrorKind::kIntegrity);
}

TEST(LoadGraph, WrongColumnCountNamesLine) {
  TempDir dir;
  write_file(dir / "n.tsv", "0\tA\n1\tP\n");
  write_file(dir / "e.tsv", "0\t1\twrite\n0\t1\n");
  try {
    load_graph(dir / "n.tsv", dir / "e.tsv");
    FAIL() << "expected parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(LoadGraph, ConflictingNodeTypeIsIntegrityError) {
  TempDir dir;
  write_file(dir / "n.tsv", "0\tA\n1\tP\n0\tP\n");
  write_file(dir / "e.tsv", "0\t1\twrite\n");
  EXPECT_EQ(error_kind([&] { load_graph(dir / "n.tsv", dir / "e.tsv"); }), ErrorKind::kIntegrity);
}

TEST(LoadGraph, ConflictingEdgeTypesAreIntegrityError) {
  TempDir dir;
  write_file(dir / "n.tsv", "0\tA\n1\tP\n");
  write_file(dir / "e.tsv", "0\t1\twrite\n1\t0\tcite\n");
  EXPECT_EQ(error_kind([&] { load_graph(dir / "n.tsv", dir / "e.tsv"); }), ErrorKind::kIntegrity);
}

TEST(LoadGraph, SelfLoopRejected) {
  TempDir dir;
  write_file(dir / "n.tsv", "0\tA\n");
  write_file(dir / "e.tsv", "0\t0\tx\n");
  EXPECT_EQ(error_kind([&] { load_graph(dir / "n.tsv", dir / "e.tsv"); }), ErrorKind::kIntegrity);
}

TEST(LoadGraph, RuleAbsentWhenPairCarriesTwoTypes) {
  TempDir dir;
  write_file(dir / "n.tsv", "0\tA\n1\tP\n2\tP\n");
  write_file(dir / "e.tsv", "0\t1\twrite\n0\t2\tcite\n");
  const HetGraph g = load_graph(dir / "n.tsv", dir / "e.tsv");
  EXPECT_FALSE(g.schema().edge_type_rule().has_value());
}

TEST(LoadGraph, StringIdsKeptAsExternalIds) {
  TempDir dir;
  write_file(dir / "n.tsv", "a7\tA\nzz\tP\n");
  write_file(dir / "e.tsv", "zz\ta7\tw\n");
  const HetGraph g = load_graph(dir / "n.tsv", dir / "e.tsv");
  EXPECT_EQ(g.external_id(0), "a7");
  EXPECT_EQ(g.external_id(1), "zz");
  EXPECT_TRUE(g.has_edge(0, 1));
}

TEST(SaveGraph, EmptyGraphWritesEmptyFiles) {
  TempDir dir;
  save_graph(HetGraph(), dir / "n.tsv", dir / "e.tsv");
  EXPECT_EQ(read_file(dir / "n.tsv"), "");
  EXPECT_EQ(read_file(dir / "e.tsv"), "");
}

TEST(SaveGraph, SingleEdgeOneLine) {
  TempDir dir;
  const HetGraph g = testing::make_graph({0, 1}, {{1, 0, 0}});
  save_graph(g, dir / "n.tsv", dir / "e.tsv");
  EXPECT_EQ(read_file(dir / "e.tsv"), "0\t1\tE0\n");
}

std::set<std::tuple<NodeId, NodeId, std::string>> labelled_edges(const HetGraph& g) {
  std::set<std::tuple<NodeId, NodeId, std::string>> out;
  for (const Edge& e : g.edges()) out.emplace(e.u, e.v, g.schema().edge_type_labels()[e.type]);
  return out;
}

TEST(SaveGraph, RoundTripAndByteStable) {
  TempDir dir;
  Rng rng(5);
  SynthParams p;
  p.per_type_size = 12;
  const HetGraph g = synth_hetero_graph(p, rng);
  save_graph(g, dir / "n.tsv", dir / "e.tsv");
  const HetGraph back = load_graph(dir / "n.tsv", dir / "e.tsv");
  EXPECT_TRUE(std::ranges::equal(back.node_types(), g.node_types()));
  EXPECT_TRUE(std::ranges::equal(back.external_ids(), g.external_ids()));
  // Edge-type indices follow first appearance in the file, so compare
  // edges by label.
  EXPECT_EQ(back.schema().node_type_labels(), g.schema().node_type_labels());
  EXPECT_EQ(labelled_edges(back), labelled_edges(g));
  save_graph(back, dir / "n2.tsv", dir / "e2.tsv");
  EXPECT_EQ(read_file(dir / "n.tsv"), read_file(dir / "n2.tsv"));
  EXPECT_EQ(read_file(dir / "e.tsv"), read_file(dir / "e2.tsv"));
}

TEST(HetGraph, CanonicalEdgesUniqueAndSorted) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const HetGraph g = testing::random_graph(30, 0.2, 3, rng);
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const Edge& e : g.edges()) {
      EXPECT_LT(e.u, e.v);
      EXPECT_TRUE(seen.insert({e.u, e.v}).second);
    }
    std::size_t degree_sum = 0;
    for (NodeId n = 0; n < g.num_nodes(); ++n) degree_sum += g.degree(n);
    EXPECT_EQ(degree_sum, 2 * g.num_edges());
  }
}

TEST(HetGraph, RuleMismatchRejected) {
  TypeSchema schema({"A", "P"}, {"w", "c"}, std::map<TypePair, TypeIndex>{{{0, 1}, 0}});
  EXPECT_EQ(error_kind([&] { HetGraph(schema, {0, 1}, {{0, 1, 1}}); }), ErrorKind::kIntegrity);
  EXPECT_NO_THROW(HetGraph(schema, {0, 1}, {{0, 1, 0}}));
}

TEST(Synth, Syn100Analogue) {
  Rng rng(7);
  const SynthParams p = synth_preset(100);
  EXPECT_EQ(p.num_types, 3u);
  const HetGraph g = synth_hetero_graph(p, rng);
  EXPECT_LE(g.num_nodes(), p.num_types * p.per_type_size);
  EXPECT_GE(g.num_nodes(), 100u);
  EXPECT_EQ(g.schema().num_node_types(), 3u);
  std::size_t cross = 0;
  for (const Edge& e : g.edges()) cross += g.node_type(e.u) != g.node_type(e.v);
  EXPECT_GT(cross, 0u);
}

TEST(Synth, PresetsScale) {
  for (std::size_t total : {100u, 200u, 500u}) {
    const SynthParams p = synth_preset(total);
    EXPECT_EQ(p.num_types, 3u);
    EXPECT_GE(p.num_types * p.per_type_size, total);
    EXPECT_LT(p.num_types * p.per_type_size, total + 3);
  }
}

TEST(Synth, NoSharingMeansNoCrossEdges) {
  Rng rng(3);
  SynthParams p;
  p.share_fraction = 0.0;
  p.intra_edge_prob = 0.3;
  const HetGraph g = synth_hetero_graph(p, rng);
  for (const Edge& e : g.edges()) EXPECT_EQ(g.node_type(e.u), g.node_type(e.v));
  EXPECT_GE(count_components(g), p.num_types);
}

TEST(Synth, Deterministic) {
  Rng a(42);
  Rng b(42);
  const HetGraph g1 = synth_hetero_graph(SynthParams{}, a);
  const HetGraph g2 = synth_hetero_graph(SynthParams{}, b);
  EXPECT_TRUE(std::ranges::equal(g1.edges(), g2.edges()));
  EXPECT_TRUE(std::ranges::equal(g1.node_types(), g2.node_types()));
}

TEST(Synth, InvalidProbabilityIsParameterError) {
  Rng rng(1);
  SynthParams p;
  p.intra_edge_prob = 1.5;
  EXPECT_EQ(error_kind([&] { synth_hetero_graph(p, rng); }), ErrorKind::kParameter);
  p.intra_edge_prob = 0.1;
  p.share_fraction = -0.1;
  EXPECT_EQ(error_kind([&] { synth_hetero_graph(p, rng); }), ErrorKind::kParameter);
}

TEST(Split, SixtyPercentOfTen) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < 10; ++i) pairs.emplace_back(i, i + 1);
  const HetGraph g = testing::plain_graph(11, pairs);
  Rng rng(9);
  const EdgeSplit s = split_edges(g, 0.6, rng);
  EXPECT_EQ(s.train.num_edges(), 6u);
  EXPECT_EQ(s.test.num_edges(), 4u);
  EXPECT_EQ(s.train.num_nodes(), 11u);
  EXPECT_EQ(s.test.num_nodes(), 11u);
}

TEST(Split, SingleEdgeLandsOnExactlyOneSide) {
  const HetGraph g = testing::plain_graph(2, {{0, 1}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const EdgeSplit s = split_edges(g, 0.6, rng);
    EXPECT_EQ(s.train.num_edges() + s.test.num_edges(), 1u);
  }
}

TEST(Split, PartitionOnRandomGraphs) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const HetGraph g = testing::random_graph(25, 0.25, 2, rng);
    const EdgeSplit s = split_edges(g, 0.6, rng);
    std::set<Edge> train(s.train.edges().begin(), s.train.edges().end());
    std::set<Edge> test(s.test.edges().begin(), s.test.edges().end());
    for (const Edge& e : test) EXPECT_FALSE(train.contains(e));
    std::set<Edge> uni = train;
    uni.insert(test.begin(), test.end());
    EXPECT_EQ(uni, std::set<Edge>(g.edges().begin(), g.edges().end()));
    EXPECT_EQ(s.train.num_edges(),
              static_cast<std::size_t>(std::lround(0.6 * static_cast<double>(g.num_edges()))));
  }
}

TEST(Split, FractionOutsideRangeRejected) {
  const HetGraph g = testing::plain_graph(2, {{0, 1}});
  Rng rng(1);
  EXPECT_EQ(error_kind([&] { split_edges(g, 1.0, rng); }), ErrorKind::kParameter);
  EXPECT_EQ(error_kind([&] { split_edges(g, 0.0, rng); }), ErrorKind::kParameter);
}

}  // namespace
}  // namespace hetgen
