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

#include "hetgen/embed.hpp"
#include "hetgen/error.hpp"
#include "support.hpp"

namespace hetgen {
namespace {

using testing::TempDir;
using testing::make_graph;

// Two disjoint 10-cliques, types alternating inside each clique.
HetGraph two_clusters() {
  std::vector<TypeIndex> types(20);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 20; ++i) types[i] = i % 2;
  for (NodeId base : {0u, 10u}) {
    for (NodeId a = 0; a < 10; ++a) {
      for (NodeId b = a + 1; b < 10; ++b) edges.push_back({base + a, base + b, 0});
    }
  }
  return make_graph(types, edges);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

TEST(Embeddings, ClustersSeparate) {
  const HetGraph g = two_clusters();
  Rng rng(3);
  const auto corpus = sample_corpus(g, 2000, {6}, rng);
  EmbedParams p;
  p.dim = 16;
  p.epochs = 3;
  const EmbeddingTable t = train_embeddings(corpus, g, p, rng);
  double intra = 0, inter = 0;
  int n_intra = 0, n_inter = 0;
  for (NodeId a = 0; a < 20; ++a) {
    for (NodeId b = a + 1; b < 20; ++b) {
      const double c = cosine(t.vector(a), t.vector(b));
      if ((a < 10) == (b < 10)) {
        intra += c;
        ++n_intra;
      } else {
        inter += c;
        ++n_inter;
      }
    }
  }
  EXPECT_GT(intra / n_intra, inter / n_inter);
}

TEST(Embeddings, ZeroEpochsKeepsSeededInitialization) {
  const HetGraph g = two_clusters();
  Rng corpus_rng(1);
  const auto corpus = sample_corpus(g, 10, {2}, corpus_rng);
  EmbedParams p;
  p.dim = 4;
  p.epochs = 0;
  Rng rng(77);
  const EmbeddingTable t = train_embeddings(corpus, g, p, rng);
  // Oracle: uniform draws mapped to [-0.5/dim, 0.5/dim), node-major.
  Rng oracle(77);
  for (NodeId n = 0; n < g.num_nodes(); ++n) {
    for (std::size_t c = 0; c < p.dim; ++c) {
      const double expected = (oracle.uniform() * 2.0 - 1.0) * (0.5 / 4.0);
      EXPECT_EQ(t.vector(n)[c], expected);
      EXPECT_LE(std::abs(expected), 0.125);
    }
  }
}

TEST(Embeddings, DeterministicAndFinite) {
  const HetGraph g = two_clusters();
  auto run = [&] {
    Rng rng(5);
    const auto corpus = sample_corpus(g, 300, {1, 2, 3}, rng);
    return train_embeddings(corpus, g, EmbedParams{}, rng);
  };
  const EmbeddingTable a = run();
  const EmbeddingTable b = run();
  EXPECT_EQ(a, b);
  for (double x : a.data()) EXPECT_TRUE(std::isfinite(x));
}

TEST(Embeddings, UnvisitedNodeKeepsInitialization) {
  // Node 2 is isolated and never appears in the corpus.
  const HetGraph g = make_graph({0, 1, 0}, {{0, 1, 0}});
  Rng rng(1);
  const auto corpus = sample_corpus(g, 20, {1}, rng);
  EmbedParams p;
  p.dim = 3;
  Rng a(9);
  const EmbeddingTable trained = train_embeddings(corpus, g, p, a);
  p.epochs = 0;
  Rng b(9);
  const EmbeddingTable init = train_embeddings(corpus, g, p, b);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(trained.vector(2)[c], init.vector(2)[c]);
}

TEST(Embeddings, EmptyCorpusIsParameterError) {
  Rng rng(1);
  try {
    train_embeddings({}, two_clusters(), EmbedParams{}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParameter);
  }
}

TEST(Embeddings, MembersPartitionNodes) {
  const EmbeddingTable t(2, std::vector<double>(10, 0.0), {1, 0, 1, 1, 0}, 2);
  EXPECT_EQ(std::vector<NodeId>(t.members(0).begin(), t.members(0).end()),
            (std::vector<NodeId>{1, 4}));
  EXPECT_EQ(std::vector<NodeId>(t.members(1).begin(), t.members(1).end()),
            (std::vector<NodeId>{0, 2, 3}));
}

TEST(TypeDistances, HandArithmetic) {
  const EmbeddingTable t(2, {0, 0, 3, 4}, {0, 0}, 1);
  const double q[] = {0, 0};
  const auto d = type_distances(t, q, 0);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], (std::pair<NodeId, double>{0, 0.0}));
  EXPECT_EQ(d[1], (std::pair<NodeId, double>{1, 25.0}));
}

TEST(TypeDistances, SingleMemberAndSelfDistance) {
  const EmbeddingTable t(2, {1, 2, 5, -1, 0.5, 0.25}, {0, 1, 1}, 2);
  const double q[] = {7, 7};
  EXPECT_EQ(type_distances(t, q, 0).size(), 1u);
  const auto self = type_distances(t, t.vector(2), 1);
  EXPECT_EQ(self[1].second, 0.0);
  // Symmetric under swapping query and member.
  const auto ab = type_distances(t, t.vector(1), 1)[1].second;
  const auto ba = type_distances(t, t.vector(2), 1)[0].second;
  EXPECT_DOUBLE_EQ(ab, ba);
  EXPECT_GE(ab, 0.0);
}

TEST(TypeDistances, Errors) {
  const EmbeddingTable t(2, {0, 0, 1, 1}, {0, 0}, 2);
  const double q[] = {0, 0};
  const double q3[] = {0, 0, 0};
  auto kind = testing::error_kind;
  EXPECT_EQ(kind([&] { type_distances(t, q, 1); }), ErrorKind::kLookup);
  EXPECT_EQ(kind([&] { type_distances(t, q, 5); }), ErrorKind::kLookup);
  EXPECT_EQ(kind([&] { type_distances(t, q3, 0); }), ErrorKind::kShape);
}

TEST(Embeddings, FileRoundTrip) {
  TempDir dir;
  const HetGraph g = two_clusters();
  Rng rng(2);
  const auto corpus = sample_corpus(g, 100, {2}, rng);
  const EmbeddingTable t = train_embeddings(corpus, g, EmbedParams{}, rng);
  save_embeddings(t, dir / "e.bin");
  EXPECT_EQ(load_embeddings(dir / "e.bin", g), t);
}

}  // namespace
}  // namespace hetgen
