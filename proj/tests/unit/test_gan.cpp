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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "gradcheck.hpp"
#include "hetgen/gan.hpp"
#include "support.hpp"

namespace hetgen {
namespace {

using testing::check_gradients;
using testing::error_kind;

// Two node types with a total edge-type rule.
TypeSchema two_type_schema() {
  std::map<TypePair, TypeIndex> rule{{TypePair::of(0, 0), 0},
                                     {TypePair::of(0, 1), 1},
                                     {TypePair::of(1, 1), 2}};
  return TypeSchema({"A", "B"}, {"aa", "ab", "bb"}, rule);
}

EmbeddingTable random_table(const std::vector<TypeIndex>& types, std::size_t num_types,
                            std::size_t dim, Rng& rng) {
  std::vector<double> data(types.size() * dim);
  for (double& x : data) x = rng.normal();
  return EmbeddingTable(dim, std::move(data), types, num_types);
}

GeneratorDims small_dims(std::size_t types, std::size_t edge_types, std::size_t embed_dim) {
  GeneratorDims d;
  d.num_node_types = types;
  d.num_edge_types = edge_types;
  d.noise_dim = 3;
  d.hidden_dim = 4;
  d.encode_dim = 3;
  d.embed_dim = embed_dim;
  return d;
}

std::vector<std::vector<double>> snapshot(const nn::ParamList& params) {
  std::vector<std::vector<double>> out;
  for (const auto& p : params) out.push_back(p.second->data);
  return out;
}

double max_abs(const nn::ParamList& params) {
  double m = 0.0;
  for (const auto& p : params) {
    for (double x : p.second->data) m = std::max(m, std::abs(x));
  }
  return m;
}

// Generator that always emits type 0 and targets the given point.
GeneratorParams fixed_target_generator(std::size_t types, std::vector<double> query, Rng& rng) {
  GeneratorParams g = GeneratorParams::create(small_dims(types, 1, query.size()), rng);
  std::fill(g.g_o.weight->data.begin(), g.g_o.weight->data.end(), 0.0);
  std::fill(g.g_o.bias->data.begin(), g.g_o.bias->data.end(), -50.0);
  g.g_o.bias->data[0] = 50.0;
  std::fill(g.g_v.weight->data.begin(), g.g_v.weight->data.end(), 0.0);
  g.g_v.bias->data = std::move(query);
  return g;
}

std::map<NodeId, double> node_frequencies(const GeneratorParams& g, const EmbeddingTable& table,
                                          const GenerationOptions& o, std::size_t walks) {
  const TypeSchema schema({"A"}, {"aa"}, std::map<TypePair, TypeIndex>{{TypePair::of(0, 0), 0}});
  Rng rng(77);
  std::map<NodeId, double> freq;
  std::size_t total = 0;
  for (const HeteroWalk& w : generate_walks(g, table, schema, walks, o, rng)) {
    for (NodeId n : w.nodes) {
      freq[n] += 1.0;
      ++total;
    }
  }
  for (auto& [n, f] : freq) f /= static_cast<double>(total);
  return freq;
}

TEST(NodeSelection, SingleMemberAlwaysChosen) {
  Rng rng(1);
  const EmbeddingTable table(2, {3.0, -1.0}, {0}, 1);
  const GeneratorParams g = fixed_target_generator(1, {0.0, 0.0}, rng);
  GenerationOptions o;
  o.max_len = 2;
  const auto freq = node_frequencies(g, table, o, 2000);
  ASSERT_EQ(freq.size(), 1u);
  EXPECT_EQ(freq.begin()->first, 0u);
}

TEST(NodeSelection, EquidistantMembersSplitEvenly) {
  Rng rng(2);
  const EmbeddingTable table(2, {1.0, 0.0, -1.0, 0.0}, {0, 0}, 1);
  const GeneratorParams g = fixed_target_generator(1, {0.0, 0.0}, rng);
  GenerationOptions o;
  o.max_len = 2;
  const auto freq = node_frequencies(g, table, o, 5000);
  EXPECT_NEAR(freq.at(0), 0.5, 0.02);
  EXPECT_NEAR(freq.at(1), 0.5, 0.02);
}

TEST(NodeSelection, NearerMemberDominates) {
  // Squared distances 0 and 100: softmax weight of the far member is e^-100.
  Rng rng(3);
  const EmbeddingTable table(2, {0.0, 0.0, 10.0, 0.0}, {0, 0}, 1);
  const GeneratorParams g = fixed_target_generator(1, {0.0, 0.0}, rng);
  GenerationOptions o;
  o.max_len = 2;
  const auto freq = node_frequencies(g, table, o, 5000);
  EXPECT_GT(freq.at(0), 0.999);
}

TEST(NodeSelection, SoftmaxFrequenciesMatchDistances) {
  // Squared distances 0, 1, 4 give weights proportional to 1, e^-1, e^-4.
  Rng rng(4);
  const EmbeddingTable table(1, {0.0, 1.0, -2.0}, {0, 0, 0}, 1);
  const GeneratorParams g = fixed_target_generator(1, {0.0}, rng);
  GenerationOptions o;
  o.max_len = 2;
  const auto freq = node_frequencies(g, table, o, 10000);
  const double z = 1.0 + std::exp(-1.0) + std::exp(-4.0);
  EXPECT_NEAR(freq.at(0), 1.0 / z, 0.02);
  EXPECT_NEAR(freq.at(1), std::exp(-1.0) / z, 0.02);
  EXPECT_NEAR(freq.at(2), std::exp(-4.0) / z, 0.01);
}

TEST(NodeSelection, UniformAblationIgnoresDistances) {
  Rng rng(5);
  const EmbeddingTable table(2, {0.0, 0.0, 10.0, 0.0}, {0, 0}, 1);
  const GeneratorParams g = fixed_target_generator(1, {0.0, 0.0}, rng);
  GenerationOptions o;
  o.max_len = 2;
  o.uniform_node_sampling = true;
  const auto freq = node_frequencies(g, table, o, 5000);
  EXPECT_NEAR(freq.at(0), 0.5, 0.02);
  EXPECT_NEAR(freq.at(1), 0.5, 0.02);
}

TEST(Generator, WalksRespectTypesLengthsAndRule) {
  Rng rng(6);
  const TypeSchema schema = two_type_schema();
  const std::vector<TypeIndex> types{0, 0, 0, 1, 1};
  const EmbeddingTable table = random_table(types, 2, 3, rng);
  const GeneratorParams g = GeneratorParams::create(small_dims(2, 3, 3), rng);
  GenerationOptions o;
  o.max_len = 5;
  for (const HeteroWalk& w : generate_walks(g, table, schema, 2000, o, rng)) {
    ASSERT_GE(w.nodes.size(), 2u);
    ASSERT_LE(w.nodes.size(), 5u);
    ASSERT_EQ(w.types.size(), w.nodes.size());
    ASSERT_EQ(w.edge_types.size(), w.nodes.size() - 1);
    for (std::size_t i = 0; i < w.nodes.size(); ++i) {
      ASSERT_LT(w.types[i], 2u);
      EXPECT_EQ(types[w.nodes[i]], w.types[i]);
    }
    for (std::size_t i = 0; i + 1 < w.nodes.size(); ++i) {
      EXPECT_EQ(w.edge_types[i], *schema.rule_edge_type(w.types[i], w.types[i + 1]));
    }
  }
}

TEST(Generator, DecodedEdgeTypesInRangeWithoutRule) {
  Rng rng(7);
  const TypeSchema schema({"A", "B"}, {"x", "y"});
  const std::vector<TypeIndex> types{0, 1, 0, 1};
  const EmbeddingTable table = random_table(types, 2, 2, rng);
  const GeneratorParams g = GeneratorParams::create(small_dims(2, 2, 2), rng);
  GenerationOptions o;
  std::set<TypeIndex> seen;
  for (const HeteroWalk& w : generate_walks(g, table, schema, 500, o, rng)) {
    for (TypeIndex e : w.edge_types) {
      ASSERT_LT(e, 2u);
      seen.insert(e);
    }
  }
  EXPECT_FALSE(seen.empty());
}

TEST(Generator, ForcedEndAtStepThreeGivesTwoEdges) {
  Rng rng(8);
  const std::vector<TypeIndex> types{0, 1, 0, 1};
  const EmbeddingTable table = random_table(types, 2, 2, rng);
  GeneratorParams g = GeneratorParams::create(small_dims(2, 3, 2), rng);
  // Never end on its own, so only the forced step can stop a walk.
  g.g_o.bias->data[2] = -50.0;
  GenerationOptions o;
  o.max_len = 6;
  o.force_eos_at_step = 3;
  for (const HeteroWalk& w : generate_walks(g, table, two_type_schema(), 300, o, rng)) {
    EXPECT_EQ(w.edge_types.size(), 2u);
  }
}

TEST(Generator, EmptyTypeIsRejectedAfterResampling) {
  Rng rng(9);
  // Type 1 has no members and the generator always prefers it.
  const EmbeddingTable table(1, {0.5}, {0}, 2);
  GeneratorParams g = GeneratorParams::create(small_dims(2, 3, 1), rng);
  std::fill(g.g_o.weight->data.begin(), g.g_o.weight->data.end(), 0.0);
  g.g_o.bias->data = {-100.0, 100.0, -100.0};
  GenerationOptions o;
  EXPECT_EQ(error_kind([&] { generate_walk(g, table, two_type_schema(), o, rng); }),
            ErrorKind::kGeneration);
}

TEST(Generator, SameSeedSameWalks) {
  Rng init(10);
  const std::vector<TypeIndex> types{0, 1, 0, 1, 1};
  const EmbeddingTable table = random_table(types, 2, 3, init);
  const GeneratorParams g = GeneratorParams::create(small_dims(2, 3, 3), init);
  GenerationOptions o;
  Rng a(5), b(5);
  EXPECT_EQ(generate_walks(g, table, two_type_schema(), 400, o, a),
            generate_walks(g, table, two_type_schema(), 400, o, b));
}

TEST(Generator, InvalidOptions) {
  Rng rng(11);
  const EmbeddingTable table(1, {0.5, 1.0}, {0, 1}, 2);
  const GeneratorParams g = GeneratorParams::create(small_dims(2, 3, 1), rng);
  GenerationOptions o;
  o.temperature = 0.0;
  EXPECT_EQ(error_kind([&] { generate_walk(g, table, two_type_schema(), o, rng); }),
            ErrorKind::kParameter);
  o.temperature = 0.5;
  o.max_len = 1;
  EXPECT_EQ(error_kind([&] { generate_walk(g, table, two_type_schema(), o, rng); }),
            ErrorKind::kParameter);
}

TEST(Critic, ZeroNetworkScoresZero) {
  const DiscriminatorParams d = DiscriminatorParams::zeros(4, 3, 2, 5);
  const EmbeddingTable table(2, {1, 2, 3, 4, 5, 6}, {0, 1, 0}, 2);
  HeteroWalk w{{0, 1, 2}, {0, 1, 0}, {1, 1}};
  EXPECT_EQ(score_walk(d, w, table), 0.0);
}

TEST(Critic, ScoreIsPure) {
  Rng rng(12);
  const DiscriminatorParams d = DiscriminatorParams::create(4, 3, 2, 5, rng);
  const EmbeddingTable table(2, {1, 2, 3, 4, 5, 6}, {0, 1, 0}, 2);
  HeteroWalk w{{0, 1, 2}, {0, 1, 0}, {1, 1}};
  EXPECT_EQ(score_walk(d, w, table), score_walk(d, w, table));
}

TEST(Critic, RejectsOverlongWalks) {
  Rng rng(13);
  const DiscriminatorParams d = DiscriminatorParams::create(2, 3, 2, 5, rng);
  const EmbeddingTable table(2, {1, 2, 3, 4, 5, 6}, {0, 1, 0}, 2);
  HeteroWalk w{{0, 1, 2}, {0, 1, 0}, {1, 1}};
  EXPECT_EQ(error_kind([&] { score_walk(d, w, table); }), ErrorKind::kContract);
}

struct CriticFixture {
  Rng rng{14};
  TypeSchema schema = two_type_schema();
  std::vector<TypeIndex> types{0, 0, 1, 1};
  EmbeddingTable table = random_table(types, 2, 2, rng);
  GeneratorParams gen = GeneratorParams::create(small_dims(2, 3, 2), rng);
  DiscriminatorParams disc = DiscriminatorParams::create(4, 3, 2, 6, rng);
  std::vector<HeteroWalk> real{{{0, 2}, {0, 1}, {1}}, {{1, 3, 0}, {0, 1, 0}, {1, 1}}};
  GenerationOptions options;
};

TEST(Critic, ZeroRateOnlyClips) {
  CriticFixture f;
  const double clip = 0.05;
  const auto before = snapshot(f.disc.params());
  TrainerState state;
  critic_step(f.gen, f.disc, f.real, f.table, f.schema, clip, 0.0, f.options, state, f.rng);
  const auto after = snapshot(f.disc.params());
  for (std::size_t p = 0; p < before.size(); ++p) {
    for (std::size_t i = 0; i < before[p].size(); ++i) {
      EXPECT_EQ(after[p][i], std::clamp(before[p][i], -clip, clip));
    }
  }
}

TEST(Critic, WeightsWithinClipAfterEveryStep) {
  CriticFixture f;
  TrainerState state;
  for (int s = 0; s < 20; ++s) {
    critic_step(f.gen, f.disc, f.real, f.table, f.schema, 0.02, 0.05, f.options, state, f.rng);
    ASSERT_LE(max_abs(f.disc.params()), 0.02);
  }
}

TEST(Critic, InvalidArguments) {
  CriticFixture f;
  TrainerState state;
  EXPECT_EQ(error_kind([&] {
              critic_step(f.gen, f.disc, {}, f.table, f.schema, 0.1, 0.1, f.options, state, f.rng);
            }),
            ErrorKind::kParameter);
  EXPECT_EQ(error_kind([&] {
              critic_step(f.gen, f.disc, f.real, f.table, f.schema, 0.0, 0.1, f.options, state,
                          f.rng);
            }),
            ErrorKind::kParameter);
}

TEST(Critic, SeparatesStartTypesWithinTwoHundredSteps) {
  // Real walks start with type A, generated walks are all type B.
  CriticFixture f;
  std::fill(f.gen.g_o.weight->data.begin(), f.gen.g_o.weight->data.end(), 0.0);
  f.gen.g_o.bias->data = {-50.0, 50.0, -50.0};
  std::vector<HeteroWalk> real;
  for (int i = 0; i < 16; ++i) real.push_back({{0, 2}, {0, 1}, {1}});
  TrainerState state;
  for (int s = 0; s < 200; ++s) {
    critic_step(f.gen, f.disc, real, f.table, f.schema, 0.1, 5e-3, f.options, state, f.rng);
  }
  double real_mean = 0.0;
  for (const HeteroWalk& w : real) real_mean += score_walk(f.disc, w, f.table) / 16.0;
  double fake_mean = 0.0;
  for (const HeteroWalk& w : generate_walks(f.gen, f.table, f.schema, 16, f.options, f.rng)) {
    ASSERT_EQ(w.types.front(), 1u);
    fake_mean += score_walk(f.disc, w, f.table) / 16.0;
  }
  EXPECT_GT(real_mean - fake_mean, 0.0);
}

TEST(GeneratorStep, ZeroRateLeavesParameters) {
  CriticFixture f;
  const auto before = snapshot(f.gen.params());
  const auto disc_before = snapshot(f.disc.params());
  TrainerState state;
  const double loss = generator_step(f.gen, f.disc, 8, f.table, f.schema, 0.0, f.options, {},
                                     0.0, state, f.rng);
  EXPECT_TRUE(std::isfinite(loss));
  EXPECT_EQ(snapshot(f.gen.params()), before);
  EXPECT_EQ(snapshot(f.disc.params()), disc_before);
}

TEST(GeneratorStep, LossFiniteAndParametersMove) {
  CriticFixture f;
  const auto before = snapshot(f.gen.params());
  TrainerState state;
  for (int s = 0; s < 5; ++s) {
    const double loss = generator_step(f.gen, f.disc, 8, f.table, f.schema, 1e-2, f.options, {},
                                       0.0, state, f.rng);
    ASSERT_TRUE(std::isfinite(loss));
  }
  EXPECT_NE(snapshot(f.gen.params()), before);
}

// Gradient of the generator loss with frozen noise: a fresh Rng with the
// same seed replays identical z and Gumbel draws on every evaluation.
TEST(GeneratorGradient, FrozenNoiseMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(100 + seed);
    const TypeSchema schema({"A", "B"}, {"x", "y"});
    const std::vector<TypeIndex> types{0, 0, 1, 1, 0};
    const EmbeddingTable table = random_table(types, 2, 2, rng);
    const GeneratorParams gen = GeneratorParams::create(small_dims(2, 2, 2), rng);
    const DiscriminatorParams disc = DiscriminatorParams::create(3, 3, 2, 3, rng);
    const std::vector<HeteroWalk> supervision{{{0, 2}, {0, 1}, {1}}, {{4, 1}, {0, 0}, {0}}};
    GenerationOptions o;
    o.max_len = 3;
    o.temperature = 1.0;
    o.relaxed_forward = true;
    std::vector<ad::Var> leaves;
    for (const auto& p : gen.params()) leaves.push_back(p.second);
    const auto r = check_gradients(leaves, [&](ad::Tape& t) {
      Rng frozen(seed);
      return generator_loss(t, gen, disc, 3, table, schema, o, supervision, 0.5, frozen);
    });
    EXPECT_LT(r.max_rel_error, 1e-3) << "seed " << seed << " worst " << r.worst;
    EXPECT_GT(r.checked, 50u);
  }
}

TEST(CriticGradient, MatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng rng(200 + seed);
    const std::vector<TypeIndex> types{0, 1, 1};
    const EmbeddingTable table = random_table(types, 2, 2, rng);
    const DiscriminatorParams disc = DiscriminatorParams::create(3, 3, 2, 3, rng);
    const std::vector<HeteroWalk> a{{{0, 1}, {0, 1}, {0}}, {{2, 0, 1}, {1, 0, 1}, {0, 0}}};
    const std::vector<HeteroWalk> b{{{1, 2}, {1, 1}, {0}}};
    const WalkBatch real = encode_walks(a, table, 3, 3);
    const WalkBatch fake = encode_walks(b, table, 3, 3);
    std::vector<ad::Var> leaves;
    for (const auto& p : disc.params()) leaves.push_back(p.second);
    const auto r = check_gradients(leaves, [&](ad::Tape& t) {
      return t.sub(t.mean(score_batch(t, disc, fake)), t.mean(score_batch(t, disc, real)));
    });
    EXPECT_LT(r.max_rel_error, 1e-4) << r.worst;
  }
}

TrainConfig tiny_config() {
  TrainConfig c;
  c.embed_dim = 3;
  c.embed_epochs = 1;
  c.embed_walks_per_node = 2;
  c.noise_dim = 2;
  c.hidden_dim = 4;
  c.encode_dim = 3;
  c.disc_hidden_dim = 4;
  c.batch_size = 4;
  c.n_critic = 2;
  c.steps = 6;
  c.checkpoint_interval = 2;
  c.finalize();
  return c;
}

HetGraph train_fixture() {
  Rng rng(15);
  return testing::random_graph(10, 0.4, 2, rng);
}

TEST(Train, ZeroStepsGivesEmptyLog) {
  TrainConfig c = tiny_config();
  c.steps = 0;
  const TrainedModel m = train(train_fixture(), c);
  EXPECT_TRUE(m.log.empty());
  EXPECT_EQ(m.gen.dims.hidden_dim, 4u);
}

TEST(Train, LogHasOneEntryPerStepAndCallbacksFire) {
  const TrainConfig c = tiny_config();
  std::vector<std::size_t> calls;
  const TrainedModel m = train(train_fixture(), c, [&](const TrainedModel&, std::size_t s) {
    calls.push_back(s);
  });
  ASSERT_EQ(m.log.size(), 6u);
  for (std::size_t i = 0; i < m.log.size(); ++i) {
    EXPECT_EQ(m.log[i].step, i);
    EXPECT_TRUE(std::isfinite(m.log[i].critic_loss));
    EXPECT_TRUE(std::isfinite(m.log[i].generator_loss));
  }
  EXPECT_EQ(calls, (std::vector<std::size_t>{2, 4, 6}));
  EXPECT_LE(max_abs(m.disc.params()), c.clip);
}

TEST(Train, Deterministic) {
  const TrainConfig c = tiny_config();
  const HetGraph g = train_fixture();
  const TrainedModel a = train(g, c);
  const TrainedModel b = train(g, c);
  EXPECT_EQ(snapshot(a.gen.params()), snapshot(b.gen.params()));
  EXPECT_EQ(snapshot(a.disc.params()), snapshot(b.disc.params()));
  EXPECT_EQ(a.table, b.table);
}

TEST(Train, DivergenceCheckpointsBeforeFailing) {
  TrainConfig c = tiny_config();
  // The first RMSprop step is about 3 x lr, which overflows.
  c.generator_lr = 1e308;
  std::vector<std::size_t> calls;
  bool finite = true;
  const auto kind = error_kind([&] {
    train(train_fixture(), c, [&](const TrainedModel& m, std::size_t s) {
      calls.push_back(s);
      for (const auto& p : m.gen.params()) {
        for (double x : p.second->data) finite = finite && std::isfinite(x);
      }
      EXPECT_EQ(m.log.size(), s);
    });
  });
  EXPECT_EQ(kind, ErrorKind::kTraining);
  ASSERT_FALSE(calls.empty());
  EXPECT_LT(calls.back(), c.steps);
  EXPECT_TRUE(finite);
}

TEST(Train, EdgelessGraphRejected) {
  const HetGraph g = testing::plain_graph(3, {});
  EXPECT_EQ(error_kind([&] { train(g, tiny_config()); }), ErrorKind::kSampling);
}

}  // namespace
}  // namespace hetgen
