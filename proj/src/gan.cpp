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

#include "hetgen/gan.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "hetgen/error.hpp"

namespace hetgen {

using ad::Tape;
using ad::Var;

namespace {

constexpr double kMaskedLogit = -1e9;

std::vector<double> one_hot_rows(std::span<const std::size_t> index, std::size_t width) {
  std::vector<double> out(index.size() * width, 0.0);
  for (std::size_t r = 0; r < index.size(); ++r) out[r * width + index[r]] = 1.0;
  return out;
}

// Edge-type logits of g_e evaluated on plain values.
TypeIndex decode_edge_type(const nn::Dense& g_e, std::size_t slots, TypeIndex type_cur,
                           std::span<const double> emb_cur, TypeIndex type_prev,
                           std::span<const double> emb_prev) {
  const std::size_t d = emb_cur.size();
  const std::size_t out = g_e.out_dim();
  const auto& w = g_e.weight->data;
  std::vector<double> logits(g_e.bias->data.begin(), g_e.bias->data.end());
  auto accumulate_row = [&](std::size_t row, double x) {
    if (x == 0.0) return;
    for (std::size_t j = 0; j < out; ++j) logits[j] += x * w[row * out + j];
  };
  accumulate_row(type_cur, 1.0);
  for (std::size_t c = 0; c < d; ++c) accumulate_row(slots + c, emb_cur[c]);
  accumulate_row(slots + d + type_prev, 1.0);
  for (std::size_t c = 0; c < d; ++c) accumulate_row(2 * slots + d + c, emb_prev[c]);
  return static_cast<TypeIndex>(std::max_element(logits.begin(), logits.end()) - logits.begin());
}

struct RowSelection {
  bool differentiable = false;
  std::span<const NodeId> members;
  std::vector<double> weights;
};

// Picks one node per active row and returns its embedding. With
// differentiable rows the gradient reaches `target` through the softmax
// over negative squared distances to the candidates.
Var select_nodes(Tape& tape, const Var& target, const EmbeddingTable& table,
                 std::span<const std::size_t> types, std::span<const bool> active,
                 bool uniform, bool relaxed_forward, Rng& rng, std::vector<NodeId>& chosen) {
  const std::size_t batch = target->rows();
  const std::size_t d = table.dim();
  auto rows = std::make_shared<std::vector<RowSelection>>(batch);
  std::vector<double> out(batch * d, 0.0);
  chosen.assign(batch, 0);
  for (std::size_t b = 0; b < batch; ++b) {
    const double u = rng.uniform();
    if (!active[b]) continue;
    auto members = table.members(static_cast<TypeIndex>(types[b]));
    RowSelection& sel = (*rows)[b];
    sel.members = members;
    double* dst = out.data() + b * d;
    if (uniform) {
      auto pick = std::min(members.size() - 1,
                           static_cast<std::size_t>(u * static_cast<double>(members.size())));
      chosen[b] = members[pick];
      auto v = table.vector(chosen[b]);
      std::copy(v.begin(), v.end(), dst);
      continue;
    }
    sel.differentiable = true;
    const double* query = target->data.data() + b * d;
    sel.weights.resize(members.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < members.size(); ++c) {
      auto v = table.vector(members[c]);
      double dist = 0.0;
      for (std::size_t k = 0; k < d; ++k) dist += (query[k] - v[k]) * (query[k] - v[k]);
      sel.weights[c] = -dist;
      best = std::max(best, -dist);
    }
    double z = 0.0;
    for (double& w : sel.weights) z += (w = std::exp(w - best));
    for (double& w : sel.weights) w /= z;
    double acc = 0.0;
    std::size_t pick = members.size() - 1;
    const double threshold = u;
    for (std::size_t c = 0; c < members.size(); ++c) {
      acc += sel.weights[c];
      if (threshold < acc) {
        pick = c;
        break;
      }
    }
    chosen[b] = members[pick];
    if (relaxed_forward) {
      for (std::size_t c = 0; c < members.size(); ++c) {
        auto v = table.vector(members[c]);
        for (std::size_t k = 0; k < d; ++k) dst[k] += sel.weights[c] * v[k];
      }
    } else {
      auto v = table.vector(chosen[b]);
      std::copy(v.begin(), v.end(), dst);
    }
  }
  ad::Tensor* pt = target.get();
  const EmbeddingTable* tbl = &table;
  return tape.custom({batch, d}, std::move(out), {target}, [rows, pt, tbl, d](const ad::Tensor& o) {
    std::vector<double> gw;
    for (std::size_t b = 0; b < rows->size(); ++b) {
      const RowSelection& sel = (*rows)[b];
      if (!sel.differentiable) continue;
      const double* g = o.grad.data() + b * d;
      gw.assign(sel.members.size(), 0.0);
      double inner = 0.0;
      for (std::size_t c = 0; c < sel.members.size(); ++c) {
        auto v = tbl->vector(sel.members[c]);
        for (std::size_t k = 0; k < d; ++k) gw[c] += g[k] * v[k];
        inner += sel.weights[c] * gw[c];
      }
      const double* query = pt->data.data() + b * d;
      double* gq = pt->grad.data() + b * d;
      for (std::size_t c = 0; c < sel.members.size(); ++c) {
        const double gs = sel.weights[c] * (gw[c] - inner);
        if (gs == 0.0) continue;
        auto v = tbl->vector(sel.members[c]);
        for (std::size_t k = 0; k < d; ++k) gq[k] += -2.0 * gs * (query[k] - v[k]);
      }
    }
  });
}

}  // namespace

GeneratorParams GeneratorParams::create(const GeneratorDims& dims, Rng& rng) {
  if (dims.num_node_types == 0) throw parameter_error("generator needs at least one node type");
  GeneratorParams g;
  g.dims = dims;
  const std::size_t slots = dims.num_node_types + 1;
  g.f0 = nn::Dense::create(dims.noise_dim, dims.hidden_dim, rng);
  g.lstm = nn::LstmParams::create(dims.encode_dim, dims.hidden_dim, rng);
  g.g_o = nn::Dense::create(dims.hidden_dim, slots, rng);
  g.g_v = nn::Dense::create(dims.hidden_dim + slots, dims.embed_dim, rng);
  g.g_c = nn::Dense::create(slots + dims.embed_dim, dims.encode_dim, rng);
  g.g_e = nn::Dense::create(2 * (slots + dims.embed_dim), std::max<std::size_t>(1, dims.num_edge_types), rng);
  return g;
}

nn::ParamList GeneratorParams::params() const {
  nn::ParamList out;
  f0.collect("gen.f0", out);
  lstm.collect("gen.lstm", out);
  g_o.collect("gen.g_o", out);
  g_v.collect("gen.g_v", out);
  g_c.collect("gen.g_c", out);
  g_e.collect("gen.g_e", out);
  return out;
}

DiscriminatorParams DiscriminatorParams::create(std::size_t seq_len, std::size_t type_slots,
                                                std::size_t embed_dim, std::size_t hidden_dim,
                                                Rng& rng) {
  DiscriminatorParams d;
  d.seq_len = seq_len;
  d.type_slots = type_slots;
  d.embed_dim = embed_dim;
  d.type_lstm = nn::LstmParams::create(type_slots, hidden_dim, rng);
  d.type_head = nn::Dense::create(hidden_dim, 1, rng);
  d.node_lstm = nn::LstmParams::create(embed_dim, hidden_dim, rng);
  d.node_head = nn::Dense::create(hidden_dim, 1, rng);
  return d;
}

DiscriminatorParams DiscriminatorParams::zeros(std::size_t seq_len, std::size_t type_slots,
                                               std::size_t embed_dim, std::size_t hidden_dim) {
  DiscriminatorParams d;
  d.seq_len = seq_len;
  d.type_slots = type_slots;
  d.embed_dim = embed_dim;
  d.type_lstm = nn::LstmParams::zeros(type_slots, hidden_dim);
  d.type_head = nn::Dense::zeros(hidden_dim, 1);
  d.node_lstm = nn::LstmParams::zeros(embed_dim, hidden_dim);
  d.node_head = nn::Dense::zeros(hidden_dim, 1);
  return d;
}

nn::ParamList DiscriminatorParams::params() const {
  nn::ParamList out;
  type_lstm.collect("disc.type_lstm", out);
  type_head.collect("disc.type_head", out);
  node_lstm.collect("disc.node_lstm", out);
  node_head.collect("disc.node_head", out);
  return out;
}

WalkBatch run_generator(Tape& tape, const GeneratorParams& gen, const EmbeddingTable& table,
                        const TypeSchema& schema, std::size_t batch,
                        const GenerationOptions& options, Rng& rng) {
  const std::size_t k = gen.dims.num_node_types;
  const std::size_t slots = k + 1;
  const std::size_t d = gen.dims.embed_dim;
  const std::size_t len = options.max_len;
  if (len < 2) throw parameter_error("max_len must be at least 2 nodes");
  if (batch == 0) throw parameter_error("batch must be at least 1");
  if (!(options.temperature > 0.0)) throw parameter_error("temperature must be positive");
  if (table.num_types() != k || table.dim() != d) {
    throw integrity_error("embedding table does not match the generator dimensions");
  }
  const TypeIndex eos = static_cast<TypeIndex>(k);

  std::vector<double> z(batch * gen.dims.noise_dim);
  for (double& x : z) x = rng.normal();
  nn::LstmState state{tape.tanh(gen.f0.forward(tape, tape.constant({batch, gen.dims.noise_dim}, z))),
                      ad::zeros({batch, gen.dims.hidden_dim})};
  Var input = ad::zeros({batch, gen.dims.encode_dim});

  WalkBatch out;
  out.walks.resize(batch);
  std::vector<bool> alive(batch, true);
  std::vector<double> eos_pad(batch * slots, 0.0);
  std::vector<TypeIndex> prev_type(batch, eos);
  std::vector<NodeId> prev_node(batch, 0);

  for (std::size_t t = 0; t < len; ++t) {
    if (std::none_of(alive.begin(), alive.end(), [](bool a) { return a; })) {
      std::vector<double> pad(batch * slots, 0.0);
      for (std::size_t b = 0; b < batch; ++b) pad[b * slots + eos] = 1.0;
      out.type_inputs.push_back(tape.constant({batch, slots}, std::move(pad)));
      out.node_inputs.push_back(ad::zeros({batch, d}));
      continue;
    }
    state = nn::lstm_step(tape, gen.lstm, state, input);
    Var logits = gen.g_o.forward(tape, state.h);

    std::vector<double> mask(batch * slots, 0.0);
    for (std::size_t b = 0; b < batch; ++b) {
      if (t < 2) mask[b * slots + eos] = kMaskedLogit;
      if (options.force_eos_at_step && *options.force_eos_at_step == t) {
        for (std::size_t j = 0; j < k; ++j) mask[b * slots + j] = kMaskedLogit;
        mask[b * slots + eos] = 0.0;
      }
    }
    logits = tape.add(logits, tape.constant({batch, slots}, mask));

    std::vector<double> noise = nn::gumbel_noise(batch * slots, rng);
    for (std::size_t b = 0; b < batch; ++b) {
      if (!alive[b]) continue;
      for (std::size_t attempt = 0;; ++attempt) {
        const double* lg = logits->data.data() + b * slots;
        const double* g = noise.data() + b * slots;
        std::size_t best = 0;
        for (std::size_t j = 1; j < slots; ++j) {
          if (lg[j] + g[j] > lg[best] + g[best]) best = j;
        }
        if (best == eos || !table.members(static_cast<TypeIndex>(best)).empty()) break;
        if (attempt >= options.max_type_resamples) {
          throw generation_error("sampled node type " + std::to_string(best) +
                                 " has no member nodes");
        }
        auto fresh = nn::gumbel_noise(slots, rng);
        std::copy(fresh.begin(), fresh.end(), noise.begin() + static_cast<std::ptrdiff_t>(b * slots));
      }
    }
    nn::GumbelSample sample = nn::gumbel_softmax(tape, logits, options.temperature, noise);
    Var type_in = options.relaxed_forward ? sample.relaxed : sample.straight_through;

    bool any_dead = false;
    std::vector<double> alive_col(batch, 1.0);
    std::vector<double> pad(batch * slots, 0.0);
    for (std::size_t b = 0; b < batch; ++b) {
      if (!alive[b]) {
        any_dead = true;
        alive_col[b] = 0.0;
        pad[b * slots + eos] = 1.0;
      }
    }
    if (any_dead) {
      type_in = tape.add(tape.mul(type_in, tape.constant({batch, 1}, alive_col)),
                         tape.constant({batch, slots}, pad));
    }

    std::vector<bool> active(batch, false);
    for (std::size_t b = 0; b < batch; ++b) active[b] = alive[b] && sample.hard[b] != eos;
    const Var vt_parts[] = {state.h, type_in};
    Var target = gen.g_v.forward(tape, tape.concat(vt_parts));
    std::vector<NodeId> chosen;
    // std::vector<bool> has no contiguous storage; copy into a plain array.
    std::unique_ptr<bool[]> active_flags(new bool[batch]);
    for (std::size_t b = 0; b < batch; ++b) active_flags[b] = active[b];
    Var node_emb = select_nodes(tape, target, table, sample.hard,
                                std::span<const bool>(active_flags.get(), batch),
                                options.uniform_node_sampling, options.relaxed_forward, rng, chosen);

    for (std::size_t b = 0; b < batch; ++b) {
      if (!alive[b]) continue;
      if (!active[b]) {
        alive[b] = false;
        continue;
      }
      HeteroWalk& w = out.walks[b];
      const auto type = static_cast<TypeIndex>(sample.hard[b]);
      if (!w.nodes.empty()) {
        std::optional<TypeIndex> et = schema.rule_edge_type(prev_type[b], type);
        if (!et) {
          et = decode_edge_type(gen.g_e, slots, type, table.vector(chosen[b]), prev_type[b],
                                table.vector(prev_node[b]));
        }
        w.edge_types.push_back(*et);
      }
      w.nodes.push_back(chosen[b]);
      w.types.push_back(type);
      prev_type[b] = type;
      prev_node[b] = chosen[b];
    }

    const Var enc_parts[] = {type_in, node_emb};
    input = tape.tanh(gen.g_c.forward(tape, tape.concat(enc_parts)));
    out.type_inputs.push_back(type_in);
    out.node_inputs.push_back(node_emb);
  }
  return out;
}

HeteroWalk generate_walk(const GeneratorParams& gen, const EmbeddingTable& table,
                         const TypeSchema& schema, const GenerationOptions& options, Rng& rng) {
  Tape tape(false);
  return std::move(run_generator(tape, gen, table, schema, 1, options, rng).walks.front());
}

std::vector<HeteroWalk> generate_walks(const GeneratorParams& gen, const EmbeddingTable& table,
                                       const TypeSchema& schema, std::size_t count,
                                       const GenerationOptions& options, Rng& rng) {
  constexpr std::size_t kChunk = 256;
  std::vector<HeteroWalk> walks;
  walks.reserve(count);
  while (walks.size() < count) {
    const std::size_t n = std::min(kChunk, count - walks.size());
    Tape tape(false);
    auto batch = run_generator(tape, gen, table, schema, n, options, rng);
    for (auto& w : batch.walks) walks.push_back(std::move(w));
  }
  return walks;
}

WalkBatch encode_walks(std::span<const HeteroWalk> walks, const EmbeddingTable& table,
                       std::size_t seq_len, std::size_t type_slots) {
  const std::size_t batch = walks.size();
  const std::size_t d = table.dim();
  const std::size_t eos = type_slots - 1;
  WalkBatch out;
  out.walks.assign(walks.begin(), walks.end());
  for (const HeteroWalk& w : walks) {
    check_well_formed(w);
    if (w.nodes.size() > seq_len) {
      throw contract_error("walk of " + std::to_string(w.nodes.size()) +
                           " nodes exceeds sequence length " + std::to_string(seq_len));
    }
  }
  for (std::size_t t = 0; t < seq_len; ++t) {
    std::vector<std::size_t> idx(batch, eos);
    std::vector<double> emb(batch * d, 0.0);
    for (std::size_t b = 0; b < batch; ++b) {
      const HeteroWalk& w = walks[b];
      if (t >= w.nodes.size()) continue;
      if (w.types[t] >= eos) throw contract_error("walk type out of range");
      idx[b] = w.types[t];
      auto v = table.vector(w.nodes[t]);
      std::copy(v.begin(), v.end(), emb.begin() + static_cast<std::ptrdiff_t>(b * d));
    }
    out.type_inputs.push_back(ad::make_tensor({batch, type_slots}, one_hot_rows(idx, type_slots)));
    out.node_inputs.push_back(ad::make_tensor({batch, d}, std::move(emb)));
  }
  return out;
}

Var score_batch(Tape& tape, const DiscriminatorParams& disc, const WalkBatch& batch) {
  if (batch.type_inputs.size() != disc.seq_len || batch.node_inputs.size() != disc.seq_len) {
    throw shape_error("discriminator expects " + std::to_string(disc.seq_len) + " steps");
  }
  const std::size_t rows = batch.type_inputs.front()->rows();
  nn::LstmState types = nn::zero_state(rows, disc.type_lstm.hidden_dim);
  nn::LstmState nodes = nn::zero_state(rows, disc.node_lstm.hidden_dim);
  for (std::size_t t = 0; t < disc.seq_len; ++t) {
    types = nn::lstm_step(tape, disc.type_lstm, types, batch.type_inputs[t]);
    nodes = nn::lstm_step(tape, disc.node_lstm, nodes, batch.node_inputs[t]);
  }
  return tape.add(disc.type_head.forward(tape, types.h), disc.node_head.forward(tape, nodes.h));
}

double score_walk(const DiscriminatorParams& disc, const HeteroWalk& walk,
                  const EmbeddingTable& table) {
  check_well_formed(walk);
  if (walk.nodes.size() < 2) throw contract_error("scoring needs a walk of at least 2 nodes");
  Tape tape(false);
  const HeteroWalk one[] = {walk};
  return score_batch(tape, disc, encode_walks(one, table, disc.seq_len, disc.type_slots))->item();
}

double critic_step(const GeneratorParams& gen, DiscriminatorParams& disc,
                   std::span<const HeteroWalk> real_batch, const EmbeddingTable& table,
                   const TypeSchema& schema, double clip, double lr,
                   const GenerationOptions& options, TrainerState& state, Rng& rng) {
  if (real_batch.empty()) throw parameter_error("critic step needs a non-empty real batch");
  if (!(clip > 0.0)) throw parameter_error("clip must be positive");
  WalkBatch fake;
  {
    Tape no_grad(false);
    fake = run_generator(no_grad, gen, table, schema, real_batch.size(), options, rng);
  }
  const WalkBatch real = encode_walks(real_batch, table, disc.seq_len, disc.type_slots);

  Tape tape;
  Var loss = tape.sub(tape.mean(score_batch(tape, disc, fake)),
                      tape.mean(score_batch(tape, disc, real)));
  const double value = loss->item();
  if (!std::isfinite(value)) throw training_error("critic loss is not finite");
  const nn::ParamList params = disc.params();
  nn::zero_grads(params);
  tape.backward(loss);
  state.critic_opt.step(params, lr);
  nn::clip_values(params, clip);
  return value;
}

Var generator_loss(Tape& tape, const GeneratorParams& gen, const DiscriminatorParams& disc,
                   std::size_t batch_size, const EmbeddingTable& table, const TypeSchema& schema,
                   const GenerationOptions& options, std::span<const HeteroWalk> edge_supervision,
                   double edge_loss_weight, Rng& rng) {
  if (batch_size == 0) throw parameter_error("batch_size must be at least 1");
  WalkBatch fake = run_generator(tape, gen, table, schema, batch_size, options, rng);
  Var loss = tape.scale(tape.mean(score_batch(tape, disc, fake)), -1.0);
  if (schema.edge_type_rule() || edge_supervision.empty() || edge_loss_weight <= 0.0) return loss;

  const std::size_t slots = gen.type_slots();
  const std::size_t d = table.dim();
  const std::size_t width = 2 * (slots + d);
  std::vector<double> x;
  std::vector<std::size_t> target;
  for (const HeteroWalk& w : edge_supervision) {
    check_well_formed(w);
    for (std::size_t i = 0; i + 1 < w.nodes.size(); ++i) {
      std::vector<double> row(width, 0.0);
      row[w.types[i + 1]] = 1.0;
      auto cur = table.vector(w.nodes[i + 1]);
      std::copy(cur.begin(), cur.end(), row.begin() + static_cast<std::ptrdiff_t>(slots));
      row[slots + d + w.types[i]] = 1.0;
      auto prev = table.vector(w.nodes[i]);
      std::copy(prev.begin(), prev.end(), row.begin() + static_cast<std::ptrdiff_t>(2 * slots + d));
      x.insert(x.end(), row.begin(), row.end());
      target.push_back(w.edge_types[i]);
    }
  }
  if (target.empty()) return loss;
  Var features = tape.constant({target.size(), width}, std::move(x));
  Var logp = tape.log_softmax(gen.g_e.forward(tape, features));
  Var ce = tape.scale(tape.mean(tape.pick(logp, target)), -edge_loss_weight);
  return tape.add(loss, ce);
}

double generator_step(GeneratorParams& gen, const DiscriminatorParams& disc,
                      std::size_t batch_size, const EmbeddingTable& table,
                      const TypeSchema& schema, double lr, const GenerationOptions& options,
                      std::span<const HeteroWalk> edge_supervision, double edge_loss_weight,
                      TrainerState& state, Rng& rng) {
  Tape tape;
  Var loss = generator_loss(tape, gen, disc, batch_size, table, schema, options,
                            edge_supervision, edge_loss_weight, rng);
  const double value = loss->item();
  if (!std::isfinite(value)) throw training_error("generator loss is not finite");
  const nn::ParamList params = gen.params();
  nn::zero_grads(params);
  nn::zero_grads(disc.params());
  tape.backward(loss);
  state.generator_opt.step(params, lr);
  return value;
}

GenerationOptions generation_options(const TrainConfig& config) {
  GenerationOptions o;
  o.max_len = config.max_len;
  o.temperature = config.temperature;
  o.uniform_node_sampling = config.uniform_node_sampling;
  o.max_type_resamples = config.max_type_resamples;
  return o;
}

EmbeddingTable train_graph_embeddings(const HetGraph& graph, const TrainConfig& config) {
  std::size_t active = 0;
  for (NodeId n = 0; n < graph.num_nodes(); ++n) active += graph.degree(n) > 0 ? 1 : 0;
  Rng corpus_rng(derive_seed(config.seed, kStreamEmbedCorpus));
  auto corpus = sample_corpus(graph, config.embed_walks_per_node * active,
                              {config.embed_walk_length}, corpus_rng);
  EmbedParams p;
  p.dim = config.embed_dim;
  p.window = config.embed_window;
  p.negatives = config.embed_negatives;
  p.epochs = config.embed_epochs;
  p.lr = config.embed_lr;
  Rng train_rng(derive_seed(config.seed, kStreamEmbedTrain));
  EmbeddingTable table = train_embeddings(corpus, graph, p, train_rng);
  if (config.embed_radius > 0.0) return normalize_rows(table, config.embed_radius);
  return table;
}

namespace {

void train_one_step(TrainedModel& model, const HetGraph& graph, const TrainConfig& config,
                    const GenerationOptions& options, bool edge_aux, TrainerState& state,
                    Rng& rng, std::size_t step) {
  const TypeSchema& schema = graph.schema();
  double critic_loss = 0.0;
  for (std::size_t c = 0; c < config.n_critic; ++c) {
    auto real = sample_corpus(graph, config.batch_size, config.walk_lengths, rng);
    critic_loss = critic_step(model.gen, model.disc, real, model.table, schema, config.clip,
                              config.critic_lr, options, state, rng);
  }
  std::vector<HeteroWalk> supervision;
  if (edge_aux) supervision = sample_corpus(graph, config.batch_size, config.walk_lengths, rng);
  const double gen_loss =
      generator_step(model.gen, model.disc, config.batch_size, model.table, schema,
                     config.generator_lr, options, supervision, config.edge_loss_weight, state,
                     rng);
  model.log.push_back({step, critic_loss, gen_loss});
}

std::vector<std::vector<double>> snapshot_params(const TrainedModel& model) {
  std::vector<std::vector<double>> out;
  for (const auto& p : model.gen.params()) out.push_back(p.second->data);
  for (const auto& p : model.disc.params()) out.push_back(p.second->data);
  return out;
}

void restore_params(TrainedModel& model, const std::vector<std::vector<double>>& saved) {
  std::size_t i = 0;
  for (const auto& p : model.gen.params()) p.second->data = saved[i++];
  for (const auto& p : model.disc.params()) p.second->data = saved[i++];
}

bool params_finite(const TrainedModel& model) {
  auto finite = [](const nn::ParamList& params) {
    for (const auto& p : params) {
      for (double x : p.second->data) {
        if (!std::isfinite(x)) return false;
      }
    }
    return true;
  };
  return finite(model.gen.params()) && finite(model.disc.params());
}

}  // namespace

TrainedModel train(const HetGraph& graph, const TrainConfig& config,
                   const CheckpointFn& on_checkpoint) {
  config.validate();
  if (graph.num_edges() == 0) throw sampling_error("training graph has no edges");
  const TypeSchema& schema = graph.schema();

  TrainedModel model;
  model.table = train_graph_embeddings(graph, config);

  GeneratorDims dims;
  dims.num_node_types = schema.num_node_types();
  dims.num_edge_types = schema.num_edge_types();
  dims.noise_dim = config.noise_dim;
  dims.hidden_dim = config.hidden_dim;
  dims.encode_dim = config.encode_dim;
  dims.embed_dim = config.embed_dim;
  Rng init_rng(derive_seed(config.seed, kStreamInit));
  model.gen = GeneratorParams::create(dims, init_rng);
  model.disc = DiscriminatorParams::create(config.max_len, dims.num_node_types + 1,
                                           config.embed_dim, config.disc_hidden_dim, init_rng);

  const GenerationOptions options = generation_options(config);
  const bool edge_aux = !schema.edge_type_rule().has_value();
  TrainerState state(config.rms_decay);
  Rng rng(derive_seed(config.seed, kStreamTrain));
  model.log.reserve(config.steps);
  std::size_t step = 0;
  try {
    for (; step < config.steps; ++step) {
      const auto before = snapshot_params(model);
      train_one_step(model, graph, config, options, edge_aux, state, rng, step);
      if (!params_finite(model)) {
        restore_params(model, before);
        model.log.resize(step);
        throw training_error("parameters diverged at step " + std::to_string(step + 1));
      }
      if (on_checkpoint && (step + 1) % config.checkpoint_interval == 0) {
        on_checkpoint(model, step + 1);
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kTraining && on_checkpoint) on_checkpoint(model, step);
    throw;
  }
  return model;
}

}  // namespace hetgen
