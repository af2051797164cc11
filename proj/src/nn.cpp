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

#include "hetgen/nn.hpp"

#include <algorithm>
#include <cmath>

#include "hetgen/error.hpp"

namespace hetgen::nn {

namespace {

Var glorot(std::size_t in, std::size_t out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
  std::vector<double> w(in * out);
  for (double& x : w) x = (rng.uniform() * 2.0 - 1.0) * limit;
  return ad::make_tensor({in, out}, std::move(w), true);
}

}  // namespace

Dense Dense::create(std::size_t in, std::size_t out, Rng& rng) {
  return {glorot(in, out, rng), ad::zeros({1, out}, true)};
}

Dense Dense::zeros(std::size_t in, std::size_t out) {
  return {ad::zeros({in, out}, true), ad::zeros({1, out}, true)};
}

Var Dense::forward(Tape& tape, const Var& x) const {
  return tape.add(tape.matmul(x, weight), bias);
}

void Dense::collect(const std::string& prefix, ParamList& out) const {
  out.emplace_back(prefix + ".weight", weight);
  out.emplace_back(prefix + ".bias", bias);
}

LstmParams LstmParams::create(std::size_t input_dim, std::size_t hidden_dim, Rng& rng) {
  LstmParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  p.weight = glorot(input_dim + hidden_dim, 4 * hidden_dim, rng);
  std::vector<double> bias(4 * hidden_dim, 0.0);
  // Forget gate starts open.
  std::fill(bias.begin() + static_cast<std::ptrdiff_t>(hidden_dim),
            bias.begin() + static_cast<std::ptrdiff_t>(2 * hidden_dim), 1.0);
  p.bias = ad::make_tensor({1, 4 * hidden_dim}, std::move(bias), true);
  return p;
}

LstmParams LstmParams::zeros(std::size_t input_dim, std::size_t hidden_dim) {
  LstmParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  p.weight = ad::zeros({input_dim + hidden_dim, 4 * hidden_dim}, true);
  p.bias = ad::zeros({1, 4 * hidden_dim}, true);
  return p;
}

void LstmParams::collect(const std::string& prefix, ParamList& out) const {
  out.emplace_back(prefix + ".weight", weight);
  out.emplace_back(prefix + ".bias", bias);
}

LstmState zero_state(std::size_t batch, std::size_t hidden_dim) {
  return {ad::zeros({batch, hidden_dim}), ad::zeros({batch, hidden_dim})};
}

LstmState lstm_step(Tape& tape, const LstmParams& params, const LstmState& prev, const Var& input) {
  const std::size_t h = params.hidden_dim;
  if (input->cols() != params.input_dim || prev.h->cols() != h || prev.m->cols() != h ||
      prev.m->rows() != input->rows() || prev.h->rows() != input->rows()) {
    throw shape_error("lstm_step: input " + ad::shape_string(input->shape) + ", state " +
                      ad::shape_string(prev.m->shape) + " for input_dim " +
                      std::to_string(params.input_dim) + ", hidden_dim " + std::to_string(h));
  }
  const Var parts[] = {input, prev.h};
  Var gates = tape.add(tape.matmul(tape.concat(parts), params.weight), params.bias);
  Var in_gate = tape.sigmoid(tape.slice_cols(gates, 0, h));
  Var forget_gate = tape.sigmoid(tape.slice_cols(gates, h, 2 * h));
  Var candidate = tape.tanh(tape.slice_cols(gates, 2 * h, 3 * h));
  Var out_gate = tape.sigmoid(tape.slice_cols(gates, 3 * h, 4 * h));
  Var m = tape.add(tape.mul(forget_gate, prev.m), tape.mul(in_gate, candidate));
  Var hidden = tape.mul(out_gate, tape.tanh(m));
  return {m, hidden};
}

std::vector<double> gumbel_noise(std::size_t n, Rng& rng) {
  std::vector<double> g(n);
  for (double& x : g) x = -std::log(-std::log(rng.uniform_open()));
  return g;
}

GumbelSample gumbel_softmax(Tape& tape, const Var& logits, double temperature, Rng& rng) {
  if (!(temperature > 0.0)) throw parameter_error("gumbel temperature must be positive");
  return gumbel_softmax(tape, logits, temperature, gumbel_noise(logits->size(), rng));
}

GumbelSample gumbel_softmax(Tape& tape, const Var& logits, double temperature,
                            const std::vector<double>& noise) {
  if (!(temperature > 0.0)) throw parameter_error("gumbel temperature must be positive");
  if (noise.size() != logits->size()) throw shape_error("gumbel noise does not match logits");
  Var perturbed = tape.add(logits, tape.constant(logits->shape, noise));
  Var relaxed = tape.softmax(tape.scale(perturbed, 1.0 / temperature));
  const std::size_t rows = relaxed->rows(), cols = relaxed->cols();
  std::vector<std::size_t> hard(rows);
  std::vector<double> one_hot(relaxed->size(), 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = relaxed->data.data() + r * cols;
    hard[r] = static_cast<std::size_t>(std::max_element(row, row + cols) - row);
    one_hot[r * cols + hard[r]] = 1.0;
  }
  Var st = tape.straight_through(std::move(one_hot), relaxed);
  return {relaxed, std::move(hard), st};
}

void RmsProp::step(const ParamList& params, double lr) {
  if (square_.size() != params.size()) {
    square_.clear();
    for (const auto& [name, p] : params) square_.emplace_back(p->size(), 0.0);
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    ad::Tensor& p = *params[k].second;
    if (p.grad.size() != p.data.size()) continue;
    auto& s = square_[k];
    for (std::size_t i = 0; i < p.data.size(); ++i) {
      const double g = p.grad[i];
      s[i] = decay_ * s[i] + (1.0 - decay_) * g * g;
      p.data[i] -= lr * g / (std::sqrt(s[i]) + eps_);
    }
  }
}

void zero_grads(const ParamList& params) {
  for (const auto& [name, p] : params) p->zero_grad();
}

void clip_values(const ParamList& params, double bound) {
  for (const auto& [name, p] : params) {
    for (double& x : p->data) x = std::clamp(x, -bound, bound);
  }
}

double max_abs_value(const ParamList& params) {
  double m = 0.0;
  for (const auto& [name, p] : params) {
    for (double x : p->data) m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace hetgen::nn
