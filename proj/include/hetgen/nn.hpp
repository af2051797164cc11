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

#include <string>
#include <utility>
#include <vector>

#include "hetgen/autodiff.hpp"
#include "hetgen/rng.hpp"

namespace hetgen::nn {

using ad::Tape;
using ad::Var;

/// Named trainable tensors, in a fixed order used by checkpoints and optimizers.
using ParamList = std::vector<std::pair<std::string, Var>>;

/// y = x W + b, W is in x out.
struct Dense {
  Var weight;
  Var bias;

  static Dense create(std::size_t in, std::size_t out, Rng& rng);
  static Dense zeros(std::size_t in, std::size_t out);

  std::size_t in_dim() const { return weight->rows(); }
  std::size_t out_dim() const { return weight->cols(); }
  Var forward(Tape& tape, const Var& x) const;
  void collect(const std::string& prefix, ParamList& out) const;
};

/// Gate weights over [input, h_prev], packed as input | forget | candidate | output.
struct LstmParams {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  Var weight;  // (input_dim + hidden_dim) x 4*hidden_dim
  Var bias;    // 1 x 4*hidden_dim

  static LstmParams create(std::size_t input_dim, std::size_t hidden_dim, Rng& rng);
  static LstmParams zeros(std::size_t input_dim, std::size_t hidden_dim);
  void collect(const std::string& prefix, ParamList& out) const;
};

/// m is the cell memory, h the hidden output.
struct LstmState {
  Var m;
  Var h;
};

LstmState zero_state(std::size_t batch, std::size_t hidden_dim);

LstmState lstm_step(Tape& tape, const LstmParams& params, const LstmState& prev, const Var& input);

struct GumbelSample {
  Var relaxed;                    // softmax((logits + g) / temperature), row-wise
  std::vector<std::size_t> hard;  // argmax of each relaxed row
  Var straight_through;           // one-hot of hard forward, gradient of relaxed backward
};

/// Draws standard Gumbel noise of the given shape.
std::vector<double> gumbel_noise(std::size_t n, Rng& rng);

GumbelSample gumbel_softmax(Tape& tape, const Var& logits, double temperature, Rng& rng);
/// Same with caller-provided noise, used to freeze the sample for gradient checks.
GumbelSample gumbel_softmax(Tape& tape, const Var& logits, double temperature,
                            const std::vector<double>& noise);

/// Per-parameter adaptive step: s = decay*s + (1-decay)*g^2, p -= lr*g/(sqrt(s)+eps).
class RmsProp {
 public:
  explicit RmsProp(double decay = 0.9, double eps = 1e-8) : decay_(decay), eps_(eps) {}

  void step(const ParamList& params, double lr);

 private:
  double decay_;
  double eps_;
  std::vector<std::vector<double>> square_;
};

void zero_grads(const ParamList& params);
/// Clamps every value into [-bound, bound].
void clip_values(const ParamList& params, double bound);
double max_abs_value(const ParamList& params);

}  // namespace hetgen::nn
