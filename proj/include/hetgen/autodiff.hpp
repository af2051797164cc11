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

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hetgen::ad {

using Shape = std::vector<std::size_t>;

std::string shape_string(const Shape& shape);
std::size_t shape_size(const Shape& shape);

/// Dense row-major array of doubles with an optional gradient buffer.
/// Rank-1 tensors behave as a single row; rank-0 tensors are scalars.
struct Tensor {
  Shape shape;
  std::vector<double> data;
  bool requires_grad = false;
  std::vector<double> grad;

  std::size_t size() const { return data.size(); }
  std::size_t rows() const { return shape.size() >= 2 ? shape[shape.size() - 2] : 1; }
  std::size_t cols() const { return shape.empty() ? 1 : shape.back(); }
  double at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }
  double item() const { return data.at(0); }

  void ensure_grad() {
    if (grad.size() != data.size()) grad.assign(data.size(), 0.0);
  }
  void zero_grad() { grad.assign(data.size(), 0.0); }
};

using Var = std::shared_ptr<Tensor>;

Var make_tensor(Shape shape, std::vector<double> data, bool requires_grad = false);
Var zeros(Shape shape, bool requires_grad = false);

/// Define-by-run recording of executed operations. Ops are recorded only
/// when gradients are enabled and some input requires a gradient; backward
/// replays them in exact reverse order.
class Tape {
 public:
  explicit Tape(bool grad_enabled = true) : grad_enabled_(grad_enabled) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool grad_enabled() const { return grad_enabled_; }
  std::size_t num_ops() const { return ops_.size(); }

  Var constant(Shape shape, std::vector<double> data) {
    return make_tensor(std::move(shape), std::move(data));
  }

  Var matmul(const Var& a, const Var& b);
  /// `b` may match `a`, be a 1 x cols row, a rows x 1 column, or a scalar.
  Var add(const Var& a, const Var& b);
  Var sub(const Var& a, const Var& b);
  Var mul(const Var& a, const Var& b);
  Var scale(const Var& a, double s);
  Var add_scalar(const Var& a, double s);
  /// Concatenates along the last axis; all inputs share the row count.
  Var concat(std::span<const Var> parts);
  Var slice_cols(const Var& a, std::size_t begin, std::size_t end);
  Var tanh(const Var& a);
  Var sigmoid(const Var& a);
  /// Row-wise.
  Var softmax(const Var& a);
  Var log_softmax(const Var& a);
  Var sum(const Var& a);
  Var mean(const Var& a);
  Var dot(const Var& a, const Var& b) { return sum(mul(a, b)); }
  /// out[r] = a[r, index[r]], shape rows x 1.
  Var pick(const Var& a, std::span<const std::size_t> index);
  /// Value of `hard`, gradient routed unchanged into `relaxed`.
  Var straight_through(std::vector<double> hard, const Var& relaxed);

  using BackwardFn = std::function<void(const Tensor& out)>;
  /// Records a user-defined op. `backward` reads out.grad and accumulates
  /// into the inputs' grad buffers (already sized when they require grad).
  Var custom(Shape shape, std::vector<double> data, std::vector<Var> inputs, BackwardFn backward);

  /// Seeds d(loss)/d(loss) = 1 and propagates to every requires_grad input.
  /// Leaf gradients accumulate across calls.
  void backward(const Var& loss);

 private:
  struct Op {
    std::vector<Var> inputs;
    Var output;
    BackwardFn backward;
  };

  Var record(Shape shape, std::vector<double> data, std::vector<Var> inputs, BackwardFn backward);

  bool grad_enabled_;
  std::vector<Op> ops_;
};

}  // namespace hetgen::ad
