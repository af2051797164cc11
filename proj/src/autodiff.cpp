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

#include "hetgen/autodiff.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "hetgen/error.hpp"

namespace hetgen::ad {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;
using MutMap = Eigen::Map<RowMajor>;

enum class Broadcast { kSame, kRow, kCol, kScalar };

Broadcast broadcast_mode(const char* op, const Tensor& a, const Tensor& b) {
  if (b.shape == a.shape) return Broadcast::kSame;
  if (b.size() == 1) return Broadcast::kScalar;
  if (b.rows() == 1 && b.cols() == a.cols() && b.size() == a.cols()) return Broadcast::kRow;
  if (b.cols() == 1 && b.rows() == a.rows() && b.size() == a.rows()) return Broadcast::kCol;
  throw shape_error(std::string(op) + ": incompatible shapes " + shape_string(a.shape) + " and " +
                    shape_string(b.shape));
}

inline std::size_t b_index(Broadcast mode, std::size_t i, std::size_t cols) {
  switch (mode) {
    case Broadcast::kSame: return i;
    case Broadcast::kRow: return i % cols;
    case Broadcast::kCol: return i / cols;
    case Broadcast::kScalar: return 0;
  }
  return 0;
}

}  // namespace

std::string shape_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += "x";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

Var make_tensor(Shape shape, std::vector<double> data, bool requires_grad) {
  if (shape_size(shape) != data.size()) {
    throw shape_error("tensor shape " + shape_string(shape) + " does not hold " +
                      std::to_string(data.size()) + " values");
  }
  auto t = std::make_shared<Tensor>();
  t->shape = std::move(shape);
  t->data = std::move(data);
  t->requires_grad = requires_grad;
  return t;
}

Var zeros(Shape shape, bool requires_grad) {
  const std::size_t n = shape_size(shape);
  return make_tensor(std::move(shape), std::vector<double>(n, 0.0), requires_grad);
}

Var Tape::record(Shape shape, std::vector<double> data, std::vector<Var> inputs,
                 BackwardFn backward) {
  Var out = make_tensor(std::move(shape), std::move(data));
  if (!grad_enabled_) return out;
  const bool needs = std::any_of(inputs.begin(), inputs.end(),
                                 [](const Var& v) { return v->requires_grad; });
  if (!needs) return out;
  out->requires_grad = true;
  ops_.push_back({std::move(inputs), out, std::move(backward)});
  return out;
}

Var Tape::custom(Shape shape, std::vector<double> data, std::vector<Var> inputs,
                 BackwardFn backward) {
  return record(std::move(shape), std::move(data), std::move(inputs), std::move(backward));
}

Var Tape::matmul(const Var& a, const Var& b) {
  if (a->shape.size() > 2 || b->shape.size() > 2 || a->cols() != b->rows()) {
    throw shape_error("matmul: incompatible shapes " + shape_string(a->shape) + " and " +
                      shape_string(b->shape));
  }
  const std::size_t m = a->rows(), k = a->cols(), n = b->cols();
  std::vector<double> out(m * n);
  MutMap(out.data(), m, n).noalias() = ConstMap(a->data.data(), m, k) * ConstMap(b->data.data(), k, n);
  Tensor* pa = a.get();
  Tensor* pb = b.get();
  return record({m, n}, std::move(out), {a, b}, [pa, pb, m, k, n](const Tensor& o) {
    ConstMap g(o.grad.data(), m, n);
    if (pa->requires_grad) {
      MutMap(pa->grad.data(), m, k).noalias() += g * ConstMap(pb->data.data(), k, n).transpose();
    }
    if (pb->requires_grad) {
      MutMap(pb->grad.data(), k, n).noalias() += ConstMap(pa->data.data(), m, k).transpose() * g;
    }
  });
}

Var Tape::add(const Var& a, const Var& b) {
  const Broadcast mode = broadcast_mode("add", *a, *b);
  const std::size_t cols = a->cols();
  std::vector<double> out(a->data);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b->data[b_index(mode, i, cols)];
  Tensor* pa = a.get();
  Tensor* pb = b.get();
  return record(a->shape, std::move(out), {a, b}, [pa, pb, mode, cols](const Tensor& o) {
    if (pa->requires_grad) {
      for (std::size_t i = 0; i < o.grad.size(); ++i) pa->grad[i] += o.grad[i];
    }
    if (pb->requires_grad) {
      for (std::size_t i = 0; i < o.grad.size(); ++i) pb->grad[b_index(mode, i, cols)] += o.grad[i];
    }
  });
}

Var Tape::sub(const Var& a, const Var& b) {
  const Broadcast mode = broadcast_mode("sub", *a, *b);
  const std::size_t cols = a->cols();
  std::vector<double> out(a->data);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b->data[b_index(mode, i, cols)];
  Tensor* pa = a.get();
  Tensor* pb = b.get();
  return record(a->shape, std::move(out), {a, b}, [pa, pb, mode, cols](const Tensor& o) {
    if (pa->requires_grad) {
      for (std::size_t i = 0; i < o.grad.size(); ++i) pa->grad[i] += o.grad[i];
    }
    if (pb->requires_grad) {
      for (std::size_t i = 0; i < o.grad.size(); ++i) pb->grad[b_index(mode, i, cols)] -= o.grad[i];
    }
  });
}

Var Tape::mul(const Var& a, const Var& b) {
  const Broadcast mode = broadcast_mode("mul", *a, *b);
  const std::size_t cols = a->cols();
  std::vector<double> out(a->data);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b->data[b_index(mode, i, cols)];
  Tensor* pa = a.get();
  Tensor* pb = b.get();
  return record(a->shape, std::move(out), {a, b}, [pa, pb, mode, cols](const Tensor& o) {
    for (std::size_t i = 0; i < o.grad.size(); ++i) {
      const std::size_t j = b_index(mode, i, cols);
      if (pa->requires_grad) pa->grad[i] += o.grad[i] * pb->data[j];
      if (pb->requires_grad) pb->grad[j] += o.grad[i] * pa->data[i];
    }
  });
}

Var Tape::scale(const Var& a, double s) {
  std::vector<double> out(a->data);
  for (double& x : out) x *= s;
  Tensor* pa = a.get();
  return record(a->shape, std::move(out), {a}, [pa, s](const Tensor& o) {
    for (std::size_t i = 0; i < o.grad.size(); ++i) pa->grad[i] += s * o.grad[i];
  });
}

Var Tape::add_scalar(const Var& a, double s) {
  std::vector<double> out(a->data);
  for (double& x : out) x += s;
  Tensor* pa = a.get();
  return record(a->shape, std::move(out), {a}, [pa](const Tensor& o) {
    for (std::size_t i = 0; i < o.grad.size(); ++i) pa->grad[i] += o.grad[i];
  });
}

Var Tape::concat(std::span<const Var> parts) {
  if (parts.empty()) throw shape_error("concat: no inputs");
  const std::size_t rows = parts[0]->rows();
  std::size_t total = 0;
  for (const Var& p : parts) {
    if (p->rows() != rows || p->shape.size() > 2) {
      throw shape_error("concat: incompatible shapes " + shape_string(parts[0]->shape) + " and " +
                        shape_string(p->shape));
    }
    total += p->cols();
  }
  std::vector<double> out(rows * total);
  std::vector<Tensor*> raw;
  std::size_t offset = 0;
  for (const Var& p : parts) {
    const std::size_t c = p->cols();
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(p->data.begin() + static_cast<std::ptrdiff_t>(r * c), c,
                  out.begin() + static_cast<std::ptrdiff_t>(r * total + offset));
    }
    offset += c;
    raw.push_back(p.get());
  }
  Shape shape = parts[0]->shape.size() == 2 ? Shape{rows, total} : Shape{total};
  return record(std::move(shape), std::move(out), {parts.begin(), parts.end()},
                [raw, rows, total](const Tensor& o) {
                  std::size_t offset = 0;
                  for (Tensor* p : raw) {
                    const std::size_t c = p->cols();
                    if (p->requires_grad) {
                      for (std::size_t r = 0; r < rows; ++r) {
                        for (std::size_t j = 0; j < c; ++j) {
                          p->grad[r * c + j] += o.grad[r * total + offset + j];
                        }
                      }
                    }
                    offset += c;
                  }
                });
}

Var Tape::slice_cols(const Var& a, std::size_t begin, std::size_t end) {
  const std::size_t cols = a->cols();
  if (begin > end || end > cols) {
    throw shape_error("slice_cols: range [" + std::to_string(begin) + ", " + std::to_string(end) +
                      ") outside " + shape_string(a->shape));
  }
  const std::size_t rows = a->rows();
  const std::size_t width = end - begin;
  std::vector<double> out(rows * width);
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(a->data.begin() + static_cast<std::ptrdiff_t>(r * cols + begin), width,
                out.begin() + static_cast<std::ptrdiff_t>(r * width));
  }
  Tensor* pa = a.get();
  Shape shape = a->shape.size() == 2 ? Shape{rows, width} : Shape{width};
  return record(std::move(shape), std::move(out), {a},
                [pa, rows, cols, begin, width](const Tensor& o) {
                  for (std::size_t r = 0; r < rows; ++r) {
                    for (std::size_t j = 0; j < width; ++j) {
                      pa->grad[r * cols + begin + j] += o.grad[r * width + j];
                    }
                  }
                });
}

Var Tape::tanh(const Var& a) {
  std::vector<double> out(a->size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(a->data[i]);
  Tensor* pa = a.get();
  return record(a->shape, std::move(out), {a}, [pa](const Tensor& o) {
    for (std::size_t i = 0; i < o.grad.size(); ++i) {
      pa->grad[i] += o.grad[i] * (1.0 - o.data[i] * o.data[i]);
    }
  });
}

Var Tape::sigmoid(const Var& a) {
  std::vector<double> out(a->size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 / (1.0 + std::exp(-a->data[i]));
  Tensor* pa = a.get();
  return record(a->shape, std::move(out), {a}, [pa](const Tensor& o) {
    for (std::size_t i = 0; i < o.grad.size(); ++i) {
      pa->grad[i] += o.grad[i] * o.data[i] * (1.0 - o.data[i]);
    }
  });
}

Var Tape::softmax(const Var& a) {
  const std::size_t rows = a->rows(), cols = a->cols();
  std::vector<double> out(a->size());
  for (std::size_t r = 0; r < rows; ++r) {
    const double* x = a->data.data() + r * cols;
    double* y = out.data() + r * cols;
    const double mx = *std::max_element(x, x + cols);
    double z = 0.0;
    for (std::size_t j = 0; j < cols; ++j) z += (y[j] = std::exp(x[j] - mx));
    for (std::size_t j = 0; j < cols; ++j) y[j] /= z;
  }
  Tensor* pa = a.get();
  return record(a->shape, std::move(out), {a}, [pa, rows, cols](const Tensor& o) {
    for (std::size_t r = 0; r < rows; ++r) {
      const double* y = o.data.data() + r * cols;
      const double* g = o.grad.data() + r * cols;
      double inner = 0.0;
      for (std::size_t j = 0; j < cols; ++j) inner += g[j] * y[j];
      for (std::size_t j = 0; j < cols; ++j) pa->grad[r * cols + j] += y[j] * (g[j] - inner);
    }
  });
}

Var Tape::log_softmax(const Var& a) {
  const std::size_t rows = a->rows(), cols = a->cols();
  std::vector<double> out(a->size());
  for (std::size_t r = 0; r < rows; ++r) {
    const double* x = a->data.data() + r * cols;
    double* y = out.data() + r * cols;
    const double mx = *std::max_element(x, x + cols);
    double z = 0.0;
    for (std::size_t j = 0; j < cols; ++j) z += std::exp(x[j] - mx);
    const double lz = mx + std::log(z);
    for (std::size_t j = 0; j < cols; ++j) y[j] = x[j] - lz;
  }
  Tensor* pa = a.get();
  return record(a->shape, std::move(out), {a}, [pa, rows, cols](const Tensor& o) {
    for (std::size_t r = 0; r < rows; ++r) {
      const double* y = o.data.data() + r * cols;
      const double* g = o.grad.data() + r * cols;
      double gsum = 0.0;
      for (std::size_t j = 0; j < cols; ++j) gsum += g[j];
      for (std::size_t j = 0; j < cols; ++j) {
        pa->grad[r * cols + j] += g[j] - std::exp(y[j]) * gsum;
      }
    }
  });
}

Var Tape::sum(const Var& a) {
  double s = 0.0;
  for (double x : a->data) s += x;
  Tensor* pa = a.get();
  return record({}, {s}, {a}, [pa](const Tensor& o) {
    for (double& g : pa->grad) g += o.grad[0];
  });
}

Var Tape::mean(const Var& a) {
  if (a->size() == 0) throw shape_error("mean of an empty tensor");
  return scale(sum(a), 1.0 / static_cast<double>(a->size()));
}

Var Tape::pick(const Var& a, std::span<const std::size_t> index) {
  const std::size_t rows = a->rows(), cols = a->cols();
  if (index.size() != rows) {
    throw shape_error("pick: " + std::to_string(index.size()) + " indices for " +
                      shape_string(a->shape));
  }
  std::vector<double> out(rows);
  std::vector<std::size_t> idx(index.begin(), index.end());
  for (std::size_t r = 0; r < rows; ++r) {
    if (idx[r] >= cols) throw shape_error("pick: index out of range");
    out[r] = a->data[r * cols + idx[r]];
  }
  Tensor* pa = a.get();
  return record({rows, 1}, std::move(out), {a}, [pa, idx, cols](const Tensor& o) {
    for (std::size_t r = 0; r < idx.size(); ++r) pa->grad[r * cols + idx[r]] += o.grad[r];
  });
}

Var Tape::straight_through(std::vector<double> hard, const Var& relaxed) {
  if (hard.size() != relaxed->size()) {
    throw shape_error("straight_through: hard value does not match " +
                      shape_string(relaxed->shape));
  }
  Tensor* pr = relaxed.get();
  return record(relaxed->shape, std::move(hard), {relaxed}, [pr](const Tensor& o) {
    for (std::size_t i = 0; i < o.grad.size(); ++i) pr->grad[i] += o.grad[i];
  });
}

void Tape::backward(const Var& loss) {
  if (loss->size() != 1) {
    throw contract_error("backward needs a scalar loss, got " + shape_string(loss->shape));
  }
  if (!loss->requires_grad) return;
  auto it = std::find_if(ops_.rbegin(), ops_.rend(),
                         [&](const Op& op) { return op.output == loss; });
  loss->ensure_grad();
  if (it == ops_.rend()) {
    // A leaf loss: its own gradient is one.
    loss->grad[0] += 1.0;
    return;
  }
  loss->grad[0] = 1.0;
  for (; it != ops_.rend(); ++it) {
    const Tensor& out = *it->output;
    if (out.grad.empty()) continue;
    for (const Var& in : it->inputs) {
      if (in->requires_grad) in->ensure_grad();
    }
    it->backward(out);
  }
}

}  // namespace hetgen::ad
