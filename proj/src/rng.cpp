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

#include "hetgen/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hetgen/error.hpp"

namespace hetgen {

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CumulativeSampler::CumulativeSampler(std::span<const double> weights) {
  cumulative_.reserve(weights.size());
  double acc = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw parameter_error("sampler weights must be non-negative");
    acc += w;
    cumulative_.push_back(acc);
  }
}

std::size_t CumulativeSampler::sample(Rng& rng) const {
  if (empty()) throw sampling_error("cannot sample from zero total weight");
  const double target = rng.uniform() * total();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  if (idx >= cumulative_.size()) idx = cumulative_.size() - 1;
  // Skip zero-weight slots that share the cumulative value.
  while (idx > 0 && cumulative_[idx] == cumulative_[idx - 1]) --idx;
  return idx;
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kIntegrity: return "integrity error";
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kSampling: return "sampling error";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kContract: return "contract error";
    case ErrorKind::kTraining: return "training error";
    case ErrorKind::kIo: return "io error";
    case ErrorKind::kLookup: return "lookup error";
    case ErrorKind::kGeneration: return "generation error";
    case ErrorKind::kPartialGraph: return "partial graph";
    case ErrorKind::kUsage: return "usage error";
  }
  return "error";
}

}  // namespace hetgen
