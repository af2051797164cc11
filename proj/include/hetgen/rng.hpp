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
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hetgen {

/// SplitMix64 finalizer; also the basis of seed derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed, a stream tag and an
/// index. seed = splitmix64(splitmix64(master ^ splitmix64(tag)) + index).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                    std::uint64_t index = 0) {
  return splitmix64(splitmix64(master ^ splitmix64(tag)) + index);
}

/// Stream tags used by the pipeline.
enum StreamTag : std::uint64_t {
  kStreamSplit = 1,
  kStreamEmbedCorpus = 2,
  kStreamEmbedTrain = 3,
  kStreamInit = 4,
  kStreamTrain = 5,
  kStreamGenerate = 6,
  kStreamEval = 7,
  kStreamSynth = 8,
  kStreamControl = 9,
};

/// mt19937_64 with distribution helpers whose output is fixed by this code,
/// not by the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller (one value per call).
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Draws an index proportional to non-negative weights via a cumulative table.
class CumulativeSampler {
 public:
  CumulativeSampler() = default;
  explicit CumulativeSampler(std::span<const double> weights);

  bool empty() const { return cumulative_.empty() || total() <= 0.0; }
  double total() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  std::size_t size() const { return cumulative_.size(); }

  std::size_t sample(Rng& rng) const;

 private:
  std::vector<double> cumulative_;
};

}  // namespace hetgen
