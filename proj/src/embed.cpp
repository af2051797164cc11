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

#include "hetgen/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hetgen/binary_io.hpp"
#include "hetgen/error.hpp"

namespace hetgen {

EmbeddingTable::EmbeddingTable(std::size_t dim, std::vector<double> vectors,
                               std::vector<TypeIndex> node_types, std::size_t num_types)
    : dim_(dim), data_(std::move(vectors)), node_types_(std::move(node_types)),
      by_type_(num_types) {
  if (data_.size() != dim_ * node_types_.size()) {
    throw shape_error("embedding payload has " + std::to_string(data_.size()) +
                      " values, expected " + std::to_string(dim_ * node_types_.size()));
  }
  for (NodeId n = 0; n < node_types_.size(); ++n) {
    if (node_types_[n] >= num_types) throw integrity_error("embedding node type out of range");
    by_type_[node_types_[n]].push_back(n);
  }
}

std::span<const NodeId> EmbeddingTable::members(TypeIndex type) const {
  if (type >= by_type_.size()) throw lookup_error("unknown node type " + std::to_string(type));
  return by_type_[type];
}

EmbeddingTable normalize_rows(const EmbeddingTable& table, double radius) {
  if (!(radius > 0.0)) throw parameter_error("radius must be positive");
  const std::size_t d = table.dim();
  std::vector<double> data(table.data().begin(), table.data().end());
  for (std::size_t off = 0; off < data.size(); off += d) {
    double norm = 0.0;
    for (std::size_t k = 0; k < d; ++k) norm += data[off + k] * data[off + k];
    if (norm == 0.0) continue;
    const double factor = radius / std::sqrt(norm);
    for (std::size_t k = 0; k < d; ++k) data[off + k] *= factor;
  }
  return EmbeddingTable(d, std::move(data),
                        std::vector<TypeIndex>(table.node_types().begin(), table.node_types().end()),
                        table.num_types());
}

namespace {

double sigmoid(double x) {
  if (x > 30.0) return 1.0;
  if (x < -30.0) return 0.0;
  return 1.0 / (1.0 + std::exp(-x));
}

}  // namespace

EmbeddingTable train_embeddings(const std::vector<HeteroWalk>& corpus, const HetGraph& graph,
                                const EmbedParams& params, Rng& rng) {
  if (corpus.empty()) throw parameter_error("embedding corpus is empty");
  if (params.dim < 2) throw parameter_error("embedding dim must be at least 2");
  if (params.negatives < 1) throw parameter_error("negatives must be at least 1");
  const std::size_t n = graph.num_nodes();
  const std::size_t d = params.dim;

  std::vector<double> input(n * d);
  const double scale = 0.5 / static_cast<double>(d);
  for (double& x : input) x = (rng.uniform() * 2.0 - 1.0) * scale;
  std::vector<double> output(n * d, 0.0);

  std::vector<double> freq(n, 0.0);
  std::size_t pairs_per_epoch = 0;
  for (const HeteroWalk& w : corpus) {
    for (NodeId v : w.nodes) {
      if (v >= n) throw integrity_error("corpus node out of range");
      freq[v] += 1.0;
    }
    const std::size_t len = w.nodes.size();
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t lo = i >= params.window ? i - params.window : 0;
      const std::size_t hi = std::min(len - 1, i + params.window);
      pairs_per_epoch += hi - lo;
    }
  }
  for (double& f : freq) f = std::pow(f, 0.75);
  const CumulativeSampler noise(freq);

  const double total_pairs = static_cast<double>(pairs_per_epoch * params.epochs);
  double processed = 0.0;
  std::vector<double> grad(d);
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    for (const HeteroWalk& w : corpus) {
      const std::size_t len = w.nodes.size();
      for (std::size_t i = 0; i < len; ++i) {
        const std::size_t lo = i >= params.window ? i - params.window : 0;
        const std::size_t hi = std::min(len - 1, i + params.window);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const double lr =
              params.lr * std::max(1e-4, 1.0 - processed / std::max(1.0, total_pairs));
          processed += 1.0;
          double* center = input.data() + w.nodes[i] * d;
          std::fill(grad.begin(), grad.end(), 0.0);
          for (std::size_t k = 0; k <= params.negatives; ++k) {
            NodeId target;
            double label;
            if (k == 0) {
              target = w.nodes[j];
              label = 1.0;
            } else {
              target = static_cast<NodeId>(noise.sample(rng));
              if (target == w.nodes[j]) continue;
              label = 0.0;
            }
            double* ctx = output.data() + target * d;
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) dot += center[c] * ctx[c];
            const double g = (label - sigmoid(dot)) * lr;
            for (std::size_t c = 0; c < d; ++c) grad[c] += g * ctx[c];
            for (std::size_t c = 0; c < d; ++c) ctx[c] += g * center[c];
          }
          for (std::size_t c = 0; c < d; ++c) center[c] += grad[c];
        }
      }
    }
  }
  std::vector<TypeIndex> types(graph.node_types().begin(), graph.node_types().end());
  return EmbeddingTable(d, std::move(input), std::move(types), graph.schema().num_node_types());
}

std::vector<std::pair<NodeId, double>> type_distances(const EmbeddingTable& table,
                                                      std::span<const double> query,
                                                      TypeIndex type) {
  if (query.size() != table.dim()) {
    throw shape_error("query has dim " + std::to_string(query.size()) + ", table has dim " +
                      std::to_string(table.dim()));
  }
  auto members = table.members(type);
  if (members.empty()) throw lookup_error("node type " + std::to_string(type) + " has no members");
  std::vector<std::pair<NodeId, double>> out;
  out.reserve(members.size());
  for (NodeId m : members) {
    auto v = table.vector(m);
    double acc = 0.0;
    for (std::size_t c = 0; c < v.size(); ++c) {
      const double diff = query[c] - v[c];
      acc += diff * diff;
    }
    out.emplace_back(m, acc);
  }
  return out;
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write embeddings " + file.string());
  out << "dim=" << table.dim() << " count=" << table.num_nodes() << '\n';
  write_f64_le(out, table.data());
  if (!out) throw io_error("write failed for " + file.string());
}

EmbeddingTable load_embeddings(const std::filesystem::path& file, const HetGraph& graph) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw io_error("cannot open embeddings " + file.string());
  std::string manifest;
  std::getline(in, manifest);
  std::size_t dim = 0;
  std::size_t count = 0;
  if (std::sscanf(manifest.c_str(), "dim=%zu count=%zu", &dim, &count) != 2) {
    throw parse_error(file.string() + ": line 1: bad embedding manifest");
  }
  if (count != graph.num_nodes()) throw integrity_error("embedding count does not match graph");
  std::vector<double> data(dim * count);
  if (!read_f64_le(in, data)) throw parse_error(file.string() + ": truncated payload");
  std::vector<TypeIndex> types(graph.node_types().begin(), graph.node_types().end());
  return EmbeddingTable(dim, std::move(data), std::move(types), graph.schema().num_node_types());
}

}  // namespace hetgen
