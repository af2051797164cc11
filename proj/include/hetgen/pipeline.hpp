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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hetgen/assembler.hpp"
#include "hetgen/checkpoint.hpp"
#include "hetgen/config.hpp"
#include "hetgen/graph.hpp"
#include "hetgen/metrics.hpp"

namespace hetgen {

struct GraphFiles {
  std::filesystem::path nodes;
  std::filesystem::path edges;
};

/// `<dir>/<stem>.nodes.tsv` and `<dir>/<stem>.edges.tsv`.
GraphFiles graph_files(const std::filesystem::path& dir, const std::string& stem);

struct SynthSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t cross_type_edges = 0;
  std::size_t components = 0;
};

SynthSummary summarize(const HetGraph& graph);
/// Writes graph.nodes.tsv and graph.edges.tsv into out_dir.
SynthSummary run_synth(const SynthParams& params, std::uint64_t seed,
                       const std::filesystem::path& out_dir);

struct TrainSummary {
  std::size_t train_edges = 0;
  std::size_t test_edges = 0;
  std::size_t steps = 0;
  std::filesystem::path checkpoint;
};

/// Splits the graph, trains and writes into out_dir: train/test graph
/// files, config.txt, train.log (one line per step) and model.ckpt. The
/// checkpoint is refreshed every checkpoint_interval steps and once more
/// when training aborts.
TrainSummary run_train(const GraphFiles& input, TrainConfig config,
                       const std::filesystem::path& out_dir);

struct GeneratedGraph {
  AssemblyResult assembly;
  bool stalled = false;
};

/// Graph i uses the stream derive_seed(master_seed, generate, i). Walk
/// count is walks_per_edge x target edges; target 0 means the config's.
std::vector<GeneratedGraph> generate_graphs(const Model& model, std::size_t count,
                                            std::size_t target_edges, std::uint64_t master_seed);

struct GenerateSummary {
  std::size_t graphs = 0;
  std::size_t stalled = 0;
};

struct GenerateRequest {
  std::filesystem::path checkpoint;
  /// key=value lines applied on top of the checkpoint's config.
  std::string config_overrides;
  std::optional<std::uint64_t> seed;
  std::size_t count = 0;         // 0 = config num_graphs
  std::size_t target_edges = 0;  // 0 = config target_edges
  std::filesystem::path out_dir;
};

/// Writes graph_NNN.{nodes,edges}.tsv and graph_NNN.trace.tsv per graph
/// plus config.txt. Stalled graphs are still written; the caller reports
/// the failure through GenerateSummary::stalled.
GenerateSummary run_generate(const GenerateRequest& request);

/// Same node count, node types and edge count as `like`, edges uniform over
/// all node pairs.
HetGraph er_control(const HetGraph& like, Rng& rng);

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t defined = 0;  // number of finite samples behind mean/stddev
};

/// Mean and sample standard deviation over the finite values.
MetricSummary summarize_values(const std::vector<double>& values);

struct EvalReport {
  std::size_t graphs = 0;
  TypeSchema schema;
  /// Ordered rows: name -> summary over generated graphs.
  std::vector<std::pair<std::string, MetricSummary>> rows;
  /// Reference values measured on the training graph.
  std::vector<std::pair<std::string, double>> reference;
  PatternDistribution real_patterns;
  PatternDistribution generated_patterns;

  const MetricSummary& row(const std::string& name) const;
  double reference_value(const std::string& name) const;
};

/// Structural metrics per generated graph, EO rate against `test`,
/// uniqueness across the set, degree MMD and meta-path TV against `train`.
EvalReport evaluate(const std::vector<HetGraph>& generated, const HetGraph& train,
                    const HetGraph& test, const TrainConfig& config);

std::string format_report(const EvalReport& report, const TrainConfig& config);

/// Loads every graph pair in `generated_dir` against the training schema
/// and writes report.tsv into out_dir.
EvalReport run_eval(const std::filesystem::path& generated_dir, const GraphFiles& train,
                    const GraphFiles& test, const TrainConfig& config,
                    const std::filesystem::path& out_dir);

}  // namespace hetgen
