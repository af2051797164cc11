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

#include "hetgen/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hetgen/error.hpp"
#include "hetgen/gan.hpp"

namespace hetgen {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw io_error("cannot write " + file.string());
  out << text;
  if (!out) throw io_error("write failed for " + file.string());
}

std::string graph_stem(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "graph_%03zu", index);
  return buf;
}

std::string training_log(const std::vector<TrainLogEntry>& log) {
  std::string out;
  char buf[128];
  for (const TrainLogEntry& e : log) {
    std::snprintf(buf, sizeof buf, "%zu\t%.10g\t%.10g\n", e.step + 1, e.critic_loss,
                  e.generator_loss);
    out += buf;
  }
  return out;
}

std::string trace_text(const std::vector<AssemblyTraceEntry>& trace, const HetGraph& graph) {
  std::string out;
  for (const AssemblyTraceEntry& t : trace) {
    out += pattern_label(t.pattern, graph.schema());
    out += '\t';
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      if (i > 0) out += ',';
      out += graph.external_id(t.nodes[i]);
    }
    out += '\n';
  }
  return out;
}

void check_same_nodes(const HetGraph& graph, const HetGraph& reference, const std::string& what) {
  if (graph.num_nodes() != reference.num_nodes() || !std::ranges::equal(graph.node_types(), reference.node_types()) ||
      !std::ranges::equal(graph.external_ids(), reference.external_ids()) ||
      graph.schema().node_type_labels() != reference.schema().node_type_labels() ||
      graph.schema().edge_type_labels() != reference.schema().edge_type_labels()) {
    throw integrity_error(what + " does not share the training graph's nodes and schema");
  }
}

}  // namespace

GraphFiles graph_files(const fs::path& dir, const std::string& stem) {
  return {dir / (stem + ".nodes.tsv"), dir / (stem + ".edges.tsv")};
}

SynthSummary summarize(const HetGraph& graph) {
  SynthSummary s;
  s.nodes = graph.num_nodes();
  s.edges = graph.num_edges();
  for (const Edge& e : graph.edges()) {
    if (graph.node_type(e.u) != graph.node_type(e.v)) ++s.cross_type_edges;
  }
  s.components = count_components(graph);
  return s;
}

SynthSummary run_synth(const SynthParams& params, std::uint64_t seed, const fs::path& out_dir) {
  Rng rng(derive_seed(seed, kStreamSynth));
  const HetGraph graph = synth_hetero_graph(params, rng);
  ensure_dir(out_dir);
  const GraphFiles files = graph_files(out_dir, "graph");
  save_graph(graph, files.nodes, files.edges);
  return summarize(graph);
}

TrainSummary run_train(const GraphFiles& input, TrainConfig config, const fs::path& out_dir) {
  config.finalize();
  const HetGraph graph = load_graph(input.nodes, input.edges);
  Rng split_rng(derive_seed(config.seed, kStreamSplit));
  const EdgeSplit split = split_edges(graph, config.train_fraction, split_rng);
  if (split.train.num_edges() == 0) throw sampling_error("training split has no edges");
  if (config.target_edges == 0) config.target_edges = split.train.num_edges();

  ensure_dir(out_dir);
  const GraphFiles train_files = graph_files(out_dir, "train");
  const GraphFiles test_files = graph_files(out_dir, "test");
  save_graph(split.train, train_files.nodes, train_files.edges);
  save_graph(split.test, test_files.nodes, test_files.edges);
  write_text(out_dir / "config.txt", config.to_text());

  TrainSummary summary;
  summary.train_edges = split.train.num_edges();
  summary.test_edges = split.test.num_edges();
  summary.checkpoint = out_dir / "model.ckpt";
  auto persist = [&](const TrainedModel& trained, std::size_t) {
    save_model(make_model(split.train, config, trained), summary.checkpoint);
    write_text(out_dir / "train.log", training_log(trained.log));
  };
  const TrainedModel trained = train(split.train, config, persist);
  persist(trained, config.steps);
  summary.steps = trained.log.size();
  return summary;
}

std::vector<GeneratedGraph> generate_graphs(const Model& model, std::size_t count,
                                            std::size_t target_edges, std::uint64_t master_seed) {
  if (count == 0) throw usage_error("graph count must be at least 1");
  if (target_edges == 0) target_edges = model.config.target_edges;
  if (target_edges == 0) throw usage_error("target edge count must be at least 1");
  const HetGraph skeleton = model.node_skeleton();
  const GenerationOptions options = generation_options(model.config);
  AssemblyOptions assembly;
  assembly.target_edges = target_edges;
  assembly.probabilistic = model.config.probabilistic_assembler;

  std::vector<GeneratedGraph> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(master_seed, kStreamGenerate, i));
    const auto walks = generate_walks(model.gen, model.table, model.schema,
                                      model.config.walks_per_edge * target_edges, options, rng);
    GeneratedGraph g;
    try {
      g.assembly = assemble(walks, skeleton, assembly, rng);
    } catch (const PartialGraphError& e) {
      g.assembly = e.partial();
      g.stalled = true;
    }
    out.push_back(std::move(g));
  }
  return out;
}

GenerateSummary run_generate(const GenerateRequest& request) {
  Model model = load_model(request.checkpoint);
  model.config.apply_text(request.config_overrides);
  if (request.seed) model.config.seed = *request.seed;
  model.config.validate();
  const std::size_t count = request.count > 0 ? request.count : model.config.num_graphs;
  const auto graphs =
      generate_graphs(model, count, request.target_edges, model.config.seed);

  ensure_dir(request.out_dir);
  write_text(request.out_dir / "config.txt", model.config.to_text());
  GenerateSummary summary;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const HetGraph& g = graphs[i].assembly.graph;
    const GraphFiles files = graph_files(request.out_dir, graph_stem(i));
    save_graph(g, files.nodes, files.edges);
    write_text(request.out_dir / (graph_stem(i) + ".trace.tsv"),
               trace_text(graphs[i].assembly.trace, g));
    ++summary.graphs;
    if (graphs[i].stalled) ++summary.stalled;
  }
  return summary;
}

HetGraph er_control(const HetGraph& like, Rng& rng) {
  const std::size_t n = like.num_nodes();
  const std::size_t m = like.num_edges();
  if (n < 2 && m > 0) throw parameter_error("control graph needs at least two nodes");
  if (m > n * (n - 1) / 2) throw parameter_error("control graph cannot hold that many edges");
  std::set<std::pair<NodeId, NodeId>> chosen;
  while (chosen.size() < m) {
    const auto a = static_cast<NodeId>(rng.below(n));
    const auto b = static_cast<NodeId>(rng.below(n));
    if (a != b) chosen.insert(std::minmax(a, b));
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (const auto& [a, b] : chosen) edges.push_back({a, b, 0});
  TypeSchema schema(like.schema().node_type_labels(),
                    like.schema().num_edge_types() > 0 ? like.schema().edge_type_labels()
                                                       : std::vector<std::string>{"e"});
  return HetGraph(std::move(schema), {like.node_types().begin(), like.node_types().end()},
                  std::move(edges), {like.external_ids().begin(), like.external_ids().end()});
}

MetricSummary summarize_values(const std::vector<double>& values) {
  MetricSummary s;
  double sum = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++s.defined;
    }
  }
  if (s.defined == 0) {
    s.mean = s.stddev = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.mean = sum / static_cast<double>(s.defined);
  if (s.defined > 1) {
    double sq = 0.0;
    for (double v : values) {
      if (std::isfinite(v)) sq += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(sq / static_cast<double>(s.defined - 1));
  }
  return s;
}

const MetricSummary& EvalReport::row(const std::string& name) const {
  for (const auto& [k, v] : rows) {
    if (k == name) return v;
  }
  throw lookup_error("no report row " + name);
}

double EvalReport::reference_value(const std::string& name) const {
  for (const auto& [k, v] : reference) {
    if (k == name) return v;
  }
  throw lookup_error("no reference row " + name);
}

namespace {

struct Structural {
  double lcc, tc, clustering, powerlaw, assortativity;
};

Structural structural(const HetGraph& g) {
  return {static_cast<double>(lcc(g)), static_cast<double>(triangle_count(g)),
          clustering_coef(g), powerlaw_coef(g), assortativity(g)};
}

}  // namespace

EvalReport evaluate(const std::vector<HetGraph>& generated, const HetGraph& train,
                    const HetGraph& test, const TrainConfig& config) {
  if (generated.empty()) throw usage_error("no generated graphs to evaluate");
  check_same_nodes(test, train, "test graph");
  for (const HetGraph& g : generated) check_same_nodes(g, train, "generated graph");

  EvalReport report;
  report.graphs = generated.size();
  report.schema = train.schema();
  Rng real_rng(derive_seed(config.seed, kStreamEval, 0));
  report.real_patterns =
      metapath_distribution(train, config.walk_lengths, config.eval_samples, real_rng);

  std::vector<double> v_lcc, v_tc, v_cc, v_pl, v_as, v_mmd, v_eo, v_tv, v_len, v_ctrl;
  std::map<std::size_t, std::vector<double>> v_by_len;
  for (std::size_t l : config.walk_lengths) v_by_len[l];
  for (std::size_t i = 0; i < generated.size(); ++i) {
    const HetGraph& g = generated[i];
    const Structural s = structural(g);
    v_lcc.push_back(s.lcc);
    v_tc.push_back(s.tc);
    v_cc.push_back(s.clustering);
    v_pl.push_back(s.powerlaw);
    v_as.push_back(s.assortativity);
    v_mmd.push_back(degree_mmd(g, train));
    v_eo.push_back(eo_rate(g, test));
    if (g.num_edges() > 0) {
      Rng rng(derive_seed(config.seed, kStreamEval, i + 1));
      const PatternDistribution pd =
          metapath_distribution(g, config.walk_lengths, config.eval_samples, rng);
      for (const auto& [p, c] : pd.counts) report.generated_patterns.add(p, c);
      const DistributionDistance dd = distribution_distance(pd, report.real_patterns);
      v_tv.push_back(dd.overall);
      v_len.push_back(dd.length_ratio);
      for (auto& [l, vals] : v_by_len) {
        auto it = dd.by_length.find(l);
        vals.push_back(it == dd.by_length.end() ? 1.0 : it->second);
      }
    } else {
      v_tv.push_back(1.0);
      v_len.push_back(1.0);
      for (auto& [l, vals] : v_by_len) vals.push_back(1.0);
    }
    Rng control_rng(derive_seed(config.seed, kStreamControl, i));
    v_ctrl.push_back(degree_mmd(er_control(g, control_rng), train));
  }

  auto& rows = report.rows;
  rows.emplace_back("lcc", summarize_values(v_lcc));
  rows.emplace_back("triangle_count", summarize_values(v_tc));
  rows.emplace_back("clustering_coef", summarize_values(v_cc));
  rows.emplace_back("powerlaw_coef", summarize_values(v_pl));
  rows.emplace_back("assortativity", summarize_values(v_as));
  rows.emplace_back("degree_mmd", summarize_values(v_mmd));
  rows.emplace_back("eo_rate", summarize_values(v_eo));
  if (generated.size() >= 2) {
    rows.emplace_back("uniqueness", MetricSummary{uniqueness(generated), 0.0, 1});
  } else {
    rows.emplace_back("uniqueness", summarize_values({}));
  }
  rows.emplace_back("metapath_tv", summarize_values(v_tv));
  rows.emplace_back("length_ratio_tv", summarize_values(v_len));
  for (const auto& [l, vals] : v_by_len) {
    rows.emplace_back("pattern_tv_length_" + std::to_string(l), summarize_values(vals));
  }
  rows.emplace_back("er_control_degree_mmd", summarize_values(v_ctrl));

  const Structural real = structural(train);
  report.reference = {{"lcc", real.lcc},
                      {"triangle_count", real.tc},
                      {"clustering_coef", real.clustering},
                      {"powerlaw_coef", real.powerlaw},
                      {"assortativity", real.assortativity},
                      {"degree_mmd", 0.0},
                      {"eo_rate", eo_rate(train, test)}};
  return report;
}

std::string format_report(const EvalReport& report, const TrainConfig& config) {
  std::ostringstream out;
  out << "# hetgen evaluation report\n";
  out << "# graphs=" << report.graphs << "\n";
  out << "# clustering_coef: average local coefficient, nodes of degree < 2 count as 0\n";
  out << "# powerlaw_coef: continuous MLE with d_min = 1\n";
  out << "# degree_mmd: squared MMD, gaussian kernel on histogram total variation, sigma = 1\n";
  out << "# uniqueness: edge-edit uniqueness, mean pairwise normalized edge symmetric difference\n";
  out << "# stddev: sample standard deviation over graphs with a finite value\n";
  std::istringstream cfg(config.to_text());
  for (std::string line; std::getline(cfg, line);) out << "# config " << line << "\n";
  out << "metric\tmean\tstddev\n";
  for (const auto& [name, s] : report.rows) {
    out << name << '\t' << fmt(s.mean) << '\t' << fmt(s.stddev) << '\n';
  }
  for (const auto& [name, v] : report.reference) {
    out << "real." << name << '\t' << fmt(v) << '\t' << fmt(0.0) << '\n';
  }
  out << "\npattern\tprobability\n";
  auto block = [&](const char* source, const PatternDistribution& d) {
    if (d.total == 0) return;
    for (const auto& [len, mass] : d.by_length()) {
      out << "# " << source << " length=" << len << " mass=" << fmt(mass) << '\n';
      for (const auto& [p, prob] : d.conditional(len)) {
        out << source << ": " << pattern_label(p, report.schema) << '\t' << fmt(prob) << '\n';
      }
    }
  };
  block("real", report.real_patterns);
  block("generated", report.generated_patterns);
  return out.str();
}

EvalReport run_eval(const fs::path& generated_dir, const GraphFiles& train_files,
                    const GraphFiles& test_files, const TrainConfig& config,
                    const fs::path& out_dir) {
  if (!fs::is_directory(generated_dir)) {
    throw usage_error("generated directory " + generated_dir.string() + " does not exist");
  }
  const HetGraph train = load_graph(train_files.nodes, train_files.edges);
  const HetGraph test = load_graph(test_files.nodes, test_files.edges, train.schema());
  std::vector<std::string> stems;
  const std::string suffix = ".nodes.tsv";
  for (const auto& entry : fs::directory_iterator(generated_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      stems.push_back(name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(stems.begin(), stems.end());
  if (stems.empty()) throw usage_error("no generated graphs in " + generated_dir.string());
  std::vector<HetGraph> generated;
  for (const std::string& stem : stems) {
    const GraphFiles files = graph_files(generated_dir, stem);
    generated.push_back(load_graph(files.nodes, files.edges, train.schema()));
  }
  EvalReport report = evaluate(generated, train, test, config);
  ensure_dir(out_dir);
  write_text(out_dir / "report.tsv", format_report(report, config));
  return report;
}

}  // namespace hetgen
