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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hetgen/hetgen.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int report(hetgen_status status) {
  if (status == HETGEN_OK) return kExitOk;
  std::cerr << "hetgen: " << hetgen_status_name(status) << ": " << hetgen_last_error() << "\n";
  return status == HETGEN_ERR_USAGE ? kExitUsage : kExitFailure;
}

struct ConfigHandle {
  hetgen_config* ptr = nullptr;
  ConfigHandle() = default;
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
  ~ConfigHandle() { hetgen_config_free(ptr); }
};

struct Shared {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out_dir = ".";
  std::vector<std::string> settings;
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("--seed", s.seed, "Master seed");
  cmd->add_option("--config", s.config, "key=value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--out-dir", s.out_dir, "Output directory");
  cmd->add_option("--set", s.settings, "Override one config key, as key=value")
      ->check([](const std::string& v) {
        return v.find('=') == std::string::npos ? std::string("expected key=value") : std::string();
      });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Config file first, then --set entries, then --seed.
hetgen_status build_config(const Shared& s, ConfigHandle& cfg) {
  hetgen_status st = s.config.empty() ? hetgen_config_new(&cfg.ptr)
                                      : hetgen_config_load(s.config.c_str(), &cfg.ptr);
  if (st != HETGEN_OK) return st;
  for (const std::string& kv : s.settings) {
    const auto eq = kv.find('=');
    st = hetgen_config_set(cfg.ptr, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (st != HETGEN_OK) return st;
  }
  if (s.seed) return hetgen_config_set(cfg.ptr, "seed", std::to_string(*s.seed).c_str());
  return HETGEN_OK;
}

std::string override_text(const Shared& s) {
  std::string text = s.config.empty() ? std::string() : read_file(s.config);
  if (!text.empty() && text.back() != '\n') text += '\n';
  for (const std::string& kv : s.settings) text += kv + "\n";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous graph generation with adversarially trained walk generators"};
  app.require_subcommand(1);

  Shared synth_shared;
  std::size_t preset = 0;
  std::optional<std::size_t> types;
  std::optional<std::size_t> size;
  std::optional<double> intra;
  std::optional<double> share;
  auto* synth = app.add_subcommand("synth", "Write a synthetic heterogeneous graph");
  add_shared(synth, synth_shared);
  synth->add_option("--preset", preset, "Total node count preset")
      ->check(CLI::IsMember({100, 200, 500}));
  synth->add_option("--types", types, "Number of node types")->check(CLI::Range(1, 1000));
  synth->add_option("--size", size, "Nodes per type")->check(CLI::Range(1, 10000000));
  synth->add_option("--intra-prob", intra, "Edge probability inside a block")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--share", share, "Fraction of junction nodes per block")
      ->check(CLI::Range(0.0, 1.0));

  Shared train_shared;
  std::string nodes_file;
  std::string edges_file;
  std::optional<std::size_t> steps;
  auto* train = app.add_subcommand("train", "Split a graph and train the generator");
  add_shared(train, train_shared);
  train->add_option("--nodes", nodes_file, "Node TSV")->required()->check(CLI::ExistingFile);
  train->add_option("--edges", edges_file, "Edge TSV")->required()->check(CLI::ExistingFile);
  train->add_option("--steps", steps, "Generator steps");

  Shared gen_shared;
  std::string checkpoint;
  std::size_t count = 0;
  std::size_t target = 0;
  auto* generate = app.add_subcommand("generate", "Assemble graphs from a trained checkpoint");
  add_shared(generate, gen_shared);
  generate->add_option("--checkpoint", checkpoint, "Checkpoint file")
      ->required()
      ->check(CLI::ExistingFile);
  generate->add_option("--count", count, "Number of graphs (default from config)");
  generate->add_option("--target-edges", target, "Distinct edges per graph");

  Shared eval_shared;
  std::string generated_dir;
  std::string data_dir;
  std::string train_nodes, train_edges, test_nodes, test_edges;
  auto* eval = app.add_subcommand("eval", "Score generated graphs against the real split");
  add_shared(eval, eval_shared);
  eval->add_option("--generated", generated_dir, "Directory of generated graphs")->required();
  eval->add_option("--data-dir", data_dir, "Training output directory with train/test graphs");
  eval->add_option("--train-nodes", train_nodes, "Training node TSV");
  eval->add_option("--train-edges", train_edges, "Training edge TSV");
  eval->add_option("--test-nodes", test_nodes, "Test node TSV");
  eval->add_option("--test-edges", test_edges, "Test edge TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (synth->parsed()) {
    hetgen_synth_params params;
    if (hetgen_synth_params_default(preset, &params) != HETGEN_OK) return report(HETGEN_ERR_USAGE);
    if (types) params.num_types = *types;
    if (size) params.per_type_size = *size;
    if (intra) params.intra_edge_prob = *intra;
    if (share) params.share_fraction = *share;
    ConfigHandle cfg;
    if (const hetgen_status st = build_config(synth_shared, cfg); st != HETGEN_OK) {
      return report(st);
    }
    char buf[32];
    std::size_t needed = 0;
    hetgen_config_get(cfg.ptr, "seed", buf, sizeof buf, &needed);
    const std::uint64_t seed = std::stoull(buf);
    hetgen_synth_summary summary;
    const hetgen_status st = hetgen_synth(&params, seed, synth_shared.out_dir.c_str(), &summary);
    if (st == HETGEN_ERR_PARAMETER) {
      report(st);
      return kExitUsage;
    }
    if (st != HETGEN_OK) return report(st);
    std::cout << "nodes\t" << summary.nodes << "\nedges\t" << summary.edges
              << "\ncross_type_edges\t" << summary.cross_type_edges << "\ncomponents\t"
              << summary.components << "\n";
    return kExitOk;
  }

  if (train->parsed()) {
    ConfigHandle cfg;
    if (const hetgen_status st = build_config(train_shared, cfg); st != HETGEN_OK) {
      return report(st);
    }
    if (steps) {
      if (const hetgen_status st =
              hetgen_config_set(cfg.ptr, "steps", std::to_string(*steps).c_str());
          st != HETGEN_OK) {
        return report(st);
      }
    }
    hetgen_train_summary summary;
    const hetgen_status st = hetgen_train(nodes_file.c_str(), edges_file.c_str(), cfg.ptr,
                                          train_shared.out_dir.c_str(), &summary);
    if (st != HETGEN_OK) return report(st);
    std::cout << "train_edges\t" << summary.train_edges << "\ntest_edges\t" << summary.test_edges
              << "\nsteps\t" << summary.steps << "\n";
    return kExitOk;
  }

  if (generate->parsed()) {
    const std::string overrides = override_text(gen_shared);
    const std::uint64_t* seed = gen_shared.seed ? &*gen_shared.seed : nullptr;
    hetgen_generate_summary summary{};
    const hetgen_status st = hetgen_generate(checkpoint.c_str(), overrides.c_str(), seed, count,
                                             target, gen_shared.out_dir.c_str(), &summary);
    std::cout << "graphs\t" << summary.graphs << "\nstalled\t" << summary.stalled << "\n";
    return report(st);
  }

  // eval
  const std::filesystem::path data(data_dir.empty() ? "." : data_dir);
  auto pick = [&](std::string& value, const char* stem) {
    if (value.empty()) value = (data / stem).string();
  };
  if (data_dir.empty() && (train_nodes.empty() || train_edges.empty() || test_nodes.empty() ||
                           test_edges.empty())) {
    std::cerr << "hetgen: eval needs --data-dir or all four graph files\n";
    return kExitUsage;
  }
  pick(train_nodes, "train.nodes.tsv");
  pick(train_edges, "train.edges.tsv");
  pick(test_nodes, "test.nodes.tsv");
  pick(test_edges, "test.edges.tsv");
  if (eval_shared.config.empty() && !data_dir.empty() &&
      std::filesystem::exists(data / "config.txt")) {
    eval_shared.config = (data / "config.txt").string();
  }
  ConfigHandle cfg;
  if (const hetgen_status st = build_config(eval_shared, cfg); st != HETGEN_OK) return report(st);
  hetgen_eval_summary summary;
  const hetgen_status st =
      hetgen_eval(generated_dir.c_str(), train_nodes.c_str(), train_edges.c_str(),
                  test_nodes.c_str(), test_edges.c_str(), cfg.ptr, eval_shared.out_dir.c_str(),
                  &summary);
  if (st != HETGEN_OK) return report(st);
  std::cout << "graphs\t" << summary.graphs << "\neo_rate\t" << summary.eo_rate
            << "\nuniqueness\t" << summary.uniqueness << "\ndegree_mmd\t" << summary.degree_mmd
            << "\ner_control_degree_mmd\t" << summary.er_control_degree_mmd
            << "\nlength_ratio_tv\t" << summary.length_ratio_tv << "\nmetapath_tv\t"
            << summary.metapath_tv << "\n";
  return kExitOk;
}
