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

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "hetgen/config.hpp"
#include "hetgen/error.hpp"
#include "hetgen/graph.hpp"
#include "hetgen/hetgen.h"
#include "hetgen/metrics.hpp"
#include "hetgen/pipeline.hpp"

struct hetgen_graph {
  hetgen::HetGraph graph;
};

struct hetgen_config {
  hetgen::TrainConfig config;
};

namespace {

thread_local std::string g_last_error;

hetgen_status status_of(hetgen::ErrorKind kind) {
  using hetgen::ErrorKind;
  switch (kind) {
    case ErrorKind::kParse: return HETGEN_ERR_PARSE;
    case ErrorKind::kIntegrity: return HETGEN_ERR_INTEGRITY;
    case ErrorKind::kParameter: return HETGEN_ERR_PARAMETER;
    case ErrorKind::kSampling: return HETGEN_ERR_SAMPLING;
    case ErrorKind::kShape: return HETGEN_ERR_SHAPE;
    case ErrorKind::kContract: return HETGEN_ERR_CONTRACT;
    case ErrorKind::kTraining: return HETGEN_ERR_TRAINING;
    case ErrorKind::kIo: return HETGEN_ERR_IO;
    case ErrorKind::kLookup: return HETGEN_ERR_LOOKUP;
    case ErrorKind::kGeneration: return HETGEN_ERR_GENERATION;
    case ErrorKind::kPartialGraph: return HETGEN_ERR_PARTIAL_GRAPH;
    case ErrorKind::kUsage: return HETGEN_ERR_USAGE;
  }
  return HETGEN_ERR_INTERNAL;
}

template <typename F>
hetgen_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return HETGEN_OK;
  } catch (const hetgen::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return HETGEN_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw hetgen::parameter_error(std::string(what) + " must not be null");
}

void copy_out(const std::string& value, char* buf, std::size_t size, std::size_t* needed) {
  if (needed != nullptr) *needed = value.size() + 1;
  if (buf == nullptr && size == 0) return;
  require(buf, "buf");
  if (size < value.size() + 1) throw hetgen::parameter_error("buffer too small");
  std::memcpy(buf, value.c_str(), value.size() + 1);
}

}  // namespace

extern "C" {

const char* hetgen_last_error(void) { return g_last_error.c_str(); }

const char* hetgen_status_name(hetgen_status status) {
  switch (status) {
    case HETGEN_OK: return "ok";
    case HETGEN_ERR_PARSE: return "parse error";
    case HETGEN_ERR_INTEGRITY: return "integrity error";
    case HETGEN_ERR_PARAMETER: return "parameter error";
    case HETGEN_ERR_SAMPLING: return "sampling error";
    case HETGEN_ERR_SHAPE: return "shape error";
    case HETGEN_ERR_CONTRACT: return "contract error";
    case HETGEN_ERR_TRAINING: return "training error";
    case HETGEN_ERR_IO: return "io error";
    case HETGEN_ERR_LOOKUP: return "lookup error";
    case HETGEN_ERR_GENERATION: return "generation error";
    case HETGEN_ERR_PARTIAL_GRAPH: return "partial graph";
    case HETGEN_ERR_USAGE: return "usage error";
    case HETGEN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* hetgen_version(void) { return "0.1.0"; }

hetgen_status hetgen_graph_load(const char* node_file, const char* edge_file,
                                hetgen_graph** out) {
  return guarded([&] {
    require(node_file, "node_file");
    require(edge_file, "edge_file");
    require(out, "out");
    *out = new hetgen_graph{hetgen::load_graph(node_file, edge_file)};
  });
}

hetgen_status hetgen_graph_save(const hetgen_graph* graph, const char* node_file,
                                const char* edge_file) {
  return guarded([&] {
    require(graph, "graph");
    require(node_file, "node_file");
    require(edge_file, "edge_file");
    hetgen::save_graph(graph->graph, node_file, edge_file);
  });
}

void hetgen_graph_free(hetgen_graph* graph) { delete graph; }

hetgen_status hetgen_graph_stats_get(const hetgen_graph* graph, hetgen_graph_stats* out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "out");
    const hetgen::HetGraph& g = graph->graph;
    const hetgen::SynthSummary s = hetgen::summarize(g);
    out->nodes = s.nodes;
    out->edges = s.edges;
    out->node_types = g.schema().num_node_types();
    out->edge_types = g.schema().num_edge_types();
    out->cross_type_edges = s.cross_type_edges;
    out->components = s.components;
    out->lcc = hetgen::lcc(g);
    out->triangles = hetgen::triangle_count(g);
    out->clustering_coef = hetgen::clustering_coef(g);
    out->powerlaw_coef = hetgen::powerlaw_coef(g);
    out->assortativity = hetgen::assortativity(g);
  });
}

hetgen_status hetgen_config_new(hetgen_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new hetgen_config{};
  });
}

hetgen_status hetgen_config_load(const char* file, hetgen_config** out) {
  return guarded([&] {
    require(file, "file");
    require(out, "out");
    *out = new hetgen_config{hetgen::TrainConfig::from_file(file)};
  });
}

hetgen_status hetgen_config_set(hetgen_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->config.set(key, value);
  });
}

hetgen_status hetgen_config_get(const hetgen_config* config, const char* key, char* buf,
                                size_t size, size_t* needed) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    copy_out(config->config.get(key), buf, size, needed);
  });
}

hetgen_status hetgen_config_text(const hetgen_config* config, char* buf, size_t size,
                                 size_t* needed) {
  return guarded([&] {
    require(config, "config");
    copy_out(config->config.to_text(), buf, size, needed);
  });
}

void hetgen_config_free(hetgen_config* config) { delete config; }

hetgen_status hetgen_synth_params_default(size_t preset_total, hetgen_synth_params* out) {
  return guarded([&] {
    require(out, "out");
    hetgen::SynthParams p;
    if (preset_total != 0) p = hetgen::synth_preset(preset_total);
    out->num_types = p.num_types;
    out->per_type_size = p.per_type_size;
    out->intra_edge_prob = p.intra_edge_prob;
    out->share_fraction = p.share_fraction;
  });
}

hetgen_status hetgen_synth(const hetgen_synth_params* params, uint64_t seed, const char* out_dir,
                           hetgen_synth_summary* out) {
  return guarded([&] {
    require(params, "params");
    require(out_dir, "out_dir");
    hetgen::SynthParams p;
    p.num_types = params->num_types;
    p.per_type_size = params->per_type_size;
    p.intra_edge_prob = params->intra_edge_prob;
    p.share_fraction = params->share_fraction;
    const hetgen::SynthSummary s = hetgen::run_synth(p, seed, out_dir);
    if (out != nullptr) *out = {s.nodes, s.edges, s.cross_type_edges, s.components};
  });
}

hetgen_status hetgen_train(const char* node_file, const char* edge_file,
                           const hetgen_config* config, const char* out_dir,
                           hetgen_train_summary* out) {
  return guarded([&] {
    require(node_file, "node_file");
    require(edge_file, "edge_file");
    require(out_dir, "out_dir");
    const hetgen::TrainConfig cfg = config != nullptr ? config->config : hetgen::TrainConfig{};
    const hetgen::TrainSummary s = hetgen::run_train({node_file, edge_file}, cfg, out_dir);
    if (out != nullptr) *out = {s.train_edges, s.test_edges, s.steps};
  });
}

hetgen_status hetgen_generate(const char* checkpoint, const char* overrides_text,
                              const uint64_t* seed, size_t count, size_t target_edges,
                              const char* out_dir, hetgen_generate_summary* out) {
  return guarded([&] {
    require(checkpoint, "checkpoint");
    require(out_dir, "out_dir");
    hetgen::GenerateRequest request;
    request.checkpoint = checkpoint;
    if (overrides_text != nullptr) request.config_overrides = overrides_text;
    if (seed != nullptr) request.seed = *seed;
    request.count = count;
    request.target_edges = target_edges;
    request.out_dir = out_dir;
    const hetgen::GenerateSummary s = hetgen::run_generate(request);
    if (out != nullptr) *out = {s.graphs, s.stalled};
    if (s.stalled > 0) {
      throw hetgen::Error(hetgen::ErrorKind::kPartialGraph,
                          std::to_string(s.stalled) + " of " + std::to_string(s.graphs) +
                              " graphs stalled before reaching the target edge count");
    }
  });
}

hetgen_status hetgen_eval(const char* generated_dir, const char* train_nodes,
                          const char* train_edges, const char* test_nodes, const char* test_edges,
                          const hetgen_config* config, const char* out_dir,
                          hetgen_eval_summary* out) {
  return guarded([&] {
    require(generated_dir, "generated_dir");
    require(train_nodes, "train_nodes");
    require(train_edges, "train_edges");
    require(test_nodes, "test_nodes");
    require(test_edges, "test_edges");
    require(out_dir, "out_dir");
    const hetgen::TrainConfig cfg = config != nullptr ? config->config : hetgen::TrainConfig{};
    const hetgen::EvalReport r = hetgen::run_eval(generated_dir, {train_nodes, train_edges},
                                                  {test_nodes, test_edges}, cfg, out_dir);
    if (out != nullptr) {
      out->graphs = r.graphs;
      out->eo_rate = r.row("eo_rate").mean;
      out->uniqueness = r.row("uniqueness").mean;
      out->degree_mmd = r.row("degree_mmd").mean;
      out->er_control_degree_mmd = r.row("er_control_degree_mmd").mean;
      out->length_ratio_tv = r.row("length_ratio_tv").mean;
      out->metapath_tv = r.row("metapath_tv").mean;
    }
  });
}

}  // extern "C"
