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

/* C interface to the hetgen library. Every function returns a status code;
 * on failure hetgen_last_error() describes the most recent error raised on
 * the calling thread. Handles are opaque and owned by the caller. */

#ifndef HETGEN_HETGEN_H_
#define HETGEN_HETGEN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HETGEN_API __declspec(dllexport)
#else
#define HETGEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hetgen_status {
  HETGEN_OK = 0,
  HETGEN_ERR_PARSE = 1,
  HETGEN_ERR_INTEGRITY = 2,
  HETGEN_ERR_PARAMETER = 3,
  HETGEN_ERR_SAMPLING = 4,
  HETGEN_ERR_SHAPE = 5,
  HETGEN_ERR_CONTRACT = 6,
  HETGEN_ERR_TRAINING = 7,
  HETGEN_ERR_IO = 8,
  HETGEN_ERR_LOOKUP = 9,
  HETGEN_ERR_GENERATION = 10,
  HETGEN_ERR_PARTIAL_GRAPH = 11,
  HETGEN_ERR_USAGE = 12,
  HETGEN_ERR_INTERNAL = 13
} hetgen_status;

typedef struct hetgen_graph hetgen_graph;
typedef struct hetgen_config hetgen_config;

HETGEN_API const char* hetgen_last_error(void);
HETGEN_API const char* hetgen_status_name(hetgen_status status);
HETGEN_API const char* hetgen_version(void);

/* Graphs */
HETGEN_API hetgen_status hetgen_graph_load(const char* node_file, const char* edge_file,
                                           hetgen_graph** out);
HETGEN_API hetgen_status hetgen_graph_save(const hetgen_graph* graph, const char* node_file,
                                           const char* edge_file);
HETGEN_API void hetgen_graph_free(hetgen_graph* graph);

typedef struct hetgen_graph_stats {
  size_t nodes;
  size_t edges;
  size_t node_types;
  size_t edge_types;
  size_t cross_type_edges;
  size_t components;
  size_t lcc;
  uint64_t triangles;
  double clustering_coef;
  double powerlaw_coef;
  double assortativity;
} hetgen_graph_stats;

HETGEN_API hetgen_status hetgen_graph_stats_get(const hetgen_graph* graph,
                                                hetgen_graph_stats* out);

/* Configuration: key=value settings with validated defaults. */
HETGEN_API hetgen_status hetgen_config_new(hetgen_config** out);
HETGEN_API hetgen_status hetgen_config_load(const char* file, hetgen_config** out);
HETGEN_API hetgen_status hetgen_config_set(hetgen_config* config, const char* key,
                                           const char* value);
/* Copies the value, NUL-terminated, into buf. *needed receives the full
 * length including the terminator; a too small buffer is a parameter error. */
HETGEN_API hetgen_status hetgen_config_get(const hetgen_config* config, const char* key,
                                           char* buf, size_t size, size_t* needed);
/* Same buffer protocol for the full key=value text. */
HETGEN_API hetgen_status hetgen_config_text(const hetgen_config* config, char* buf,
                                            size_t size, size_t* needed);
HETGEN_API void hetgen_config_free(hetgen_config* config);

/* Pipeline commands */
typedef struct hetgen_synth_params {
  size_t num_types;
  size_t per_type_size;
  double intra_edge_prob;
  double share_fraction;
} hetgen_synth_params;

/* Fills the defaults; preset_total 100, 200 or 500 selects the matching
 * per-type size, 0 keeps the library default. */
HETGEN_API hetgen_status hetgen_synth_params_default(size_t preset_total,
                                                     hetgen_synth_params* out);

typedef struct hetgen_synth_summary {
  size_t nodes;
  size_t edges;
  size_t cross_type_edges;
  size_t components;
} hetgen_synth_summary;

HETGEN_API hetgen_status hetgen_synth(const hetgen_synth_params* params, uint64_t seed,
                                      const char* out_dir, hetgen_synth_summary* out);

typedef struct hetgen_train_summary {
  size_t train_edges;
  size_t test_edges;
  size_t steps;
} hetgen_train_summary;

HETGEN_API hetgen_status hetgen_train(const char* node_file, const char* edge_file,
                                      const hetgen_config* config, const char* out_dir,
                                      hetgen_train_summary* out);

typedef struct hetgen_generate_summary {
  size_t graphs;
  size_t stalled;
} hetgen_generate_summary;

/* overrides_text: optional key=value lines applied over the checkpoint's
 * config. seed: NULL keeps the checkpoint seed. count and target_edges:
 * 0 means the config value.
 * Any stalled graph yields HETGEN_ERR_PARTIAL_GRAPH after all files are
 * written. */
HETGEN_API hetgen_status hetgen_generate(const char* checkpoint, const char* overrides_text,
                                         const uint64_t* seed, size_t count,
                                         size_t target_edges, const char* out_dir,
                                         hetgen_generate_summary* out);

typedef struct hetgen_eval_summary {
  size_t graphs;
  double eo_rate;
  double uniqueness;
  double degree_mmd;
  double er_control_degree_mmd;
  double length_ratio_tv;
  double metapath_tv;
} hetgen_eval_summary;

HETGEN_API hetgen_status hetgen_eval(const char* generated_dir, const char* train_nodes,
                                     const char* train_edges, const char* test_nodes,
                                     const char* test_edges, const hetgen_config* config,
                                     const char* out_dir, hetgen_eval_summary* out);

#ifdef __cplusplus
}
#endif

#endif  // HETGEN_HETGEN_H_
