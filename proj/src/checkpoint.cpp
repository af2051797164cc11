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

#include "hetgen/checkpoint.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "hetgen/binary_io.hpp"
#include "hetgen/error.hpp"
#include "hetgen/text.hpp"

namespace hetgen {

namespace {

constexpr const char* kMagic = "hetgen-checkpoint 1";

std::size_t to_size(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    auto x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    throw parse_error("checkpoint header " + key + ": bad integer '" + v + "'");
  }
}

}  // namespace

HetGraph Model::node_skeleton() const {
  return HetGraph(schema, node_types, {}, external_ids);
}

Model make_model(const HetGraph& graph, const TrainConfig& config, const TrainedModel& trained) {
  Model m;
  m.schema = graph.schema();
  m.node_types.assign(graph.node_types().begin(), graph.node_types().end());
  m.external_ids.assign(graph.external_ids().begin(), graph.external_ids().end());
  m.config = config;
  m.gen = trained.gen;
  m.disc = trained.disc;
  m.table = trained.table;
  return m;
}

void write_tensors(std::ostream& out, const nn::ParamList& tensors) {
  out << "tensors " << tensors.size() << '\n';
  for (const auto& [name, t] : tensors) {
    out << name;
    for (std::size_t d : t->shape) out << ' ' << d;
    out << '\n';
  }
  out << "payload\n";
  for (const auto& [name, t] : tensors) write_f64_le(out, t->data);
}

namespace {

void read_tensor_body(std::istream& in, const std::string& manifest_line,
                      const nn::ParamList& tensors, const std::string& source) {
  std::string line = manifest_line;
  if (line.rfind("tensors ", 0) != 0) throw parse_error(source + ": missing tensor manifest");
  const std::size_t count = to_size("tensors", line.substr(8));
  if (count != tensors.size()) {
    throw integrity_error(source + ": manifest lists " + std::to_string(count) +
                          " tensors, expected " + std::to_string(tensors.size()));
  }
  for (const auto& [name, t] : tensors) {
    if (!std::getline(in, line)) throw parse_error(source + ": truncated manifest");
    auto parts = split_on(line, ' ');
    if (parts.empty() || parts[0] != name) {
      throw integrity_error(source + ": expected tensor " + name + ", found '" + line + "'");
    }
    ad::Shape shape;
    for (std::size_t i = 1; i < parts.size(); ++i) shape.push_back(to_size(name, parts[i]));
    if (shape != t->shape) {
      throw integrity_error(source + ": tensor " + name + " has shape " + ad::shape_string(shape) +
                            ", expected " + ad::shape_string(t->shape));
    }
  }
  if (!std::getline(in, line) || line != "payload") throw parse_error(source + ": missing payload");
  for (const auto& [name, t] : tensors) {
    if (!read_f64_le(in, t->data)) throw parse_error(source + ": truncated payload");
  }
}

}  // namespace

void read_tensors(std::istream& in, const nn::ParamList& tensors, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw parse_error(source + ": missing tensor manifest");
  read_tensor_body(in, line, tensors, source);
}

namespace {

nn::ParamList all_tensors(const Model& m, const ad::Var& embedding) {
  nn::ParamList list = m.gen.params();
  for (auto& p : m.disc.params()) list.push_back(p);
  list.emplace_back("embed.vectors", embedding);
  return list;
}

}  // namespace

void save_model(const Model& model, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write checkpoint " + file.string());
  out << kMagic << '\n';
  out << "node_types";
  for (const auto& l : model.schema.node_type_labels()) out << '\t' << l;
  out << "\nedge_types";
  for (const auto& l : model.schema.edge_type_labels()) out << '\t' << l;
  out << '\n';
  if (const auto& rule = model.schema.edge_type_rule()) {
    out << "edge_rule_present\ttrue\n";
    for (const auto& [pair, type] : *rule) {
      out << "edge_rule\t" << pair.first << '\t' << pair.second << '\t' << type << '\n';
    }
  } else {
    out << "edge_rule_present\tfalse\n";
  }
  const GeneratorDims& g = model.gen.dims;
  out << "noise_dim\t" << g.noise_dim << "\nhidden_dim\t" << g.hidden_dim << "\nencode_dim\t"
      << g.encode_dim << "\nembed_dim\t" << g.embed_dim << "\ndisc_hidden_dim\t"
      << model.disc.type_lstm.hidden_dim << "\nmax_len\t" << model.disc.seq_len << '\n';
  out << "temperature\t" << model.config.get("temperature") << '\n';
  std::istringstream cfg(model.config.to_text());
  std::string line;
  while (std::getline(cfg, line)) out << "config\t" << line << '\n';
  for (std::size_t n = 0; n < model.node_types.size(); ++n) {
    out << "node\t" << model.external_ids[n] << '\t' << model.node_types[n] << '\n';
  }
  auto emb = ad::make_tensor({model.table.num_nodes(), model.table.dim()},
                             {model.table.data().begin(), model.table.data().end()});
  write_tensors(out, all_tensors(model, emb));
  if (!out) throw io_error("write failed for " + file.string());
}

Model load_model(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw io_error("cannot open checkpoint " + file.string());
  const std::string source = file.string();
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw parse_error(source + ": not a checkpoint");

  std::vector<std::string> node_labels, edge_labels;
  std::map<TypePair, TypeIndex> rule;
  bool rule_present = false;
  std::map<std::string, std::string> scalars;
  std::string config_text;
  Model m;
  std::string manifest;
  while (std::getline(in, line)) {
    if (line.rfind("tensors ", 0) == 0) {
      manifest = line;
      break;
    }
    auto cols = split_tabs(line);
    const std::string& key = cols[0];
    if (key == "node_types") {
      node_labels.assign(cols.begin() + 1, cols.end());
    } else if (key == "edge_types") {
      edge_labels.assign(cols.begin() + 1, cols.end());
    } else if (key == "edge_rule_present") {
      rule_present = cols.size() == 2 && cols[1] == "true";
    } else if (key == "edge_rule" && cols.size() == 4) {
      rule[TypePair::of(static_cast<TypeIndex>(to_size(key, cols[1])),
                        static_cast<TypeIndex>(to_size(key, cols[2])))] =
          static_cast<TypeIndex>(to_size(key, cols[3]));
    } else if (key == "config" && cols.size() == 2) {
      config_text += cols[1] + "\n";
    } else if (key == "node" && cols.size() == 3) {
      m.external_ids.push_back(cols[1]);
      m.node_types.push_back(static_cast<TypeIndex>(to_size(key, cols[2])));
    } else if (cols.size() == 2) {
      scalars[key] = cols[1];
    } else {
      throw parse_error(source + ": bad header line '" + line + "'");
    }
  }
  auto need = [&](const std::string& key) {
    auto it = scalars.find(key);
    if (it == scalars.end()) throw parse_error(source + ": header lacks " + key);
    return to_size(key, it->second);
  };

  m.schema = TypeSchema(node_labels, edge_labels,
                        rule_present ? std::optional(rule) : std::nullopt);
  m.config = TrainConfig::from_text(config_text);
  GeneratorDims dims;
  dims.num_node_types = node_labels.size();
  dims.num_edge_types = edge_labels.size();
  dims.noise_dim = need("noise_dim");
  dims.hidden_dim = need("hidden_dim");
  dims.encode_dim = need("encode_dim");
  dims.embed_dim = need("embed_dim");
  Rng unused(0);
  m.gen = GeneratorParams::create(dims, unused);
  m.disc = DiscriminatorParams::zeros(need("max_len"), dims.num_node_types + 1, dims.embed_dim,
                                      need("disc_hidden_dim"));
  auto emb = ad::zeros({m.node_types.size(), dims.embed_dim});
  read_tensor_body(in, manifest, all_tensors(m, emb), source);
  m.table = EmbeddingTable(dims.embed_dim, emb->data, m.node_types, dims.num_node_types);
  return m;
}

}  // namespace hetgen
