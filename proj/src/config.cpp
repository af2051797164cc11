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

#include "hetgen/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "hetgen/error.hpp"
#include "hetgen/text.hpp"

namespace hetgen {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw usage_error("config key " + key + ": expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  in.imbue(std::locale::classic());
  double out = 0.0;
  if (!(in >> out) || !in.eof()) {
    throw usage_error("config key " + key + ": expected a number, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw usage_error("config key " + key + ": expected true or false, got '" + v + "'");
}

std::string real_text(double x) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  out << x;
  return out.str();
}

struct Field {
  std::function<void(TrainConfig&, const std::string&)> set;
  std::function<std::string(const TrainConfig&)> get;
};

template <typename T>
Field size_field(T TrainConfig::*member) {
  return {[member](TrainConfig& c, const std::string& v) {
            c.*member = static_cast<T>(parse_uint("", v));
          },
          [member](const TrainConfig& c) { return std::to_string(c.*member); }};
}

Field real_field(double TrainConfig::*member) {
  return {[member](TrainConfig& c, const std::string& v) { c.*member = parse_real("", v); },
          [member](const TrainConfig& c) { return real_text(c.*member); }};
}

Field bool_field(bool TrainConfig::*member) {
  return {[member](TrainConfig& c, const std::string& v) { c.*member = parse_bool("", v); },
          [member](const TrainConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}

// Ordered as written by to_text().
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"seed", size_field(&TrainConfig::seed)},
      {"train_fraction", real_field(&TrainConfig::train_fraction)},
      {"embed_dim", size_field(&TrainConfig::embed_dim)},
      {"embed_window", size_field(&TrainConfig::embed_window)},
      {"embed_negatives", size_field(&TrainConfig::embed_negatives)},
      {"embed_epochs", size_field(&TrainConfig::embed_epochs)},
      {"embed_lr", real_field(&TrainConfig::embed_lr)},
      {"embed_walks_per_node", size_field(&TrainConfig::embed_walks_per_node)},
      {"embed_walk_length", size_field(&TrainConfig::embed_walk_length)},
      {"embed_radius", real_field(&TrainConfig::embed_radius)},
      {"noise_dim", size_field(&TrainConfig::noise_dim)},
      {"hidden_dim", size_field(&TrainConfig::hidden_dim)},
      {"encode_dim", size_field(&TrainConfig::encode_dim)},
      {"disc_hidden_dim", size_field(&TrainConfig::disc_hidden_dim)},
      {"walk_lengths",
       {[](TrainConfig& c, const std::string& v) {
          c.walk_lengths.clear();
          for (const std::string& part : split_on(v, ',')) {
            c.walk_lengths.insert(parse_uint("walk_lengths", trim(part)));
          }
        },
        [](const TrainConfig& c) {
          std::string out;
          for (std::size_t l : c.walk_lengths) {
            if (!out.empty()) out += ',';
            out += std::to_string(l);
          }
          return out;
        }}},
      {"max_len", size_field(&TrainConfig::max_len)},
      {"batch_size", size_field(&TrainConfig::batch_size)},
      {"n_critic", size_field(&TrainConfig::n_critic)},
      {"clip", real_field(&TrainConfig::clip)},
      {"critic_lr", real_field(&TrainConfig::critic_lr)},
      {"generator_lr", real_field(&TrainConfig::generator_lr)},
      {"rms_decay", real_field(&TrainConfig::rms_decay)},
      {"temperature", real_field(&TrainConfig::temperature)},
      {"steps", size_field(&TrainConfig::steps)},
      {"checkpoint_interval", size_field(&TrainConfig::checkpoint_interval)},
      {"edge_loss_weight", real_field(&TrainConfig::edge_loss_weight)},
      {"max_type_resamples", size_field(&TrainConfig::max_type_resamples)},
      {"num_graphs", size_field(&TrainConfig::num_graphs)},
      {"target_edges", size_field(&TrainConfig::target_edges)},
      {"walks_per_edge", size_field(&TrainConfig::walks_per_edge)},
      {"eval_samples", size_field(&TrainConfig::eval_samples)},
      {"single_long_walk", bool_field(&TrainConfig::single_long_walk)},
      {"uniform_node_sampling", bool_field(&TrainConfig::uniform_node_sampling)},
      {"probabilistic_assembler", bool_field(&TrainConfig::probabilistic_assembler)},
  };
  return table;
}

const Field& find_field(const std::string& key) {
  for (const auto& [name, field] : fields()) {
    if (name == key) return field;
  }
  throw usage_error("unknown config key '" + key + "'");
}

}  // namespace

void TrainConfig::set(const std::string& key, const std::string& value) {
  const Field& f = find_field(key);
  try {
    f.set(*this, trim(value));
  } catch (const Error& e) {
    throw usage_error("config key " + key + ": " + e.what());
  }
}

std::string TrainConfig::get(const std::string& key) const { return find_field(key).get(*this); }

std::string TrainConfig::to_text() const {
  std::string out;
  for (const auto& [name, field] : fields()) out += name + "=" + field.get(*this) + "\n";
  return out;
}

TrainConfig TrainConfig::from_text(const std::string& text) {
  TrainConfig cfg;
  cfg.apply_text(text);
  return cfg;
}

void TrainConfig::apply_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw usage_error("config line " + std::to_string(line_no) + ": expected key=value");
    }
    set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

TrainConfig TrainConfig::from_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw io_error("cannot open config " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

void TrainConfig::finalize() {
  if (single_long_walk) {
    walk_lengths = {8};
    max_len = 9;
  }
  validate();
}

void TrainConfig::validate() const {
  auto positive = [](const char* name, double v) {
    if (!(v > 0.0)) throw usage_error(std::string(name) + " must be positive");
  };
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw usage_error("train_fraction must lie in (0, 1)");
  }
  positive("embed_dim", static_cast<double>(embed_dim));
  if (embed_dim < 2) throw usage_error("embed_dim must be at least 2");
  positive("embed_negatives", static_cast<double>(embed_negatives));
  positive("embed_lr", embed_lr);
  positive("embed_walks_per_node", static_cast<double>(embed_walks_per_node));
  positive("embed_walk_length", static_cast<double>(embed_walk_length));
  if (!(embed_radius >= 0.0)) throw usage_error("embed_radius must be >= 0");
  positive("noise_dim", static_cast<double>(noise_dim));
  positive("hidden_dim", static_cast<double>(hidden_dim));
  positive("encode_dim", static_cast<double>(encode_dim));
  positive("disc_hidden_dim", static_cast<double>(disc_hidden_dim));
  if (max_len < 2) throw usage_error("max_len must be at least 2");
  if (walk_lengths.empty()) throw usage_error("walk_lengths must not be empty");
  for (std::size_t l : walk_lengths) {
    if (l < 1 || l > max_len - 1) throw usage_error("walk_lengths must lie in [1, max_len - 1]");
  }
  positive("batch_size", static_cast<double>(batch_size));
  positive("n_critic", static_cast<double>(n_critic));
  positive("clip", clip);
  if (critic_lr < 0.0 || generator_lr < 0.0) throw usage_error("learning rates must be >= 0");
  if (!(rms_decay > 0.0 && rms_decay < 1.0)) throw usage_error("rms_decay must lie in (0, 1)");
  positive("temperature", temperature);
  positive("checkpoint_interval", static_cast<double>(checkpoint_interval));
  positive("num_graphs", static_cast<double>(num_graphs));
  positive("walks_per_edge", static_cast<double>(walks_per_edge));
  positive("eval_samples", static_cast<double>(eval_samples));
}

}  // namespace hetgen
