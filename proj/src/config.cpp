// Copyright 2026 The Evasion Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evasion/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace evasion {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_real(const std::string& key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': expected a number, got '" +
                      std::string(v) + "'");
  }
  return out;
}

template <typename Int>
Int to_integer(const std::string& key, std::string_view v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      std::string(v) + "'");
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, std::string_view)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"n_train", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.n_train = to_integer<int>(k, v); }},
      {"alpha", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.alpha = to_real(k, v); }},
      {"gamma", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.gamma = to_real(k, v); }},
      {"beta", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.beta = to_real(k, v); }},
      {"alpha_decay", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.alpha_decay = to_real(k, v); }},
      {"beta_decay", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.beta_decay = to_real(k, v); }},
      {"tol", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.tol = to_real(k, v); }},
      {"alpha_floor", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.alpha_floor = to_real(k, v); }},
      {"grid_size", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.grid_size = c.experiment.grid_size = to_real(k, v); }},
      {"train_grid_size", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.grid_size = to_real(k, v); }},
      {"N", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.n_pursuers = c.experiment.n_pursuers = to_integer<int>(k, v); }},
      {"train_N", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.n_pursuers = to_integer<int>(k, v); }},
      {"v_e", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.v_e = c.experiment.v_e = to_real(k, v); }},
      {"v_p", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.v_p = c.experiment.v_p = to_real(k, v); }},
      {"dt", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.dt = c.experiment.dt = to_real(k, v); }},
      {"ell", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.ell = c.experiment.ell = to_real(k, v); }},
      {"eps", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.eps = c.experiment.eps = to_real(k, v); }},
      {"t_max", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.t_max = c.experiment.t_max = to_real(k, v); }},
      {"seed", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.training.seed = c.experiment.seed = to_integer<std::uint64_t>(k, v); }},
      {"method", [](RunConfig& c, const std::string&, std::string_view v) {
         c.experiment.method = parse_method(v); }},
      {"pursuer_policy", [](RunConfig& c, const std::string&, std::string_view v) {
         c.experiment.pursuer_policy = parse_pursuer_policy(v); }},
      {"episodes", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.experiment.episodes = to_integer<int>(k, v); }},
      {"weights_path", [](RunConfig& c, const std::string&, std::string_view v) {
         c.experiment.weights_path = std::string(v); }},
      {"threads", [](RunConfig& c, const std::string& k, std::string_view v) {
         c.experiment.threads = to_integer<int>(k, v); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : setters()) out.push_back(k);
    return out;
  }();
  return keys;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, std::string> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError("config key '" + key + "': empty value");
    const auto& table = setters();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const auto& e) { return e.first == key; });
    if (it == table.end()) throw ConfigError("config: unknown key '" + key + "'");
    if (!entries.emplace(key, std::string(value)).second) {
      throw ConfigError("config: key '" + key + "' given twice");
    }
  }
  // Table order, so train_* overrides land after the shared keys.
  RunConfig cfg;
  for (const auto& [key, set] : setters()) {
    if (const auto it = entries.find(key); it != entries.end()) {
      set(cfg, key, it->second);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace evasion
