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

#include "evasion/persistence.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#ifndef EVASION_VERSION
#define EVASION_VERSION "unknown"
#endif

namespace evasion {
namespace {

using nlohmann::json;

json config_json(const TrainingConfig& c) {
  return json{{"n_train", c.n_train},       {"alpha", c.alpha},
              {"gamma", c.gamma},           {"beta", c.beta},
              {"alpha_decay", c.alpha_decay}, {"beta_decay", c.effective_beta_decay()},
              {"tol", c.tol},               {"alpha_floor", c.alpha_floor},
              {"grid_size", c.grid_size},   {"N", c.n_pursuers},
              {"v_e", c.v_e},               {"v_p", c.v_p},
              {"dt", c.dt},                 {"ell", c.ell},
              {"eps", c.eps},               {"t_max", c.horizon()},
              {"seed", c.seed}};
}

}  // namespace

const char* version_string() { return EVASION_VERSION; }

std::string weights_to_json(const WeightVector& w, const TrainingConfig& meta) {
  json doc;
  doc["w"] = json::array({w(0), w(1), w(2), w(3)});
  doc["meta"] = json{{"config", config_json(meta)}, {"version", version_string()}};
  return doc.dump(2) + "\n";
}

WeightVector weights_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("weights file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("weights file: top level must be an object");
  if (!doc.contains("w")) throw ParseError("weights file: missing field 'w'");
  const json& arr = doc["w"];
  if (!arr.is_array()) throw ParseError("weights file: field 'w' must be an array");
  if (arr.size() != 4) {
    throw DimensionError("weights file: field 'w' must hold 4 numbers, found " +
                         std::to_string(arr.size()));
  }
  WeightVector w;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!arr[k].is_number()) {
      throw ParseError("weights file: field 'w[" + std::to_string(k) +
                       "]' is not a number");
    }
    w.w(static_cast<Eigen::Index>(k)) = arr[k].get<double>();
  }
  if (!doc.contains("meta") || !doc["meta"].is_object()) {
    throw ParseError("weights file: missing field 'meta'");
  }
  const json& meta = doc["meta"];
  if (!meta.contains("config") || !meta["config"].is_object()) {
    throw ParseError("weights file: missing field 'meta.config'");
  }
  if (!meta.contains("version") || !meta["version"].is_string()) {
    throw ParseError("weights file: missing field 'meta.version'");
  }
  return w;
}

void save_weights(const WeightVector& w, const TrainingConfig& meta,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write weights file '" + path + "'");
  out << weights_to_json(w, meta);
  if (!out) throw IoError("failed writing weights file '" + path + "'");
}

WeightVector load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read weights file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return weights_from_json(ss.str());
}

}  // namespace evasion
