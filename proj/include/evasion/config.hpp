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

#ifndef EVASION_CONFIG_HPP_
#define EVASION_CONFIG_HPP_

#include <map>
#include <string>
#include <string_view>

#include "evasion/harness.hpp"
#include "evasion/learning.hpp"

namespace evasion {

// Both views of one flat config file. Shared keys (N, speeds, dt, ...) feed
// both structs.
struct RunConfig {
  TrainingConfig training;
  ExperimentConfig experiment;
};

// `key = value` per line, `#` starts a comment. Unknown or repeated keys and
// unparsable values raise ConfigError naming the key.
RunConfig parse_config(std::string_view text);

// Throws IoError if unreadable.
RunConfig load_config(const std::string& path);

// Every recognized key, in file order of the canonical dump.
const std::vector<std::string>& config_keys();

}  // namespace evasion

#endif  // EVASION_CONFIG_HPP_
