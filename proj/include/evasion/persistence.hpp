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

#ifndef EVASION_PERSISTENCE_HPP_
#define EVASION_PERSISTENCE_HPP_

#include <string>

#include "evasion/learning.hpp"

namespace evasion {

// Weight file with the wrong number of weights.
class DimensionError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Build identifier recorded in weight files (git describe at configure time).
const char* version_string();

// {"w": [4 numbers], "meta": {"config": {...}, "version": string}}
std::string weights_to_json(const WeightVector& w, const TrainingConfig& meta);
WeightVector weights_from_json(const std::string& text);

// Throw IoError on unreadable/unwritable paths, ParseError on bad content.
void save_weights(const WeightVector& w, const TrainingConfig& meta,
                  const std::string& path);
WeightVector load_weights(const std::string& path);

}  // namespace evasion

#endif  // EVASION_PERSISTENCE_HPP_
