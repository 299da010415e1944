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

#ifndef EVASION_TYPES_HPP_
#define EVASION_TYPES_HPP_

#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace evasion {

using Vec2 = Eigen::Vector2d;

// Error hierarchy. Each leaf maps onto one CLI exit code class.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite or out-of-domain numeric input.
class InputDomainError : public Error {
 public:
  using Error::Error;
};

// Geometrically undefined request, e.g. heading toward a target the evader
// already occupies.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// The N x (N+1) payoff has no evasion component to normalize by.
class DegenerateStageError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Uniform double in [0, 1) from the top 53 bits of one draw. Spelled out
// rather than using std::uniform_real_distribution so draws are identical
// across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool is_finite(const Vec2& v) { return v.allFinite(); }

}  // namespace evasion

#endif  // EVASION_TYPES_HPP_
