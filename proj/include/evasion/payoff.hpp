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

#ifndef EVASION_PAYOFF_HPP_
#define EVASION_PAYOFF_HPP_

#include "evasion/engine.hpp"
#include "evasion/learning.hpp"
#include "evasion/zero_sum.hpp"

namespace evasion {

// N x (N+1) payoff without learning. Column j < N evades pursuer j, column N
// seeks the target. Entry = normalized capped intercept time + cos(heading
// to target). Throws DegenerateStageError when every intercept time is 0.
PayoffMatrix build_payoff_m2(const GameState& s, double t_max);

// 2 x 4 payoff without learning: heading + min of the successor's first three
// learning coordinates.
PayoffMatrix build_payoff_m3(const GameState& s, double t_max);

// 2 x 4 learned payoff: w^T zeta(s, p_i, e_j).
PayoffMatrix build_payoff_m1(const GameState& s, const WeightVector& w,
                             double t_max);

}  // namespace evasion

#endif  // EVASION_PAYOFF_HPP_
