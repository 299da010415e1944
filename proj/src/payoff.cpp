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

#include "evasion/payoff.hpp"

#include <string>

namespace evasion {
namespace {

void require_live(const GameState& s, const char* who) {
  if (!position_status(s).is_ongoing()) {
    throw DegenerateInputError(std::string(who) + ": state is already terminal");
  }
}

PayoffMatrix with_action_labels(Eigen::MatrixXd entries) {
  PayoffMatrix m;
  m.entries = std::move(entries);
  for (PursuerAction a : kPursuerActions) m.row_labels.emplace_back(label(a));
  for (EvaderAction a : kEvaderActions) m.col_labels.emplace_back(label(a));
  return m;
}

}  // namespace

PayoffMatrix build_payoff_m2(const GameState& s, double t_max) {
  require_live(s, "build_payoff_m2");
  const auto n = static_cast<Eigen::Index>(s.num_pursuers());
  const Vec2 to_target = s.target - s.evader;
  const Vec2 seek = to_target.normalized();

  std::vector<Vec2> evade(static_cast<std::size_t>(n + 1));
  for (Eigen::Index j = 0; j < n; ++j) {
    evade[j] = (s.evader - s.pursuers[j]).normalized();
  }
  evade[n] = seek;

  Eigen::MatrixXd capture(n, n + 1);
  Eigen::RowVectorXd toward(n + 1);
  for (Eigen::Index j = 0; j <= n; ++j) toward(j) = evade[j].dot(seek);
  for (Eigen::Index i = 0; i < n; ++i) {
    const KinematicParams k = s.kinematics(static_cast<std::size_t>(i), t_max);
    for (Eigen::Index j = 0; j <= n; ++j) {
      capture(i, j) = phi_a(s.evader, s.pursuers[i], evade[j], k).capped(t_max);
    }
  }
  const double longest = capture.maxCoeff();
  if (!(longest > 0.0)) {
    throw DegenerateStageError("build_payoff_m2: every capture time is zero");
  }

  PayoffMatrix m;
  m.entries = capture / longest + toward.replicate(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.row_labels.push_back("pursue_" + std::to_string(i + 1));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    m.col_labels.push_back("evade_" + std::to_string(j + 1));
  }
  m.col_labels.emplace_back("seek_target");
  return m;
}

PayoffMatrix build_payoff_m3(const GameState& s, double t_max) {
  require_live(s, "build_payoff_m3");
  const ActionExpansion x = expand_actions(s, t_max);
  Eigen::MatrixXd entries(2, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Eigen::Vector4d& z = x.zeta[i][j].zeta;
      entries(i, j) = z(0) + z.tail<3>().minCoeff();
    }
  }
  return with_action_labels(std::move(entries));
}

PayoffMatrix build_payoff_m1(const GameState& s, const WeightVector& w,
                             double t_max) {
  require_live(s, "build_payoff_m1");
  return with_action_labels(expand_actions(s, t_max).q_matrix(w));
}

}  // namespace evasion
