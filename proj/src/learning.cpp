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

#include "evasion/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "evasion/time_metrics.hpp"

namespace evasion {
namespace {

constexpr double kRatioGuard = 1e-9;
constexpr double kMinBeta = 0.01;

LearningState learning_state_with(const GameState& s, const Vec2& gap_dir,
                                  double t_max) {
  const Vec2 to_target = s.target - s.evader;
  const double dist_target = to_target.norm();
  const Vec2 seek = dist_target > 0.0 ? Vec2(to_target / dist_target)
                                      : Vec2(Vec2::Zero());
  // Every capture time is at least (|r| - ell) / (v_e + v_p): the gap cannot
  // close faster than both players running head-on. Pursuers whose bound
  // already exceeds a running minimum cannot change it, so starting from the
  // nearest one prunes most of the quadratic solves.
  const std::size_t n = s.pursuers.size();
  std::size_t nearest = 0;
  double nearest_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d2 = (s.evader - s.pursuers[i]).squaredNorm();
    if (d2 < nearest_sq) {
      nearest = i;
      nearest_sq = d2;
    }
  }
  double psi_c = t_max;
  double psi_a = t_max;
  double psi_s = t_max;
  auto visit = [&](std::size_t i) {
    const KinematicParams k = s.kinematics(i, t_max);
    const double dist = (s.evader - s.pursuers[i]).norm();
    const double bound = (dist - k.ell) / (k.v_e + k.v_p);
    // A pursuer no faster than the evader never catches it fleeing radially.
    const bool flee_escapes = k.v_e >= k.v_p && dist > k.ell;
    if (bound < psi_c && !flee_escapes) {
      psi_c = std::min(psi_c, phi_c(s.evader, s.pursuers[i], k).capped(t_max));
    }
    if (bound < psi_a) {
      psi_a = std::min(
          psi_a, phi_a(s.evader, s.pursuers[i], gap_dir, k).capped(t_max));
    }
    if (bound < psi_s) {
      psi_s = std::min(psi_s,
                       phi_a(s.evader, s.pursuers[i], seek, k).capped(t_max));
    }
  };
  if (n > 0) visit(nearest);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != nearest) visit(i);
  }
  const double psi_t = phi_T(s.evader, s.target, s.v_e);
  const double denom = std::max(psi_t, kRatioGuard);
  LearningState out;
  out.psi << squash(psi_c / denom), squash(psi_a / denom),
      squash(psi_s / denom), psi_t;
  return out;
}

}  // namespace

double squash(double x) { return x <= 0.0 ? 0.0 : std::tanh(x); }

LearningState learning_state(const GameState& s, double t_max) {
  return learning_state_with(s, gap_bisector_direction(s), t_max);
}

double heading(const GameState& s, EvaderAction a) {
  const Vec2 to_target = s.target - s.evader;
  const double d = to_target.norm();
  if (!(d > 0.0)) throw DegenerateInputError("heading: evader is at the target");
  return std::clamp(realize_evader_action(a, s).dot(to_target) / d, -1.0, 1.0);
}

std::pair<GameState, LearningState> transition(const GameState& s,
                                               PursuerAction p, EvaderAction e,
                                               double t_max) {
  const std::vector<Vec2> u_p = realize_pursuer_action(p, s);
  GameState next = step(s, realize_evader_action(e, s), u_p);
  LearningState psi = learning_state(next, t_max);
  return {std::move(next), psi};
}

FeatureVector features(const GameState& s, PursuerAction p, EvaderAction e,
                       double t_max) {
  const LearningState next = transition(s, p, e, t_max).second;
  FeatureVector z;
  z.zeta << heading(s, e), next.psi.head<3>();
  return z;
}

double reward(const LearningState& psi, const FeatureVector& zeta,
              const GameStatus& successor_status) {
  double terminal = 0.0;
  if (successor_status.is_target_reached()) terminal = 1.0;
  if (successor_status.is_captured()) terminal = -1.0;
  return zeta.heading() + (zeta(3) - psi(2)) + terminal;
}

Eigen::Vector4d td_update(const WeightVector& w, const FeatureVector& zeta,
                          double reward, double v_next, double gamma,
                          double alpha) {
  const double delta = reward + gamma * v_next - q_value(w, zeta);
  return alpha * delta * zeta.zeta;
}

Eigen::Matrix<double, 2, 4> ActionExpansion::q_matrix(
    const WeightVector& w) const {
  Eigen::Matrix<double, 2, 4> m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = w.w.dot(zeta[i][j].zeta);
  }
  return m;
}

ActionExpansion expand_actions(const GameState& s, double t_max) {
  const StageInputs in = realize_all_actions(s);
  const Vec2 to_target = s.target - s.evader;
  const double d = to_target.norm();
  ActionExpansion out;
  for (int j = 0; j < 4; ++j) {
    const double h =
        d > 0.0 ? std::clamp(in.evader[j].dot(to_target) / d, -1.0, 1.0) : 0.0;
    for (int i = 0; i < 2; ++i) {
      out.successor[i][j] = step(s, in.evader[j], in.pursuers[i]);
      out.next_state[i][j] = learning_state(out.successor[i][j], t_max);
      out.zeta[i][j].zeta << h, out.next_state[i][j].psi.head<3>();
    }
  }
  return out;
}

int TrainingConfig::max_stage() const {
  return derive_max_stage(t_max, grid_size, v_e, dt);
}

double TrainingConfig::effective_beta_decay() const {
  if (beta_decay >= 0.0) return beta_decay;
  return std::max(0.0, (beta - kMinBeta) / n_train);
}

void TrainingConfig::validate() const {
  auto fail = [](const char* what) { throw ConfigError(what); };
  if (n_train < 1) fail("n_train must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma must lie in [0, 1]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail("alpha must lie in [0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) fail("beta must lie in [0, 1]");
  if (!(alpha_decay > 0.0 && alpha_decay <= 1.0)) fail("alpha_decay must lie in (0, 1]");
  if (!(tol > 0.0)) fail("tol must be positive");
  if (!(alpha_floor >= 0.0)) fail("alpha_floor must be >= 0");
  if (!(grid_size > 0.0)) fail("grid_size must be positive");
  if (n_pursuers < 1) fail("N must be >= 1");
  if (!(v_e > 0.0 && v_p > 0.0)) fail("speeds must be positive");
  if (!(dt > 0.0 && ell > 0.0 && eps > 0.0)) fail("dt, ell and eps must be positive");
}

std::pair<WeightVector, TrainingLog> train(const TrainingConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  const int max_stage = cfg.max_stage();
  const double t_max = cfg.horizon();
  const int hard_cap = 3 * cfg.n_train;

  WeightVector w;
  for (int k = 0; k < 4; ++k) w.w(k) = uniform01(rng);

  double alpha = cfg.alpha;
  double beta = cfg.beta;
  const double beta_decay = cfg.effective_beta_decay();
  TrainingLog log;

  for (int episode = 0; episode < hard_cap; ++episode) {
    GameState s = random_state(static_cast<std::size_t>(cfg.n_pursuers),
                               cfg.grid_size, cfg.v_e, cfg.v_p, cfg.dt, cfg.ell,
                               cfg.eps, max_stage, rng);
    LearningState psi = learning_state(s, t_max);
    ActionExpansion here = expand_actions(s, t_max);
    double max_dw = 0.0;

    while (status(s).is_ongoing()) {
      const GameSolution stage = solve_zero_sum(here.q_matrix(w));
      std::size_t e;
      if (uniform01(rng) < beta) {
        e = static_cast<std::size_t>(rng() % kEvaderActions.size());
      } else {
        e = sample_strategy(stage.evader_strategy, rng);
      }
      const std::size_t p = sample_strategy(stage.pursuer_strategy, rng);

      const FeatureVector& zeta = here.zeta[p][e];
      GameState next = here.successor[p][e];
      const LearningState next_psi = here.next_state[p][e];
      const GameStatus next_pos = position_status(next);
      const double r = reward(psi, zeta, next_pos);

      ActionExpansion there = expand_actions(next, t_max);
      const double v_next = solve_zero_sum(there.q_matrix(w)).value;

      const Eigen::Vector4d dw = td_update(w, zeta, r, v_next, cfg.gamma, alpha);
      w.w += dw;
      max_dw = std::max(max_dw, dw.norm());
      if (!w.w.allFinite()) {
        log.final_weights = w;
        std::ostringstream os;
        os << "training diverged in episode " << episode << " at stage "
           << s.stage;
        throw TrainingDivergenceError(os.str(), std::move(log));
      }

      s = std::move(next);
      psi = next_psi;
      here = std::move(there);
    }

    log.episodes.push_back(
        {episode, status(s).kind, s.stage, max_dw, alpha, beta});
    alpha = std::max(alpha * cfg.alpha_decay, cfg.alpha_floor);
    beta = std::max(beta - beta_decay, kMinBeta);

    if (episode + 1 >= cfg.n_train && max_dw <= cfg.tol) break;
  }
  log.final_weights = w;
  return {w, std::move(log)};
}

}  // namespace evasion
