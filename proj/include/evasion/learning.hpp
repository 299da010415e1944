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

#ifndef EVASION_LEARNING_HPP_
#define EVASION_LEARNING_HPP_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "evasion/engine.hpp"
#include "evasion/zero_sum.hpp"

namespace evasion {

// Learning-space coordinates
//   [S(psi_c/psi_T), S(psi_a/psi_T), S(psi_s/psi_T), psi_T]
// with S = tanh on [0, inf). The first three are unitless in [0, 1], the last
// is a time.
struct LearningState {
  Eigen::Vector4d psi = Eigen::Vector4d::Zero();

  double operator()(Eigen::Index i) const { return psi(i); }
};

// Basis of the linear Q approximation: [heading, psi'_1, psi'_2, psi'_3]
// where psi' is the learning state after the joint action.
struct FeatureVector {
  Eigen::Vector4d zeta = Eigen::Vector4d::Zero();

  double operator()(Eigen::Index i) const { return zeta(i); }
  double heading() const { return zeta(0); }
};

struct WeightVector {
  Eigen::Vector4d w = Eigen::Vector4d::Zero();

  double operator()(Eigen::Index i) const { return w(i); }
  friend bool operator==(const WeightVector& a, const WeightVector& b) {
    return a.w == b.w;
  }
};

// Squashing function for time ratios: tanh restricted to x >= 0.
double squash(double x);

LearningState learning_state(const GameState& s, double t_max);

// Cosine between the realized direction of `a` and the line of sight to the
// target, i.e. -d(phi_T)/dt for a unit-speed-normalized evader.
double heading(const GameState& s, EvaderAction a);

std::pair<GameState, LearningState> transition(const GameState& s,
                                               PursuerAction p, EvaderAction e,
                                               double t_max);

FeatureVector features(const GameState& s, PursuerAction p, EvaderAction e,
                       double t_max);

inline double q_value(const WeightVector& w, const FeatureVector& z) {
  return w.w.dot(z.zeta);
}

// Heading + (psi'_3 - psi_3) + terminal term, where the terminal term is
// decided on the successor's position-space status.
double reward(const LearningState& psi, const FeatureVector& zeta,
              const GameStatus& successor_status);

// alpha * (reward + gamma * v_next - q) * zeta
Eigen::Vector4d td_update(const WeightVector& w, const FeatureVector& zeta,
                          double reward, double v_next, double gamma,
                          double alpha);

// The eight joint actions expanded from one state: successor positions,
// successor learning states and features, indexed [pursuer][evader].
struct ActionExpansion {
  std::array<std::array<GameState, 4>, 2> successor;
  std::array<std::array<LearningState, 4>, 2> next_state;
  std::array<std::array<FeatureVector, 4>, 2> zeta;

  // 2 x 4 matrix of w^T zeta.
  Eigen::Matrix<double, 2, 4> q_matrix(const WeightVector& w) const;
};

ActionExpansion expand_actions(const GameState& s, double t_max);

struct TrainingConfig {
  int n_train = 2000;
  double alpha = 0.1;
  double gamma = 0.9;
  double beta = 0.9;
  double alpha_decay = 0.9;
  // Negative: choose so that beta reaches 0.01 after n_train episodes.
  double beta_decay = -1.0;
  double tol = 1e-3;
  double alpha_floor = 1e-4;
  double grid_size = 1.0;
  int n_pursuers = 3;
  double v_e = 1.0;
  double v_p = 1.0;
  double dt = 0.01;
  double ell = 0.01;
  double eps = 0.01;
  // Nonpositive: derived as ceil(3 * grid diagonal / (v_e dt)) stages.
  double t_max = -1.0;
  std::uint64_t seed = 0;

  int max_stage() const;
  double horizon() const { return max_stage() * dt; }
  double effective_beta_decay() const;
  // Throws ConfigError.
  void validate() const;
};

struct EpisodeLog {
  int episode = 0;
  GameStatus::Kind outcome = GameStatus::Kind::kOngoing;
  int steps = 0;
  double max_delta_w = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct TrainingLog {
  std::vector<EpisodeLog> episodes;
  WeightVector final_weights;
};

class TrainingDivergenceError : public SolverError {
 public:
  TrainingDivergenceError(const std::string& what, TrainingLog log)
      : SolverError(what), log_(std::move(log)) {}
  const TrainingLog& log() const { return log_; }

 private:
  TrainingLog log_;
};

// Min-max Q-learning of the linear payoff weights. Runs at least n_train
// episodes and stops once an episode's largest update is within tol, or at
// 3 * n_train episodes.
std::pair<WeightVector, TrainingLog> train(const TrainingConfig& cfg);

}  // namespace evasion

#endif  // EVASION_LEARNING_HPP_
