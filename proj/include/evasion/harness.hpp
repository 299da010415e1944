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

#ifndef EVASION_HARNESS_HPP_
#define EVASION_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "evasion/engine.hpp"
#include "evasion/learning.hpp"

namespace evasion {

enum class Method { kM1, kM2, kM3 };
enum class PursuerPolicy { kRelayOnly, kMatrixSampled };

std::string_view label(Method m);  // "M1", "M2", "M3"
Method parse_method(std::string_view s);  // accepts m1/M1/M-1 ...; ConfigError
PursuerPolicy parse_pursuer_policy(std::string_view s);

struct ExperimentConfig {
  Method method = Method::kM2;
  PursuerPolicy pursuer_policy = PursuerPolicy::kRelayOnly;
  int n_pursuers = 5;
  double v_e = 0.9;
  double v_p = 1.0;
  double grid_size = 10.0;
  int episodes = 1000;
  std::uint64_t seed = 0;
  double dt = 0.01;
  double ell = 0.01;
  double eps = 0.01;
  // Nonpositive: derived from the grid as for training.
  double t_max = -1.0;
  std::optional<std::string> weights_path;
  // Worker threads for run_batch; 0 picks the hardware concurrency.
  int threads = 1;

  int max_stage() const { return derive_max_stage(t_max, grid_size, v_e, dt); }
  double horizon() const { return max_stage() * dt; }
  // Throws ConfigError.
  void validate() const;
};

struct StageRow {
  int k = 0;
  double t = 0.0;
  Vec2 evader = Vec2::Zero();
  std::vector<Vec2> pursuers;
  std::string action_e;  // empty on the terminal row
  std::string action_p;
  double game_value = 0.0;  // NaN on the terminal row
  GameStatus status;
};

struct EpisodeRecord {
  std::vector<StageRow> rows;
  GameStatus final_status;
  int steps = 0;
  // A stage payoff could not be formed; scored as a capture.
  bool degenerate = false;
  Vec2 target = Vec2::Zero();
  double ell = 0.0;
  double eps = 0.0;
};

struct SummaryStats {
  Method method = Method::kM2;
  int n_pursuers = 0;
  double v_e = 0.0;
  int episodes = 0;
  int captured = 0;
  int reached = 0;
  int timed_out = 0;
  double captured_pct = 0.0;
  double reached_pct = 0.0;
  double timed_out_pct = 0.0;
  // NaN when no episode reached the target.
  double mean_steps_to_target = 0.0;
};

struct BatchResult {
  SummaryStats stats;
  std::vector<GameStatus::Kind> outcomes;  // by episode index
  std::vector<int> steps;
};

// Plays one episode. `w` is required for M1.
EpisodeRecord run_episode(const ExperimentConfig& cfg, const GameState& init,
                          const WeightVector* w, std::mt19937_64& rng);

// Generator for episode `index`, independent of every other episode.
std::mt19937_64 episode_rng(std::uint64_t seed, std::uint64_t index);

// Initial condition for an episode drawn from the config's grid.
GameState initial_state(const ExperimentConfig& cfg, std::mt19937_64& rng);

BatchResult run_batch(const ExperimentConfig& cfg, const WeightVector* w);

SummaryStats summarize(const ExperimentConfig& cfg,
                       const std::vector<GameStatus::Kind>& outcomes,
                       const std::vector<int>& steps);

struct BenchRow {
  int n_pursuers = 0;
  double m1_median_us = 0.0;
  double m2_median_us = 0.0;
};

// Median wall time to build and solve one stage game of each kind on random
// 10-unit-grid states with unit speeds.
std::vector<BenchRow> bench_solver(const std::vector<int>& n_values,
                                   int repeats, std::uint64_t seed = 0);

}  // namespace evasion

#endif  // EVASION_HARNESS_HPP_
