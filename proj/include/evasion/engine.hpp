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

#ifndef EVASION_ENGINE_HPP_
#define EVASION_ENGINE_HPP_

#include <array>
#include <cstddef>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "evasion/time_metrics.hpp"
#include "evasion/types.hpp"

namespace evasion {

// Positions and parameters of one stage of the reach-avoid game.
// Treated as an immutable value: step() returns a new state.
struct GameState {
  Vec2 evader = Vec2::Zero();
  std::vector<Vec2> pursuers;
  Vec2 target = Vec2::Zero();
  double v_e = 1.0;
  std::vector<double> v_p;
  double dt = 0.01;
  double ell = 0.01;
  double eps = 0.01;
  int stage = 0;
  int max_stage = 1000;

  std::size_t num_pursuers() const { return pursuers.size(); }

  // Pairwise parameters for the evader against pursuer i.
  KinematicParams kinematics(std::size_t i, double t_max) const {
    return {v_e, v_p[i], ell, t_max};
  }

  // Throws InputDomainError when structural invariants are broken.
  void validate() const;
};

// Uniform-speed convenience constructor.
GameState make_state(const Vec2& evader, std::vector<Vec2> pursuers,
                     const Vec2& target, double v_e, double v_p, double dt,
                     double ell, double eps, int max_stage);

enum class PursuerAction { kRelay, kAllPursue };
enum class EvaderAction { kEvadeNearest, kGapBisector, kSeekTarget, kNormal };

inline constexpr std::array<PursuerAction, 2> kPursuerActions = {
    PursuerAction::kRelay, PursuerAction::kAllPursue};
inline constexpr std::array<EvaderAction, 4> kEvaderActions = {
    EvaderAction::kEvadeNearest, EvaderAction::kGapBisector,
    EvaderAction::kSeekTarget, EvaderAction::kNormal};

std::string_view label(PursuerAction a);  // "p1", "p2"
std::string_view label(EvaderAction a);   // "e1" .. "e4"

struct GameStatus {
  enum class Kind { kOngoing, kCaptured, kTargetReached, kTimedOut };

  Kind kind = Kind::kOngoing;
  std::size_t pursuer = 0;  // capturing pursuer, 0-based; kCaptured only

  static GameStatus ongoing() { return {}; }
  static GameStatus captured(std::size_t i) { return {Kind::kCaptured, i}; }
  static GameStatus target_reached() { return {Kind::kTargetReached, 0}; }
  static GameStatus timed_out() { return {Kind::kTimedOut, 0}; }

  bool is_ongoing() const { return kind == Kind::kOngoing; }
  bool is_captured() const { return kind == Kind::kCaptured; }
  bool is_target_reached() const { return kind == Kind::kTargetReached; }
  bool is_timed_out() const { return kind == Kind::kTimedOut; }

  friend bool operator==(const GameStatus&, const GameStatus&) = default;
};

std::string_view label(GameStatus::Kind k);  // "ongoing", "captured", ...

// Capture (lowest index first) beats target arrival, which beats timeout.
GameStatus status(const GameState& s);

// Capture or target arrival, ignoring the stage limit.
GameStatus position_status(const GameState& s);

// Relay assignment: smallest phi_c, Unreachable after all finite values.
// Ties fall back to Euclidean distance, then to the lowest index.
std::size_t active_pursuer(const GameState& s);

// Unit (or zero) input for every pursuer.
std::vector<Vec2> realize_pursuer_action(PursuerAction a, const GameState& s);

// Unit input for the evader.
Vec2 realize_evader_action(EvaderAction a, const GameState& s);

// Bisector of the widest angular gap between the pursuers' lines of sight,
// as seen from the evader. Equal gaps prefer the one bounded by the longer
// line of sight, then the lowest gap in counterclockwise order from angle 0.
Vec2 gap_bisector_direction(const GameState& s);

// Every pursuer-group and evader input for one stage, with the relay
// assignment computed once.
struct StageInputs {
  std::size_t active = 0;
  std::array<std::vector<Vec2>, 2> pursuers;  // indexed like kPursuerActions
  std::array<Vec2, 4> evader;                 // indexed like kEvaderActions
};

StageInputs realize_all_actions(const GameState& s);

// One forward-Euler stage with piecewise-constant inputs.
GameState step(const GameState& s, const Vec2& u_e, std::span<const Vec2> u_p);

// Stage limit for a horizon: ceil(t_max / dt) when t_max > 0, otherwise
// ceil(3 * grid diagonal / (v_e * dt)).
int derive_max_stage(double t_max, double grid, double v_e, double dt);

// Independent uniform draws in [0, grid]^2 for the evader, each pursuer and
// the target, redrawn until the configuration is not already terminal.
GameState random_state(std::size_t n_pursuers, double grid, double v_e,
                       double v_p, double dt, double ell, double eps,
                       int max_stage, std::mt19937_64& rng);

}  // namespace evasion

#endif  // EVASION_ENGINE_HPP_
