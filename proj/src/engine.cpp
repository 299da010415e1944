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

#include "evasion/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace evasion {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGapTieTolerance = 1e-9;
// Proxy window; it holds every gap within 1e-6 rad of the largest.
constexpr double kGapCandidateWindow = 1e-6;

Vec2 unit_or_throw(const Vec2& v, const char* what) {
  const double n = v.norm();
  if (!(n > 0.0)) throw DegenerateInputError(what);
  return v / n;
}

// Monotone stand-in for the polar angle in [0, 2pi), valued in [0, 4).
double pseudo_angle(const Vec2& v) {
  const double x = v.x();
  const double y = v.y();
  const double l1 = std::abs(x) + std::abs(y);
  if (!(l1 > 0.0)) return 0.0;
  if (y >= 0.0) return x >= 0.0 ? y / l1 : 1.0 - x / l1;
  return x < 0.0 ? 2.0 - y / l1 : 3.0 + x / l1;
}

}  // namespace

void GameState::validate() const {
  if (pursuers.empty()) throw InputDomainError("GameState: need N >= 1");
  if (v_p.size() != pursuers.size()) {
    throw InputDomainError("GameState: one speed per pursuer required");
  }
  if (!(dt > 0.0) || !(ell > 0.0) || !(eps > 0.0)) {
    throw InputDomainError("GameState: dt, ell and eps must be positive");
  }
  if (stage < 0 || stage > max_stage) {
    throw InputDomainError("GameState: stage outside [0, max_stage]");
  }
  if (!is_finite(evader) || !is_finite(target)) {
    throw InputDomainError("GameState: non-finite position");
  }
  for (const Vec2& p : pursuers) {
    if (!is_finite(p)) throw InputDomainError("GameState: non-finite position");
  }
}

GameState make_state(const Vec2& evader, std::vector<Vec2> pursuers,
                     const Vec2& target, double v_e, double v_p, double dt,
                     double ell, double eps, int max_stage) {
  GameState s;
  s.evader = evader;
  s.v_p.assign(pursuers.size(), v_p);
  s.pursuers = std::move(pursuers);
  s.target = target;
  s.v_e = v_e;
  s.dt = dt;
  s.ell = ell;
  s.eps = eps;
  s.max_stage = max_stage;
  return s;
}

std::string_view label(PursuerAction a) {
  return a == PursuerAction::kRelay ? "p1" : "p2";
}

std::string_view label(EvaderAction a) {
  switch (a) {
    case EvaderAction::kEvadeNearest: return "e1";
    case EvaderAction::kGapBisector: return "e2";
    case EvaderAction::kSeekTarget: return "e3";
    case EvaderAction::kNormal: return "e4";
  }
  return "?";
}

std::string_view label(GameStatus::Kind k) {
  switch (k) {
    case GameStatus::Kind::kOngoing: return "ongoing";
    case GameStatus::Kind::kCaptured: return "captured";
    case GameStatus::Kind::kTargetReached: return "reached";
    case GameStatus::Kind::kTimedOut: return "timedout";
  }
  return "?";
}

GameStatus position_status(const GameState& s) {
  for (std::size_t i = 0; i < s.pursuers.size(); ++i) {
    if ((s.pursuers[i] - s.evader).norm() <= s.ell) {
      return GameStatus::captured(i);
    }
  }
  if ((s.evader - s.target).norm() <= s.eps) return GameStatus::target_reached();
  return GameStatus::ongoing();
}

GameStatus status(const GameState& s) {
  const GameStatus st = position_status(s);
  if (!st.is_ongoing()) return st;
  if (s.stage >= s.max_stage) return GameStatus::timed_out();
  return st;
}

std::size_t active_pursuer(const GameState& s) {
  std::size_t best = 0;
  double best_time = std::numeric_limits<double>::infinity();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.pursuers.size(); ++i) {
    // The horizon does not enter phi_c. A pursuer no faster than the evader
    // never catches it fleeing radially, so the quadratic is skipped.
    const double d = (s.evader - s.pursuers[i]).norm();
    const double t = s.v_e >= s.v_p[i] && d > s.ell
                         ? std::numeric_limits<double>::infinity()
                         : phi_c(s.evader, s.pursuers[i], s.kinematics(i, 1.0))
                               .as_real();
    if (t < best_time || (t == best_time && d < best_dist)) {
      best = i;
      best_time = t;
      best_dist = d;
    }
  }
  return best;
}

std::vector<Vec2> realize_pursuer_action(PursuerAction a, const GameState& s) {
  std::vector<Vec2> u(s.pursuers.size(), Vec2::Zero());
  auto toward_evader = [&](std::size_t i) {
    return unit_or_throw(s.evader - s.pursuers[i],
                         "pursuer coincides with the evader");
  };
  if (a == PursuerAction::kRelay) {
    const std::size_t i = active_pursuer(s);
    u[i] = toward_evader(i);
  } else {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = toward_evader(i);
  }
  return u;
}

Vec2 gap_bisector_direction(const GameState& s) {
  const std::size_t n = s.pursuers.size();
  std::vector<std::pair<double, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = {pseudo_angle(s.pursuers[i] - s.evader), i};
  }
  std::sort(order.begin(), order.end());

  auto ray = [&](std::size_t k, Vec2* unit) {
    const Vec2 los = s.pursuers[order[k].second] - s.evader;
    const double d = los.norm();
    *unit = d > 0.0 ? Vec2(los / d) : Vec2(1.0, 0.0);
    return d;
  };

  // Gap k opens at ray k and closes at ray k+1 (cyclically). Gaps are ranked
  // by the pseudo-angle of their (cos, sin), which is monotone in the gap;
  // only near-maximal ones pay for atan2. The pseudo-angle span tells which
  // turn a gap is on, since one unit of it covers between 1 and 2 rad.
  Vec2 first;
  const double first_dist = ray(0, &first);
  Vec2 lo = first;
  double lo_dist = first_dist;
  double best_gap = -1.0;
  double best_reach = -1.0;
  double top = -1.0;
  Vec2 best_unit = first;
  struct Candidate {
    double cos, sin, reach;
    double proxy;
    Vec2 unit;
  };
  std::vector<Candidate> near_top;
  for (std::size_t k = 0; k < n; ++k) {
    Vec2 hi;
    double hi_dist;
    if (k + 1 < n) {
      hi_dist = ray(k + 1, &hi);
    } else {
      hi = first;
      hi_dist = first_dist;
    }
    double span = order[(k + 1) % n].first - order[k].first;
    if (k + 1 == n) span += 4.0;
    const double c = lo.dot(hi);
    const double sn = lo.x() * hi.y() - lo.y() * hi.x();
    double proxy = pseudo_angle(Vec2(c, sn));
    if (span < 1.0 && sn < 0.0) proxy = 0.0;    // round-off below zero
    if (span > 3.0 && proxy < 1.0) proxy = 4.0;  // a full turn
    if (proxy >= top - kGapCandidateWindow) {
      top = std::max(top, proxy);
      near_top.push_back({c, sn, std::max(lo_dist, hi_dist), proxy, lo});
    }
    lo = hi;
    lo_dist = hi_dist;
  }

  for (const Candidate& g : near_top) {
    if (g.proxy < top - kGapCandidateWindow) continue;
    double gap;
    if (g.proxy >= 4.0) {
      gap = kTwoPi;
    } else if (g.proxy <= 0.0) {
      gap = 0.0;
    } else {
      gap = std::atan2(g.sin, g.cos);
      if (gap < 0.0) gap += kTwoPi;
    }
    if (gap > best_gap + kGapTieTolerance ||
        (std::abs(gap - best_gap) <= kGapTieTolerance &&
         g.reach > best_reach)) {
      best_gap = gap;
      best_reach = g.reach;
      best_unit = g.unit;
    }
  }
  const double half = 0.5 * best_gap;
  const double c = std::cos(half);
  const double sn = std::sin(half);
  const Vec2 dir(c * best_unit.x() - sn * best_unit.y(),
                 sn * best_unit.x() + c * best_unit.y());
  return dir.normalized();
}

namespace {

Vec2 evader_input(EvaderAction a, const GameState& s, std::size_t active) {
  switch (a) {
    case EvaderAction::kEvadeNearest:
      return unit_or_throw(s.evader - s.pursuers[active],
                           "pursuer coincides with the evader");
    case EvaderAction::kGapBisector:
      return gap_bisector_direction(s);
    case EvaderAction::kSeekTarget:
      return unit_or_throw(s.target - s.evader, "evader is at the target");
    case EvaderAction::kNormal: {
      const Vec2 away = evader_input(EvaderAction::kEvadeNearest, s, active);
      const Vec2 ccw(-away.y(), away.x());
      const double toward = ccw.dot(s.target - s.evader);
      return toward >= -toward ? ccw : Vec2(-ccw);
    }
  }
  throw InputDomainError("unknown evader action");
}

}  // namespace

Vec2 realize_evader_action(EvaderAction a, const GameState& s) {
  const bool needs_relay =
      a == EvaderAction::kEvadeNearest || a == EvaderAction::kNormal;
  return evader_input(a, s, needs_relay ? active_pursuer(s) : 0);
}

StageInputs realize_all_actions(const GameState& s) {
  StageInputs in;
  in.active = active_pursuer(s);
  const std::size_t n = s.pursuers.size();
  in.pursuers[0].assign(n, Vec2::Zero());
  in.pursuers[1].resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.pursuers[1][i] = unit_or_throw(s.evader - s.pursuers[i],
                                      "pursuer coincides with the evader");
  }
  in.pursuers[0][in.active] = in.pursuers[1][in.active];
  for (std::size_t j = 0; j < kEvaderActions.size(); ++j) {
    if (kEvaderActions[j] == EvaderAction::kSeekTarget &&
        (s.target - s.evader).squaredNorm() == 0.0) {
      // Only reachable from a terminal state; hold position.
      in.evader[j] = Vec2::Zero();
      continue;
    }
    in.evader[j] = evader_input(kEvaderActions[j], s, in.active);
  }
  return in;
}

GameState step(const GameState& s, const Vec2& u_e, std::span<const Vec2> u_p) {
  if (u_p.size() != s.pursuers.size()) {
    throw InputDomainError("step: one input per pursuer required");
  }
  GameState next = s;
  next.evader = s.evader + (s.v_e * s.dt) * u_e;
  for (std::size_t i = 0; i < u_p.size(); ++i) {
    next.pursuers[i] = s.pursuers[i] + (s.v_p[i] * s.dt) * u_p[i];
  }
  next.stage = s.stage + 1;
  return next;
}

}  // namespace evasion

namespace evasion {

int derive_max_stage(double t_max, double grid, double v_e, double dt) {
  if (t_max > 0.0) return static_cast<int>(std::ceil(t_max / dt - 1e-9));
  const double diagonal = std::sqrt(2.0) * grid;
  return static_cast<int>(std::ceil(3.0 * diagonal / (v_e * dt)));
}

GameState random_state(std::size_t n_pursuers, double grid, double v_e,
                       double v_p, double dt, double ell, double eps,
                       int max_stage, std::mt19937_64& rng) {
  if (n_pursuers == 0) throw InputDomainError("random_state: need N >= 1");
  auto draw = [&]() {
    const double x = grid * uniform01(rng);
    const double y = grid * uniform01(rng);
    return Vec2(x, y);
  };
  while (true) {
    const Vec2 evader = draw();
    std::vector<Vec2> pursuers(n_pursuers);
    for (Vec2& p : pursuers) p = draw();
    const Vec2 target = draw();
    GameState s = make_state(evader, std::move(pursuers), target, v_e, v_p, dt,
                             ell, eps, max_stage);
    if (position_status(s).is_ongoing()) return s;
  }
}

}  // namespace evasion
