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

#ifndef EVASION_TIME_METRICS_HPP_
#define EVASION_TIME_METRICS_HPP_

#include <limits>
#include <optional>

#include "evasion/types.hpp"

namespace evasion {

// Speeds, capture radius and game horizon for one evader/pursuer pair.
struct KinematicParams {
  double v_e = 1.0;
  double v_p = 1.0;
  double ell = 0.01;
  double t_max = 30.0;

  // All strictly positive and ell < t_max * min(v_e, v_p).
  bool valid() const;
};

// Nonnegative time until an event, or the event never happens.
class TimeToEvent {
 public:
  static TimeToEvent finite(double t);
  static TimeToEvent unreachable() { return TimeToEvent(); }

  bool is_finite() const { return value_.has_value(); }
  bool is_unreachable() const { return !value_.has_value(); }

  // Precondition: is_finite().
  double value() const { return *value_; }

  // Unreachable maps to t_max, finite values are clipped at t_max.
  double capped(double t_max) const;

  // +inf for Unreachable; orders Finite before Unreachable.
  double as_real() const {
    return value_ ? *value_ : std::numeric_limits<double>::infinity();
  }

  friend bool operator==(const TimeToEvent&, const TimeToEvent&) = default;

 private:
  TimeToEvent() = default;
  explicit TimeToEvent(double t) : value_(t) {}

  std::optional<double> value_;
};

// Minimum phi >= 0 solving
//   (v_e^2 - v_p^2) phi^2 + 2 (<r, v_e u_e> - ell v_p) phi + <r,r> - ell^2 = 0
// with r = x_e - x_i. The pursuer flies the constant-bearing course that meets
// the evader's straight-line motion along u_e (unit, or zero for a stationary
// evader). Already-captured geometries (|r| <= ell) return Finite(0).
TimeToEvent solve_capture_quadratic(const Vec2& r, const Vec2& u_e,
                                    const KinematicParams& params);

// Evader flees radially away from pursuer i.
TimeToEvent phi_c(const Vec2& x_e, const Vec2& x_i,
                  const KinematicParams& params);

// Evader commits to the unit direction u_e.
TimeToEvent phi_a(const Vec2& x_e, const Vec2& x_i, const Vec2& u_e,
                  const KinematicParams& params);

// Evader heads straight for x_T. Throws DegenerateInputError if x_e == x_T.
TimeToEvent phi_s(const Vec2& x_e, const Vec2& x_i, const Vec2& x_T,
                  const KinematicParams& params);

// Time for the evader to reach x_T ignoring all pursuers.
double phi_T(const Vec2& x_e, const Vec2& x_T, double v_e);

}  // namespace evasion

#endif  // EVASION_TIME_METRICS_HPP_
