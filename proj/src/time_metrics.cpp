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

#include "evasion/time_metrics.hpp"

#include <algorithm>
#include <cmath>

namespace evasion {
namespace {

constexpr double kLinearTolerance = 1e-12;

void check_finite(const Vec2& r, const Vec2& u_e, const KinematicParams& p) {
  // A NaN or infinity anywhere survives the sum.
  const double probe = r.x() + r.y() + u_e.x() + u_e.y() + p.v_e + p.v_p + p.ell;
  if (!std::isfinite(probe)) {
    throw InputDomainError("time metric: non-finite input");
  }
  if (p.v_e < 0.0 || p.v_p < 0.0 || p.ell < 0.0) {
    throw InputDomainError("time metric: negative speed or capture radius");
  }
}

// Smallest nonnegative root of a x^2 + b x + c = 0 with c > 0.
TimeToEvent smallest_nonnegative_root(double a, double b, double c) {
  if (std::abs(a) < kLinearTolerance) {
    if (b >= 0.0) return TimeToEvent::unreachable();
    return TimeToEvent::finite(-c / b);
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return TimeToEvent::unreachable();
  const double sign_b = b >= 0.0 ? 1.0 : -1.0;
  const double q = -0.5 * (b + sign_b * std::sqrt(disc));
  // q is nonzero: c > 0 rules out b == 0 together with disc == 0.
  const double r1 = q / a;
  const double r2 = c / q;
  const double lo = std::min(r1, r2);
  const double hi = std::max(r1, r2);
  if (lo >= 0.0) return TimeToEvent::finite(lo);
  if (hi >= 0.0) return TimeToEvent::finite(hi);
  return TimeToEvent::unreachable();
}

}  // namespace

bool KinematicParams::valid() const {
  return v_e > 0.0 && v_p > 0.0 && ell > 0.0 && t_max > 0.0 &&
         std::isfinite(v_e) && std::isfinite(v_p) && std::isfinite(ell) &&
         std::isfinite(t_max) && ell < t_max * std::min(v_e, v_p);
}

TimeToEvent TimeToEvent::finite(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw InputDomainError("TimeToEvent: finite value must be >= 0");
  }
  return TimeToEvent(t);
}

double TimeToEvent::capped(double t_max) const {
  return value_ ? std::min(*value_, t_max) : t_max;
}

TimeToEvent solve_capture_quadratic(const Vec2& r, const Vec2& u_e,
                                    const KinematicParams& params) {
  check_finite(r, u_e, params);
  const double rr = r.squaredNorm();
  const double ell = params.ell;
  if (rr <= ell * ell) return TimeToEvent::finite(0.0);

  const double a = params.v_e * params.v_e - params.v_p * params.v_p;
  const double b = 2.0 * (params.v_e * r.dot(u_e) - ell * params.v_p);
  const double c = rr - ell * ell;
  return smallest_nonnegative_root(a, b, c);
}

TimeToEvent phi_c(const Vec2& x_e, const Vec2& x_i,
                  const KinematicParams& params) {
  const Vec2 r = x_e - x_i;
  const double dist = r.norm();
  if (dist <= params.ell) {
    check_finite(r, Vec2::Zero(), params);
    return TimeToEvent::finite(0.0);
  }
  return solve_capture_quadratic(r, r / dist, params);
}

TimeToEvent phi_a(const Vec2& x_e, const Vec2& x_i, const Vec2& u_e,
                  const KinematicParams& params) {
  return solve_capture_quadratic(x_e - x_i, u_e, params);
}

TimeToEvent phi_s(const Vec2& x_e, const Vec2& x_i, const Vec2& x_T,
                  const KinematicParams& params) {
  const Vec2 to_target = x_T - x_e;
  const double dist = to_target.norm();
  if (!(dist > 0.0)) {
    if (!is_finite(to_target)) throw InputDomainError("phi_s: non-finite input");
    throw DegenerateInputError("phi_s: evader is at the target");
  }
  return solve_capture_quadratic(x_e - x_i, to_target / dist, params);
}

double phi_T(const Vec2& x_e, const Vec2& x_T, double v_e) {
  if (!is_finite(x_e) || !is_finite(x_T) || !std::isfinite(v_e)) {
    throw InputDomainError("phi_T: non-finite input");
  }
  if (!(v_e > 0.0)) throw InputDomainError("phi_T: v_e must be positive");
  return (x_T - x_e).norm() / v_e;
}

}  // namespace evasion
