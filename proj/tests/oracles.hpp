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

// Slow, independent reference computations used only by the tests. Nothing
// here calls into the library's geometry or solver code.

#ifndef EVASION_TESTS_ORACLES_HPP_
#define EVASION_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec2 = Eigen::Vector2d;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Constant-bearing intercept, simulated.
//
// The pursuer starts at the origin, the evader at r and runs along u at v_e.
// A pursuer committing to a fixed heading h at full speed is at v_p t h; the
// best such heading for a meeting at time t points at the evader's position
// then, leaving a miss distance of |e(t)| - v_p t. Capture is the first time
// that drops to ell. The gap function is convex in t, so the march can stop
// as soon as it is positive and increasing.
struct InterceptOracle {
  double grid = 1e-2;     // time step of the march
  // After this many steps the march widens its stride geometrically; slow
  // closers (v_p barely above v_e) can take 1e5 time units to capture.
  long steps_per_stride = 1'000'000;

  std::optional<double> operator()(const Vec2& r, const Vec2& u, double v_e,
                                   double v_p, double ell) const {
    auto pos = [&](double t) -> Vec2 { return r + v_e * t * u; };
    auto gap = [&](double t) { return pos(t).norm() - v_p * t - ell; };
    auto slope = [&](double t) {
      const Vec2 e = pos(t);
      const double d = e.norm();
      return (d > 0.0 ? e.dot(v_e * u) / d : -v_e) - v_p;
    };
    if (gap(0.0) <= 0.0) return 0.0;

    double t0 = 0.0;
    double h = grid;
    for (long k = 1; t0 < 1e15; ++k) {
      if (k % steps_per_stride == 0) h *= 2.0;
      const double t1 = t0 + h;
      if (gap(t1) <= 0.0) return bisect(gap, t0, t1);
      // A dip strictly inside the step would be missed by the march.
      if (slope(t0) < 0.0 && slope(t1) > 0.0) {
        double a = t0, b = t1;
        for (int it = 0; it < 200; ++it) {
          const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
          if (gap(m1) < gap(m2)) b = m2; else a = m1;
        }
        const double tmin = 0.5 * (a + b);
        if (gap(tmin) <= 0.0) return bisect(gap, t0, tmin);
      }
      if (gap(t1) > 0.0 && slope(t1) >= 0.0) return std::nullopt;
      t0 = t1;
    }
    return std::nullopt;
  }

  template <typename F>
  static double bisect(F&& f, double lo, double hi) {
    // f(lo) > 0 >= f(hi)
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) <= 0.0) hi = mid; else lo = mid;
    }
    return hi;
  }
};

// Explicit heading search: for a trial meeting time, scan pursuer headings on
// a grid and report the closest approach. Used to spot-check the best-heading
// shortcut above.
inline double closest_approach_by_heading_scan(const Vec2& r, const Vec2& u,
                                               double v_e, double v_p,
                                               double t, int headings = 3600) {
  const Vec2 e = r + v_e * t * u;
  double best = std::numeric_limits<double>::infinity();
  double best_th = 0.0;
  for (int k = 0; k < headings; ++k) {
    const double th = kTwoPi * k / headings;
    const double d = (e - v_p * t * Vec2(std::cos(th), std::sin(th))).norm();
    if (d < best) {
      best = d;
      best_th = th;
    }
  }
  double a = best_th - kTwoPi / headings, b = best_th + kTwoPi / headings;
  auto miss = [&](double th) {
    return (e - v_p * t * Vec2(std::cos(th), std::sin(th))).norm();
  };
  for (int it = 0; it < 200; ++it) {
    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (miss(m1) < miss(m2)) b = m2; else a = m1;
  }
  return std::min(best, miss(0.5 * (a + b)));
}

// Residual of the capture polynomial at phi.
inline double capture_residual(const Vec2& r, const Vec2& u, double v_e,
                               double v_p, double ell, double phi) {
  return (v_e * v_e - v_p * v_p) * phi * phi +
         2.0 * (r.dot(v_e * u) - ell * v_p) * phi + r.squaredNorm() -
         ell * ell;
}

// ---------------------------------------------------------------------------
// Largest angular gap, by brute force.
//
// Clearance of a heading is its angular distance to the nearest line of sight
// (pursuer minus evader). The bisector of the largest gap is where clearance
// peaks. Scan at 1e-3 rad, refine every near-maximal peak by ternary search,
// then break ties by the longer bounding line of sight and finally by the
// smaller opening angle.
struct GapOracle {
  double scan_step = 1e-3;
  double tie = 1e-9;

  static double ang_dist(double a, double b) {
    return std::abs(std::remainder(a - b, kTwoPi));
  }

  Vec2 operator()(const Vec2& evader, const std::vector<Vec2>& pursuers) const {
    std::vector<double> ang, dist;
    for (const Vec2& p : pursuers) {
      const Vec2 los = p - evader;
      double a = std::atan2(los.y(), los.x());
      if (a < 0.0) a += kTwoPi;
      ang.push_back(a);
      dist.push_back(los.norm());
    }
    auto clearance = [&](double th) {
      double c = std::numeric_limits<double>::infinity();
      for (double a : ang) c = std::min(c, ang_dist(th, a));
      return c;
    };

    const int n = static_cast<int>(std::ceil(kTwoPi / scan_step));
    std::vector<double> val(n);
    double top = -1.0;
    for (int k = 0; k < n; ++k) {
      val[k] = clearance(k * scan_step);
      top = std::max(top, val[k]);
    }
    struct Peak {
      double theta, clearance, reach, opening;
    };
    std::vector<Peak> peaks;
    for (int k = 0; k < n; ++k) {
      const double prev = val[(k + n - 1) % n], next = val[(k + 1) % n];
      if (val[k] < top - 4.0 * scan_step) continue;
      if (val[k] < prev || val[k] < next) continue;
      double a = (k - 2) * scan_step, b = (k + 2) * scan_step;
      for (int it = 0; it < 200; ++it) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (clearance(m1) < clearance(m2)) a = m1; else b = m2;
      }
      double th = std::fmod(0.5 * (a + b) + kTwoPi, kTwoPi);
      const double c = clearance(th);
      double reach = 0.0;
      for (std::size_t i = 0; i < ang.size(); ++i) {
        if (std::abs(ang_dist(th, ang[i]) - c) <= 1e-7) {
          reach = std::max(reach, dist[i]);
        }
      }
      const double opening = std::fmod(th - c + 2.0 * kTwoPi, kTwoPi);
      bool dup = false;
      for (const Peak& p : peaks) dup |= ang_dist(p.theta, th) < 1e-6;
      if (!dup) peaks.push_back({th, c, reach, opening});
    }
    double best_c = -1.0;
    for (const Peak& p : peaks) best_c = std::max(best_c, p.clearance);
    const Peak* best = nullptr;
    for (const Peak& p : peaks) {
      if (p.clearance < best_c - tie) continue;
      if (!best || p.reach > best->reach ||
          (p.reach == best->reach && p.opening < best->opening)) {
        best = &p;
      }
    }
    return {std::cos(best->theta), std::sin(best->theta)};
  }
};

inline double angle_between(const Vec2& a, const Vec2& b) {
  return std::abs(std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b)));
}

// ---------------------------------------------------------------------------
// Matrix games. Rows minimize, columns maximize.

struct Bracket {
  double lower, upper;
  double mid() const { return 0.5 * (lower + upper); }
};

// Fictitious play: each side best-responds to the other's empirical mix.
// The empirical mixes certify lower <= value <= upper at every iteration, so
// the best bounds seen over the run are kept.
inline Bracket fictitious_play(const Eigen::MatrixXd& m, long iterations) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::VectorXd row_total = Eigen::VectorXd::Zero(rows);  // vs evader history
  Eigen::VectorXd col_total = Eigen::VectorXd::Zero(cols);  // vs pursuer history
  Eigen::Index i = 0, j = 0;
  Bracket best{-std::numeric_limits<double>::infinity(),
               std::numeric_limits<double>::infinity()};
  for (long t = 1; t <= iterations; ++t) {
    row_total += m.col(j);
    col_total += m.row(i).transpose();
    const double lo = row_total.minCoeff(&i) / double(t);
    const double hi = col_total.maxCoeff(&j) / double(t);
    best.lower = std::max(best.lower, lo);
    best.upper = std::min(best.upper, hi);
  }
  return best;
}

// Same algorithm specialized to two rows, without temporaries.
inline Bracket fictitious_play_2xn(const Eigen::MatrixXd& m, long iterations) {
  const int cols = static_cast<int>(m.cols());
  std::vector<double> r0(cols), r1(cols), col_total(cols, 0.0);
  for (int j = 0; j < cols; ++j) {
    r0[j] = m(0, j);
    r1[j] = m(1, j);
  }
  double row0 = 0.0, row1 = 0.0;
  int i = 0, j = 0;
  Bracket best{-std::numeric_limits<double>::infinity(),
               std::numeric_limits<double>::infinity()};
  for (long t = 1; t <= iterations; ++t) {
    row0 += r0[j];
    row1 += r1[j];
    const std::vector<double>& played = i == 0 ? r0 : r1;
    double top = -std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int c = 0; c < cols; ++c) {
      col_total[c] += played[c];
      if (col_total[c] > top) {
        top = col_total[c];
        arg = c;
      }
    }
    i = row1 < row0 ? 1 : 0;
    j = arg;
    best.lower = std::max(best.lower, std::min(row0, row1) / double(t));
    best.upper = std::min(best.upper, top / double(t));
  }
  return best;
}

struct Closed2x2 {
  double value;
  double row0;  // probability of row 0
  double col0;  // probability of column 0
  bool pure;
};

inline Closed2x2 solve_2x2(const Eigen::Matrix2d& m) {
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double upper = std::min(std::max(a, b), std::max(c, d));
  const double lower = std::max(std::min(a, c), std::min(b, d));
  if (upper == lower) return {upper, 0.0, 0.0, true};
  const double den = a - b - c + d;
  return {(a * d - b * c) / den, (d - c) / den, (d - b) / den, false};
}

// Spearman rank correlation (no tie handling needed for timings).
inline double spearman(const std::vector<double>& x,
                       const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = double(k);
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double n = double(x.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace oracle

#endif  // EVASION_TESTS_ORACLES_HPP_
