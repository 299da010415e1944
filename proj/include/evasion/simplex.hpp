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

#ifndef EVASION_SIMPLEX_HPP_
#define EVASION_SIMPLEX_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace evasion {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar objective = Scalar(0);
  int iterations = 0;
};

// Dense two-phase tableau simplex for
//
//   maximize    c^T x
//   subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
//
// Meant for the handful-of-rows programs that arise from matrix games; no
// attempt is made at sparsity or refactorization.
template <typename Scalar>
class DenseSimplex {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit DenseSimplex(Scalar tolerance = Scalar(1e-10),
                        int max_iterations = 10000)
      : tol_(tolerance), max_iterations_(max_iterations) {}

  // Optional crash pivots, each {row, column} with rows numbered A_ub first
  // then A_eq, are applied to the starting tableau. When they leave no
  // artificial basic at a feasible point, phase 1 is skipped.
  using Crash = std::vector<std::pair<Eigen::Index, Eigen::Index>>;

  LpResult<Scalar> maximize(const Vector& c, const Matrix& a_ub,
                            const Vector& b_ub, const Matrix& a_eq,
                            const Vector& b_eq, const Crash& crash = {}) {
    const Eigen::Index n = c.size();
    const Eigen::Index m_ub = a_ub.rows();
    const Eigen::Index m_eq = a_eq.rows();
    const Eigen::Index m = m_ub + m_eq;

    Eigen::Index n_art = m_eq;
    for (Eigen::Index r = 0; r < m_ub; ++r) {
      if (b_ub(r) < Scalar(0)) ++n_art;
    }
    slack_begin_ = n;
    art_begin_ = n + m_ub;
    const Eigen::Index cols = n + m_ub + n_art;
    rhs_ = cols;

    // Row m is the objective row: reduced costs c_B B^-1 A_j - c_j.
    tab_ = Matrix::Zero(m + 1, cols + 1);
    basis_.assign(static_cast<std::size_t>(m), 0);

    Eigen::Index art = art_begin_;
    for (Eigen::Index r = 0; r < m_ub; ++r) {
      const Scalar sign = b_ub(r) < Scalar(0) ? Scalar(-1) : Scalar(1);
      tab_.row(r).head(n) = sign * a_ub.row(r);
      tab_(r, slack_begin_ + r) = sign;
      tab_(r, rhs_) = sign * b_ub(r);
      if (sign < Scalar(0)) {
        tab_(r, art) = Scalar(1);
        basis_[r] = art++;
      } else {
        basis_[r] = slack_begin_ + r;
      }
    }
    for (Eigen::Index e = 0; e < m_eq; ++e) {
      const Eigen::Index r = m_ub + e;
      const Scalar sign = b_eq(e) < Scalar(0) ? Scalar(-1) : Scalar(1);
      tab_.row(r).head(n) = sign * a_eq.row(e);
      tab_(r, rhs_) = sign * b_eq(e);
      tab_(r, art) = Scalar(1);
      basis_[r] = art++;
    }

    LpResult<Scalar> result;
    iterations_ = 0;

    for (const auto& [row, col] : crash) {
      if (std::abs(tab_(row, col)) > tol_) pivot(row, col);
    }
    bool need_phase1 = false;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (basis_[r] >= art_begin_ || tab_(r, rhs_) < -feasibility_tolerance()) {
        need_phase1 = true;
      }
    }
    if (!crash.empty() && need_phase1) {
      // Crash did not land on a feasible basis; restart from scratch.
      return maximize(c, a_ub, b_ub, a_eq, b_eq);
    }

    // Phase 1: maximize -sum(artificials).
    if (need_phase1) {
      Vector phase1_cost = Vector::Zero(cols);
      phase1_cost.tail(n_art).setConstant(Scalar(-1));
      load_objective(phase1_cost);
      const LpStatus st = iterate(cols);
      if (st != LpStatus::kOptimal) {
        result.status = st;
        result.iterations = iterations_;
        return result;
      }
      if (tab_(m, rhs_) < -feasibility_tolerance()) {
        result.status = LpStatus::kInfeasible;
        result.iterations = iterations_;
        return result;
      }
      drive_out_artificials();
    }

    // Phase 2 over the structural and slack columns only.
    Vector cost = Vector::Zero(cols);
    cost.head(n) = c;
    load_objective(cost);
    const LpStatus st = iterate(art_begin_);
    result.status = st;
    result.iterations = iterations_;
    if (st != LpStatus::kOptimal) return result;

    result.x = Vector::Zero(n);
    for (Eigen::Index r = 0; r < m; ++r) {
      if (basis_[r] < n) result.x(basis_[r]) = tab_(r, rhs_);
    }
    result.objective = c.dot(result.x);
    return result;
  }

 private:
  Scalar feasibility_tolerance() const {
    return tol_ * (Scalar(1) + tab_.col(rhs_).cwiseAbs().maxCoeff());
  }

  void load_objective(const Vector& cost) {
    const Eigen::Index m = tab_.rows() - 1;
    tab_.row(m).setZero();
    tab_.row(m).head(cost.size()) = -cost.transpose();
    for (Eigen::Index r = 0; r < m; ++r) {
      const Scalar cb = cost(basis_[r]);
      if (cb != Scalar(0)) tab_.row(m) += cb * tab_.row(r);
    }
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving basic
  // variable among ratio ties. A column whose reduced cost is within noise
  // and has no usable pivot is skipped rather than reported as unbounded.
  LpStatus iterate(Eigen::Index allowed_cols) {
    const Eigen::Index m = tab_.rows() - 1;
    const Scalar scale =
        Scalar(1) + tab_.topLeftCorner(m, allowed_cols).cwiseAbs().maxCoeff();
    const Scalar cost_tol = tol_ * scale;
    const Scalar noise_tol = Scalar(1e-6) * scale;
    std::vector<bool> skipped(static_cast<std::size_t>(allowed_cols), false);
    while (true) {
      if (iterations_ >= max_iterations_) return LpStatus::kIterationLimit;
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed_cols; ++j) {
        if (!skipped[static_cast<std::size_t>(j)] && tab_(m, j) < -cost_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      Eigen::Index leave = -1;
      Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
      for (Eigen::Index r = 0; r < m; ++r) {
        const Scalar a = tab_(r, enter);
        if (a <= tol_) continue;
        const Scalar ratio = tab_(r, rhs_) / a;
        if (leave < 0 || ratio < best_ratio - tol_) {
          best_ratio = ratio;
          leave = r;
        } else if (ratio <= best_ratio + tol_ && basis_[r] < basis_[leave]) {
          best_ratio = std::min(best_ratio, ratio);
          leave = r;
        }
      }
      if (leave < 0) {
        if (tab_(m, enter) > -noise_tol) {
          skipped[static_cast<std::size_t>(enter)] = true;
          continue;
        }
        return LpStatus::kUnbounded;
      }
      pivot(leave, enter);
      std::fill(skipped.begin(), skipped.end(), false);
      ++iterations_;
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    tab_.row(row) /= tab_(row, col);
    for (Eigen::Index r = 0; r < tab_.rows(); ++r) {
      if (r == row) continue;
      const Scalar f = tab_(r, col);
      if (f != Scalar(0)) tab_.row(r) -= f * tab_.row(row);
    }
    basis_[row] = col;
  }

  // Artificials left basic at level zero are swapped for any structural or
  // slack column with a usable pivot. Rows with none are redundant.
  void drive_out_artificials() {
    const Eigen::Index m = tab_.rows() - 1;
    for (Eigen::Index r = 0; r < m; ++r) {
      if (basis_[r] < art_begin_) continue;
      for (Eigen::Index j = 0; j < art_begin_; ++j) {
        if (std::abs(tab_(r, j)) > tol_) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  Scalar tol_;
  int max_iterations_;
  int iterations_ = 0;
  Matrix tab_;
  std::vector<Eigen::Index> basis_;
  Eigen::Index slack_begin_ = 0;
  Eigen::Index art_begin_ = 0;
  Eigen::Index rhs_ = 0;
};

}  // namespace evasion

#endif  // EVASION_SIMPLEX_HPP_
