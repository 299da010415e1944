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

#include "evasion/zero_sum.hpp"

#include <cmath>
#include <sstream>

#include "evasion/simplex.hpp"
#include "evasion/types.hpp"

namespace evasion {
namespace {

constexpr double kClampTolerance = 1e-10;
constexpr double kDualityTolerance = 1e-7;

// Drops round-off negatives and renormalizes.
Eigen::VectorXd clean_probabilities(Eigen::VectorXd p, const char* who) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < 0.0) {
      if (p(i) < -kClampTolerance) {
        std::ostringstream os;
        os << "solve_zero_sum: " << who << " probability " << p(i)
           << " below clamp tolerance";
        throw SolverError(os.str());
      }
      p(i) = 0.0;
    }
  }
  const double total = p.sum();
  if (!(total > 0.0)) {
    throw SolverError(std::string("solve_zero_sum: empty ") + who + " strategy");
  }
  return p / total;
}

void check(const LpResult<long double>& r, const char* which) {
  if (r.status == LpStatus::kOptimal) return;
  std::ostringstream os;
  os << "solve_zero_sum: " << which << " program ended with status "
     << static_cast<int>(r.status) << " after " << r.iterations
     << " iterations";
  throw SolverError(os.str());
}

}  // namespace

bool MixedStrategy::valid() const {
  if (probs.size() == 0 || !probs.allFinite()) return false;
  if ((probs.array() < 0.0).any()) return false;
  return std::abs(probs.sum() - 1.0) <= 1e-9;
}

GameSolution solve_zero_sum(const Eigen::MatrixXd& m) {
  if (m.size() == 0) throw SolverError("solve_zero_sum: empty matrix");
  if (!m.allFinite()) throw SolverError("solve_zero_sum: non-finite payoff");

  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  const double lo = m.minCoeff();
  const double hi = m.maxCoeff();

  GameSolution sol;
  if (lo == hi) {
    sol.pursuer_strategy.probs = Eigen::VectorXd::Constant(rows, 1.0 / rows);
    sol.evader_strategy.probs = Eigen::VectorXd::Constant(cols, 1.0 / cols);
    sol.value = sol.pursuer_value = sol.evader_value = lo;
    return sol;
  }

  // Shift so every payoff is >= 1; the value variable then stays positive
  // and can be treated as an ordinary nonnegative LP variable.
  // The tableau runs in extended precision: near-duplicate strategies are
  // common in the stage games and cost several digits to pivoting.
  using Real = long double;
  using MatrixR = DenseSimplex<Real>::Matrix;
  using VectorR = DenseSimplex<Real>::Vector;
  const MatrixR shifted = (m.array() - lo + 1.0).cast<Real>();
  DenseSimplex<Real> simplex(Real(1e-13));

  // Pursuer: variables [pi_p (rows), p]; maximize -p.
  {
    VectorR c = VectorR::Zero(rows + 1);
    c(rows) = -1.0;
    MatrixR a_ub(cols, rows + 1);
    a_ub.leftCols(rows) = shifted.transpose();
    a_ub.col(rows).setConstant(-1.0);
    MatrixR a_eq = MatrixR::Zero(1, rows + 1);
    a_eq.leftCols(rows).setOnes();
    // Start from the pure security strategy: pi_p = e_i, p at its binding row.
    Eigen::Index i_star = 0, j_star = 0;
    shifted.rowwise().maxCoeff().minCoeff(&i_star);
    shifted.row(i_star).maxCoeff(&j_star);
    const auto r =
        simplex.maximize(c, a_ub, VectorR::Zero(cols), a_eq, VectorR::Ones(1),
                         {{cols, i_star}, {j_star, rows}});
    check(r, "pursuer");
    sol.pursuer_strategy.probs =
        clean_probabilities(r.x.head(rows).cast<double>(), "pursuer");
    sol.iterations += r.iterations;
  }

  // Evader: variables [pi_e (cols), q]; maximize q.
  {
    VectorR c = VectorR::Zero(cols + 1);
    c(cols) = 1.0;
    MatrixR a_ub(rows, cols + 1);
    a_ub.leftCols(cols) = -shifted;
    a_ub.col(cols).setConstant(1.0);
    MatrixR a_eq = MatrixR::Zero(1, cols + 1);
    a_eq.leftCols(cols).setOnes();
    Eigen::Index i_star = 0, j_star = 0;
    shifted.colwise().minCoeff().maxCoeff(&j_star);
    shifted.col(j_star).minCoeff(&i_star);
    const auto r =
        simplex.maximize(c, a_ub, VectorR::Zero(rows), a_eq, VectorR::Ones(1),
                         {{rows, j_star}, {i_star, cols}});
    check(r, "evader");
    sol.evader_strategy.probs =
        clean_probabilities(r.x.head(cols).cast<double>(), "evader");
    sol.iterations += r.iterations;
  }

  sol.pursuer_value = (m.transpose() * sol.pursuer_strategy.probs).maxCoeff();
  sol.evader_value = (m * sol.evader_strategy.probs).minCoeff();
  const double gap = sol.pursuer_value - sol.evader_value;
  if (std::abs(gap) > kDualityTolerance * (1.0 + std::abs(hi - lo))) {
    std::ostringstream os;
    os << "solve_zero_sum: duality gap " << gap << " after " << sol.iterations
       << " iterations";
    throw SolverError(os.str());
  }
  sol.value = 0.5 * (sol.pursuer_value + sol.evader_value);
  return sol;
}

std::size_t sample_strategy(const MixedStrategy& pi, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (Eigen::Index i = 0; i < pi.probs.size(); ++i) {
    if (pi.probs(i) <= 0.0) continue;
    cumulative += pi.probs(i);
    last_positive = static_cast<std::size_t>(i);
    if (u < cumulative) return last_positive;
  }
  return last_positive;
}

}  // namespace evasion
