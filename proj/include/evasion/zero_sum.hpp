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

#ifndef EVASION_ZERO_SUM_HPP_
#define EVASION_ZERO_SUM_HPP_

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "evasion/types.hpp"

namespace evasion {

// Stage payoff to the evader. Rows are pursuer pure strategies (minimizer),
// columns are evader pure strategies (maximizer).
struct PayoffMatrix {
  Eigen::MatrixXd entries;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries(i, j); }
};

struct MixedStrategy {
  Eigen::VectorXd probs;

  // Nonnegative entries summing to one within 1e-9.
  bool valid() const;
  Eigen::Index size() const { return probs.size(); }
};

struct GameSolution {
  double value = 0.0;
  MixedStrategy pursuer_strategy;
  MixedStrategy evader_strategy;
  // Optima of the two programs, measured as the guarantees the returned
  // strategies secure: max_j (M^T pi_p)_j and min_i (M pi_e)_i.
  double pursuer_value = 0.0;
  double evader_value = 0.0;
  int iterations = 0;
};

// Saddle point of the zero-sum game through the pursuer's program
//   min p  s.t.  p 1 >= M^T pi_p,  pi_p in simplex
// and the evader's program
//   max q  s.t.  q 1 <= M pi_e,    pi_e in simplex.
// Throws SolverError on non-finite input or when the two optima disagree.
GameSolution solve_zero_sum(const Eigen::MatrixXd& m);

template <typename Derived>
GameSolution solve_zero_sum(const Eigen::MatrixBase<Derived>& m) {
  return solve_zero_sum(Eigen::MatrixXd(m));
}

inline GameSolution solve_zero_sum(const PayoffMatrix& m) {
  return solve_zero_sum(m.entries);
}

// Inverse-CDF draw of a pure strategy (0-based).
std::size_t sample_strategy(const MixedStrategy& pi, std::mt19937_64& rng);

}  // namespace evasion

#endif  // EVASION_ZERO_SUM_HPP_
