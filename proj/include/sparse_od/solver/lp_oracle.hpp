// Copyright 2026 The sparse_od Authors
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

#ifndef SPARSE_OD_SOLVER_LP_ORACLE_HPP_
#define SPARSE_OD_SOLVER_LP_ORACLE_HPP_

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "sparse_od/error.hpp"
#include "sparse_od/solver/types.hpp"

namespace sparse_od {

// Brute-force vertex enumeration: every set of rank(A) columns is tried as a
// basis and the best basic feasible solution is returned. Exponential; only
// meant as an independent check of solve_lp on small instances. Does not
// detect unboundedness (callers supply bounded instances).
inline Solution lp_oracle(const StandardLP& p) {
  const auto m = p.A.rows();
  const auto n = p.A.cols();
  if (n > 16 || m > 8) {
    throw Error(ErrorCode::TooLarge, "lp_oracle limited to N <= 16, M <= 8");
  }
  if (p.b.size() != m || p.c.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "LP dimensions inconsistent");
  }
  const double b_scale =
      std::max(1.0, m > 0 ? p.b.cwiseAbs().maxCoeff() : 0.0);
  const double feas_tol = 1e-9 * b_scale;

  Eigen::FullPivLU<Eigen::MatrixXd> full(p.A);
  full.setThreshold(1e-10);
  const auto rank = full.rank();

  Solution best;
  best.status = Status::Infeasible;
  best.x = Eigen::VectorXd::Zero(n);
  const bool minimize = p.sense == Sense::Minimize;
  double best_obj = minimize ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();

  auto consider = [&](const Eigen::VectorXd& x) {
    if (m > 0 && (p.A * x - p.b).cwiseAbs().maxCoeff() > feas_tol) return;
    if (n > 0 && x.minCoeff() < -feas_tol) return;
    const double obj = p.c.dot(x);
    if (minimize ? obj < best_obj : obj > best_obj) {
      best_obj = obj;
      best.x = x.cwiseMax(0.0);
      best.status = Status::Optimal;
    }
    ++best.iterations;
  };

  if (rank == 0) {
    consider(Eigen::VectorXd::Zero(n));
  } else {
    std::vector<int> subset(static_cast<std::size_t>(rank));
    for (Eigen::Index i = 0; i < rank; ++i) subset[i] = static_cast<int>(i);
    while (true) {
      Eigen::MatrixXd B(m, rank);
      for (Eigen::Index i = 0; i < rank; ++i) B.col(i) = p.A.col(subset[i]);
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
      qr.setThreshold(1e-10);
      if (qr.rank() == rank) {
        const Eigen::VectorXd xb = qr.solve(p.b);
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < rank; ++i) x[subset[i]] = xb[i];
        consider(x);
      }
      // Next combination in lexicographic order.
      Eigen::Index i = rank - 1;
      while (i >= 0 && subset[i] == n - rank + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (Eigen::Index j = i + 1; j < rank; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  if (best.status == Status::Optimal) {
    best.objective = best_obj;
    best.residual_eq = m > 0 ? (p.A * best.x - p.b).cwiseAbs().maxCoeff() : 0.0;
  }
  return best;
}

}  // namespace sparse_od

#endif  // SPARSE_OD_SOLVER_LP_ORACLE_HPP_
