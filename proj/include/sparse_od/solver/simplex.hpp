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

// Dense two-phase revised simplex for standard-form linear programs
//
//   minimize (or maximize) c'x  subject to  A x = b,  x >= 0.
//
// The basis matrix is refactorized at every iteration; problems here have at
// most a few hundred columns and well under a hundred rows, so the O(m^3)
// refactorization is cheaper than maintaining product-form updates and keeps
// the basic solution accurate. Phase 1 starts from an all-artificial basis.
// Artificials left in the basis at zero level are pivoted out, and rows whose
// artificial cannot leave are linearly dependent and are dropped before
// phase 2.

#ifndef SPARSE_OD_SOLVER_SIMPLEX_HPP_
#define SPARSE_OD_SOLVER_SIMPLEX_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "sparse_od/error.hpp"
#include "sparse_od/solver/types.hpp"

namespace sparse_od {
namespace detail {

enum class LoopOutcome { Optimal, Unbounded, IterationLimit };

struct BasisFactor {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_t;

  BasisFactor(const Eigen::MatrixXd& A, const std::vector<int>& basis) {
    const auto m = A.rows();
    Eigen::MatrixXd B(m, m);
    for (Eigen::Index i = 0; i < m; ++i) B.col(i) = A.col(basis[i]);
    lu.compute(B);
    lu_t.compute(B.transpose());
  }
};

// Primal simplex iterations from a feasible basis.
inline LoopOutcome simplex_loop(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c,
                                std::vector<int>& basis, int& iterations,
                                const SolverOptions& opts) {
  const auto m = A.rows();
  const auto n = A.cols();
  if (m == 0) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (c[j] < -opts.tol_opt) return LoopOutcome::Unbounded;
    }
    return LoopOutcome::Optimal;
  }
  std::vector<char> is_basic(static_cast<std::size_t>(n), 0);
  for (int j : basis) is_basic[j] = 1;

  while (true) {
    BasisFactor f(A, basis);
    Eigen::VectorXd x_b = f.lu.solve(b);
    Eigen::VectorXd c_b(m);
    for (Eigen::Index i = 0; i < m; ++i) c_b[i] = c[basis[i]];
    Eigen::VectorXd pi = f.lu_t.solve(c_b);

    int enter = -1;
    double most_negative = -opts.tol_opt;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (is_basic[j]) continue;
      const double d = c[j] - pi.dot(A.col(j));
      if (opts.pivot_rule == PivotRule::Bland) {
        if (d < -opts.tol_opt) {
          enter = static_cast<int>(j);
          break;
        }
      } else if (d < most_negative) {
        most_negative = d;
        enter = static_cast<int>(j);
      }
    }
    if (enter < 0) return LoopOutcome::Optimal;
    if (iterations >= opts.max_iter) return LoopOutcome::IterationLimit;

    Eigen::VectorXd dir = f.lu.solve(A.col(enter));
    double theta = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (dir[i] > opts.tol_pivot) {
        theta = std::min(theta, std::max(x_b[i], 0.0) / dir[i]);
      }
    }
    if (!std::isfinite(theta)) return LoopOutcome::Unbounded;

    // Among the minimizing rows pick the smallest basic variable index
    // (Bland) or the largest pivot element (stability).
    const double tie = 1e-12 * std::max(1.0, theta);
    Eigen::Index leave = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (dir[i] <= opts.tol_pivot) continue;
      if (std::max(x_b[i], 0.0) / dir[i] > theta + tie) continue;
      if (leave < 0) {
        leave = i;
      } else if (opts.pivot_rule == PivotRule::Bland
                     ? basis[i] < basis[leave]
                     : dir[i] > dir[leave]) {
        leave = i;
      }
    }
    is_basic[basis[leave]] = 0;
    basis[leave] = enter;
    is_basic[enter] = 1;
    ++iterations;
  }
}

}  // namespace detail

inline Solution solve_lp(const StandardLP& p, const SolverOptions& opts = {}) {
  const auto m = p.A.rows();
  const auto n = p.A.cols();
  if (p.b.size() != m || p.c.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "LP dimensions inconsistent");
  }
  const double sign = p.sense == Sense::Minimize ? 1.0 : -1.0;
  const Eigen::VectorXd cost = sign * p.c;

  // Rows with negative right-hand side are negated so the artificial basis
  // starts feasible.
  Eigen::MatrixXd A = p.A;
  Eigen::VectorXd b = p.b;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      A.row(i) *= -1.0;
      b[i] = -b[i];
    }
  }
  const double b_scale = std::max(1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0);

  Solution sol;
  sol.x = Eigen::VectorXd::Zero(n);
  int iterations = 0;

  // Phase 1.
  Eigen::MatrixXd A1(m, n + m);
  A1 << A, Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n + m);
  c1.tail(m).setOnes();
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = static_cast<int>(n + i);

  auto outcome = detail::simplex_loop(A1, b, c1, basis, iterations, opts);
  if (outcome == detail::LoopOutcome::IterationLimit) {
    sol.status = Status::IterationLimit;
    sol.iterations = iterations;
    return sol;
  }
  std::vector<Eigen::Index> keep_rows;
  std::vector<int> kept_basis;
  if (m > 0) {
    detail::BasisFactor f(A1, basis);
    const Eigen::VectorXd x_b = f.lu.solve(b);
    double infeasibility = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[i] >= n) infeasibility += std::max(x_b[i], 0.0);
    }
    if (infeasibility > opts.tol_feas * b_scale) {
      sol.status = Status::Infeasible;
      sol.iterations = iterations;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (basis[i] < n) sol.x[basis[i]] = std::max(x_b[i], 0.0);
      }
      sol.objective = p.c.dot(sol.x);
      sol.residual_eq = (p.A * sol.x - p.b).cwiseAbs().maxCoeff();
      return sol;
    }

    // Pivot remaining artificials out of the basis. Artificial n + r can sit
    // at any basis position; if no structural column can replace it, its
    // constraint row r is linearly dependent on the others and is dropped.
    std::vector<char> redundant_row(static_cast<std::size_t>(m), 0);
    std::vector<char> dropped_pos(static_cast<std::size_t>(m), 0);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (basis[i] < n) continue;
      detail::BasisFactor fi(A1, basis);
      Eigen::VectorXd e = Eigen::VectorXd::Unit(m, i);
      const Eigen::VectorXd row = fi.lu_t.solve(e);
      int best = -1;
      double best_abs = 1e-9;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
        const double alpha = std::abs(row.dot(A.col(j)));
        if (alpha > best_abs) {
          best_abs = alpha;
          best = static_cast<int>(j);
        }
      }
      if (best >= 0) {
        basis[i] = best;
      } else {
        redundant_row[basis[i] - n] = 1;
        dropped_pos[i] = 1;
      }
    }
    for (Eigen::Index r = 0; r < m; ++r) {
      if (!redundant_row[r]) keep_rows.push_back(r);
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!dropped_pos[i]) kept_basis.push_back(basis[i]);
    }
  }

  // Phase 2 on the non-redundant rows.
  const auto m2 = static_cast<Eigen::Index>(keep_rows.size());
  Eigen::MatrixXd A2(m2, n);
  Eigen::VectorXd b2(m2);
  std::vector<int> basis2 = kept_basis;
  for (Eigen::Index r = 0; r < m2; ++r) {
    A2.row(r) = A.row(keep_rows[r]);
    b2[r] = b[keep_rows[r]];
  }
  outcome = detail::simplex_loop(A2, b2, cost, basis2, iterations, opts);

  if (m2 > 0) {
    detail::BasisFactor f(A2, basis2);
    const Eigen::VectorXd x_b = f.lu.solve(b2);
    for (Eigen::Index i = 0; i < m2; ++i) {
      double v = x_b[i];
      if (v < 0.0 && v > -opts.tol_feas * b_scale) v = 0.0;
      sol.x[basis2[i]] = v;
    }
    Eigen::VectorXd c_b(m2);
    for (Eigen::Index i = 0; i < m2; ++i) c_b[i] = cost[basis2[i]];
    const Eigen::VectorXd pi = f.lu_t.solve(c_b);
    sol.reduced_costs = cost - A2.transpose() * pi;
  } else {
    sol.reduced_costs = cost;
  }
  for (int j : basis2) sol.reduced_costs[j] = 0.0;
  sol.basis = basis2;
  sol.iterations = iterations;
  sol.objective = p.c.dot(sol.x);
  sol.residual_eq = m > 0 ? (p.A * sol.x - p.b).cwiseAbs().maxCoeff() : 0.0;
  switch (outcome) {
    case detail::LoopOutcome::Optimal: sol.status = Status::Optimal; break;
    case detail::LoopOutcome::Unbounded: sol.status = Status::Unbounded; break;
    case detail::LoopOutcome::IterationLimit:
      sol.status = Status::IterationLimit;
      break;
  }
  return sol;
}

}  // namespace sparse_od

#endif  // SPARSE_OD_SOLVER_SIMPLEX_HPP_
