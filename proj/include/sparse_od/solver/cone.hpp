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

// ADMM for the measurement-ball programs
//
//   minimize f(x)  subject to  ||y - A x||_2 <= delta,  x >= 0
//
// with f(x) = w'x (weighted l1 on the orthant) or f(x) = ||x||_2.
//
// The splitting introduces u = x (kept in the orthant) and z = A x (kept in
// the ball around y). Each iteration takes a proximal step on f coupled to
// both copies, which is a ridge-regularized least-squares solve with the
// fixed matrix (I + A'A) for the linear objective and ((1 + 1/rho) I + A'A)
// for the quadratic one; both are factored once and the quadratic one is
// refactored only when rho changes. Then u and z are projected and the
// scaled duals updated. rho adapts by residual balancing.
//
// y, delta and the weights are normalized before iterating, and the problem
// is first checked for feasibility with NNLS: the feasible set is empty
// exactly when min_{x >= 0} ||A x - y||_2 > delta.

#ifndef SPARSE_OD_SOLVER_CONE_HPP_
#define SPARSE_OD_SOLVER_CONE_HPP_

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "sparse_od/error.hpp"
#include "sparse_od/solver/nnls.hpp"
#include "sparse_od/solver/projections.hpp"
#include "sparse_od/solver/types.hpp"

namespace sparse_od {

inline constexpr int kAdaptWindow = 5000;

inline Solution solve_cone(const ConeProblem& p, const SolverOptions& opts = {}) {
  const auto m = p.A.rows();
  const auto n = p.A.cols();
  if (p.y.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "y length differs from rows of A");
  }
  if (!(p.delta >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta must be nonnegative");
  }
  Eigen::VectorXd weights =
      p.weights.size() == 0 ? Eigen::VectorXd::Ones(n) : p.weights;
  if (weights.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "weights length differs from N");
  }
  if (p.objective == ConeObjective::WeightedL1 && n > 0 &&
      weights.minCoeff() <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "weights must be positive");
  }

  const double scale =
      std::max(1.0, m > 0 ? p.y.cwiseAbs().maxCoeff() : 0.0);
  const Eigen::VectorXd y = p.y / scale;
  const double delta = p.delta / scale;
  const Eigen::VectorXd w =
      n > 0 ? Eigen::VectorXd(weights / weights.maxCoeff()) : weights;
  const Eigen::MatrixXd& A = p.A;

  Solution sol;
  auto finish = [&](const Eigen::VectorXd& x_normalized, Status status,
                    int iterations) {
    sol.x = x_normalized * scale;
    sol.status = status;
    sol.iterations = iterations;
    sol.residual_cone = std::max(0.0, (p.y - A * sol.x).norm() - p.delta);
    sol.objective = p.objective == ConeObjective::L2 ? sol.x.norm()
                                                     : weights.dot(sol.x);
    return sol;
  };

  const NnlsResult closest = nnls(A, y);
  if (closest.residual_norm > delta + opts.tol_feas) {
    return finish(closest.x, Status::Infeasible, 0);
  }
  if (y.norm() <= delta) {
    // x = 0 is feasible and minimizes both objectives on the orthant.
    return finish(Eigen::VectorXd::Zero(n), Status::Optimal, 0);
  }

  const Eigen::MatrixXd gram = A.transpose() * A;
  double rho = opts.rho;
  auto system_matrix = [&](double r) {
    Eigen::MatrixXd K = gram;
    const double diag = p.objective == ConeObjective::L2 ? 1.0 + 1.0 / r : 1.0;
    K.diagonal().array() += diag;
    return K;
  };
  Eigen::LLT<Eigen::MatrixXd> factor(system_matrix(rho));

  // Warm start from the NNLS point, which is feasible.
  Eigen::VectorXd u = closest.x;
  Eigen::VectorXd z = project_ball(A * u, y, delta);
  Eigen::VectorXd x = u;
  Eigen::VectorXd a_dual = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd b_dual = Eigen::VectorXd::Zero(m);
  const double sqrt_nm = std::sqrt(static_cast<double>(n + m));
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  for (int it = 1; it <= opts.max_iter; ++it) {
    Eigen::VectorXd rhs = (u - a_dual) + A.transpose() * (z - b_dual);
    if (p.objective == ConeObjective::WeightedL1) rhs -= w / rho;
    x = factor.solve(rhs);
    const Eigen::VectorXd ax = A * x;

    const Eigen::VectorXd u_prev = u;
    const Eigen::VectorXd z_prev = z;
    u = project_nonneg(x + a_dual);
    z = project_ball(ax + b_dual, y, delta);
    a_dual += x - u;
    b_dual += ax - z;

    const double r_pri =
        std::sqrt((x - u).squaredNorm() + (ax - z).squaredNorm());
    const double r_dual =
        rho * ((u - u_prev) + A.transpose() * (z - z_prev)).norm();
    const double eps_pri =
        sqrt_nm * opts.cone_tol +
        opts.cone_tol * std::max(std::sqrt(x.squaredNorm() + ax.squaredNorm()),
                                 std::sqrt(u.squaredNorm() + z.squaredNorm()));
    const double eps_dual =
        sqrt_n * opts.cone_tol +
        opts.cone_tol * rho * (a_dual + A.transpose() * b_dual).norm();

    if (r_pri <= eps_pri && r_dual <= eps_dual) {
      const double cone_res = std::max(0.0, (y - A * u).norm() - delta);
      if (cone_res <= opts.tol_feas) return finish(u, Status::Optimal, it);
    }

    // Balancing stops after a while; ADMM converges for any fixed rho, but
    // endless switching can keep it from settling.
    if (opts.adapt_rho && it % 10 == 0 && it <= kAdaptWindow) {
      double factor_change = 1.0;
      if (r_pri > 10.0 * r_dual) {
        factor_change = 2.0;
      } else if (r_dual > 10.0 * r_pri) {
        factor_change = 0.5;
      }
      if (factor_change != 1.0 && rho * factor_change >= 1e-6 &&
          rho * factor_change <= 1e6) {
        rho *= factor_change;
        a_dual /= factor_change;
        b_dual /= factor_change;
        if (p.objective == ConeObjective::L2) {
          factor.compute(system_matrix(rho));
        }
      }
    }
  }
  return finish(u, Status::IterationLimit, opts.max_iter);
}

}  // namespace sparse_od

#endif  // SPARSE_OD_SOLVER_CONE_HPP_
