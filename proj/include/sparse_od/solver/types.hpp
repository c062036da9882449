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

#ifndef SPARSE_OD_SOLVER_TYPES_HPP_
#define SPARSE_OD_SOLVER_TYPES_HPP_

#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sparse_od {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

enum class Sense { Minimize, Maximize };

enum class PivotRule {
  Bland,               // smallest-index entering and leaving variable
  LargestCoefficient,  // most negative reduced cost; may cycle on degenerate LPs
};

struct SolverOptions {
  double tol_feas = 1e-9;
  double tol_opt = 1e-9;
  double tol_pivot = 1e-11;
  PivotRule pivot_rule = PivotRule::Bland;
  int max_iter = 100000;
  // operator-splitting (cone) solver
  double cone_tol = 1e-8;
  double rho = 1.0;
  bool adapt_rho = true;
};

// min/max c'x s.t. A x = b, x >= 0.
struct StandardLP {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Sense sense = Sense::Minimize;
};

enum class ConeObjective { WeightedL1, L2 };

// min f(x) s.t. ||y - A x||_2 <= delta, x >= 0, with f(x) = sum_i w_i x_i
// (weights default to 1) or f(x) = ||x||_2.
struct ConeProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd y;
  double delta = 0.0;
  Eigen::VectorXd weights;  // empty means all ones
  ConeObjective objective = ConeObjective::WeightedL1;
};

struct Solution {
  Eigen::VectorXd x;
  Status status = Status::IterationLimit;
  double objective = 0.0;
  double residual_eq = 0.0;    // ||A x - b||_inf (LP)
  double residual_cone = 0.0;  // max(0, ||y - A x||_2 - delta) (cone)
  int iterations = 0;
  // LP only: final basis (column indices, one per non-redundant row) and the
  // reduced costs of the original variables in the minimization sense.
  std::vector<int> basis;
  Eigen::VectorXd reduced_costs;

  bool optimal() const { return status == Status::Optimal; }
};

}  // namespace sparse_od

#endif  // SPARSE_OD_SOLVER_TYPES_HPP_
