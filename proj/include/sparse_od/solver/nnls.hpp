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

#ifndef SPARSE_OD_SOLVER_NNLS_HPP_
#define SPARSE_OD_SOLVER_NNLS_HPP_

#include <algorithm>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace sparse_od {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;  // ||A x - y||_2
  int iterations = 0;
};

// Lawson-Hanson active-set solution of min ||A x - y||_2 s.t. x >= 0.
// Used to decide whether the ball {x >= 0 : ||y - A x|| <= delta} is empty.
inline NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                       int max_iter = 0) {
  const auto n = A.cols();
  if (max_iter <= 0) max_iter = static_cast<int>(3 * n + 30);
  const double tol =
      1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff()) * std::max(1.0, y.norm()) *
      static_cast<double>(std::max<Eigen::Index>(n, 1));

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<char> passive(static_cast<std::size_t>(n), 0);
  NnlsResult out;

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      Ap.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
    }
    const Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(y);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      z[idx[k]] = zp[static_cast<Eigen::Index>(k)];
    }
    return z;
  };

  for (int outer = 0; outer < max_iter; ++outer) {
    const Eigen::VectorXd w = A.transpose() * (y - A * x);
    Eigen::Index enter = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w[j] > best) {
        best = w[j];
        enter = j;
      }
    }
    if (enter < 0) break;
    passive[enter] = 1;
    ++out.iterations;

    for (int inner = 0; inner < max_iter; ++inner) {
      Eigen::VectorXd z = solve_passive();
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z[j] <= 0.0) feasible = false;
      }
      if (feasible) {
        x = z;
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z[j] <= 0.0) {
          alpha = std::min(alpha, x[j] / (x[j] - z[j]));
        }
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x[j] <= tol) {
          passive[j] = 0;
          x[j] = 0.0;
        }
      }
    }
  }
  out.x = x.cwiseMax(0.0);
  out.residual_norm = (A * out.x - y).norm();
  return out;
}

}  // namespace sparse_od

#endif  // SPARSE_OD_SOLVER_NNLS_HPP_
