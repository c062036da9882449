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

// Path-allocation estimators over a measurement system y = A x, x >= 0.

#ifndef SPARSE_OD_ESTIMATOR_HPP_
#define SPARSE_OD_ESTIMATOR_HPP_

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sparse_od/error.hpp"
#include "sparse_od/network.hpp"
#include "sparse_od/solver/cone.hpp"
#include "sparse_od/solver/simplex.hpp"
#include "sparse_od/solver/types.hpp"

namespace sparse_od {

// Flow of one OD pair departing at one time (departure is 0 when static).
struct OdFlow {
  std::size_t od = 0;
  int departure = 0;
  double flow = 0.0;
};

struct EstimationResult {
  std::string method;
  Eigen::VectorXd x;
  Status status = Status::Optimal;
  double objective = 0.0;
  double residual = 0.0;  // ||Ax - y||_inf, or max(0, ||y - Ax||_2 - delta)
  int iterations = 0;
  std::vector<OdFlow> od_flows;
  std::vector<std::optional<double>> splits;  // per column
  std::size_t sparsity = 0;
  std::vector<double> objective_trace;        // reweighted only

  bool optimal() const { return status == Status::Optimal; }
};

inline double sparsity_epsilon(const Eigen::VectorXd& x) {
  const double inf = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  return 1e-8 * std::max(1.0, inf);
}

inline std::size_t count_nonzeros(const Eigen::VectorXd& x) {
  const double eps = sparsity_epsilon(x);
  std::size_t s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x[i] > eps ? 1 : 0;
  return s;
}

namespace detail {

// Groups columns by (od, departure) and fills flows and splits.
inline void decode_into(const MeasurementSystem& ms, EstimationResult& r) {
  std::map<std::pair<std::size_t, int>, double> flows;
  if (ms.mode == SystemMode::Static) {
    for (std::size_t k = 0; k < ms.od_pairs.size(); ++k) flows[{k, 0}] = 0.0;
  }
  for (std::size_t j = 0; j < ms.cols.size(); ++j) {
    flows[{ms.cols[j].od, ms.cols[j].departure}] +=
        std::max(0.0, r.x[static_cast<Eigen::Index>(j)]);
  }
  r.od_flows.clear();
  for (const auto& [key, f] : flows) r.od_flows.push_back({key.first, key.second, f});
  r.splits.assign(ms.cols.size(), std::nullopt);
  for (std::size_t j = 0; j < ms.cols.size(); ++j) {
    const double f = flows[{ms.cols[j].od, ms.cols[j].departure}];
    if (f > 0.0) r.splits[j] = std::max(0.0, r.x[static_cast<Eigen::Index>(j)]) / f;
  }
  r.sparsity = count_nonzeros(r.x);
}

inline void check_counts(const MeasurementSystem& ms, const Eigen::VectorXd& y,
                         bool require_nonnegative) {
  if (y.size() != ms.num_rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "count vector length differs from measurement rows");
  }
  if (require_nonnegative && y.size() > 0 && y.minCoeff() < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "link counts must be nonnegative");
  }
}

inline void check_delta(double delta) {
  if (!(delta >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta must be nonnegative");
  }
}

inline void check_weights(const MeasurementSystem& ms, const Eigen::VectorXd& w) {
  if (w.size() != ms.num_cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "weight vector length differs from unknowns");
  }
  if (w.size() > 0 && !(w.minCoeff() > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "weights must be positive");
  }
}

inline EstimationResult from_lp(const std::string& method,
                                const MeasurementSystem& ms, const Solution& s) {
  EstimationResult r;
  r.method = method;
  r.x = s.x.cwiseMax(0.0);
  r.status = s.status;
  r.objective = s.objective;
  r.residual = s.residual_eq;
  r.iterations = s.iterations;
  decode_into(ms, r);
  return r;
}

inline EstimationResult from_cone(const std::string& method,
                                  const MeasurementSystem& ms, const Solution& s) {
  EstimationResult r = from_lp(method, ms, s);
  r.residual = s.residual_cone;
  return r;
}

inline EstimationResult weighted_lp(const std::string& method,
                                    const MeasurementSystem& ms,
                                    const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& weights,
                                    const SolverOptions& opts) {
  StandardLP lp{weights, ms.matrix, y, Sense::Minimize};
  return from_lp(method, ms, solve_lp(lp, opts));
}

inline EstimationResult cone(const std::string& method,
                             const MeasurementSystem& ms,
                             const Eigen::VectorXd& y, double delta,
                             ConeObjective objective,
                             const SolverOptions& opts) {
  ConeProblem p{ms.matrix, y, delta, {}, objective};
  return from_cone(method, ms, solve_cone(p, opts));
}

}  // namespace detail

// min sum(x) s.t. A x = y, x >= 0.
inline EstimationResult estimate_l1(const MeasurementSystem& ms,
                                    const Eigen::VectorXd& y,
                                    const SolverOptions& opts = {}) {
  detail::check_counts(ms, y, true);
  return detail::weighted_lp("l1", ms, y, Eigen::VectorXd::Ones(ms.num_cols()),
                             opts);
}

// min ||x||_2 s.t. A x = y, x >= 0.
inline EstimationResult estimate_l2(const MeasurementSystem& ms,
                                    const Eigen::VectorXd& y,
                                    const SolverOptions& opts = {}) {
  detail::check_counts(ms, y, true);
  return detail::cone("l2", ms, y, 0.0, ConeObjective::L2, opts);
}

// min sum(x) s.t. ||y - A x||_2 <= delta, x >= 0.
inline EstimationResult estimate_l1_noisy(const MeasurementSystem& ms,
                                          const Eigen::VectorXd& y, double delta,
                                          const SolverOptions& opts = {}) {
  detail::check_counts(ms, y, false);
  detail::check_delta(delta);
  return detail::cone("l1-noisy", ms, y, delta, ConeObjective::WeightedL1, opts);
}

// min ||x||_2 s.t. ||y - A x||_2 <= delta, x >= 0.
inline EstimationResult estimate_l2_noisy(const MeasurementSystem& ms,
                                          const Eigen::VectorXd& y, double delta,
                                          const SolverOptions& opts = {}) {
  detail::check_counts(ms, y, false);
  detail::check_delta(delta);
  return detail::cone("l2-noisy", ms, y, delta, ConeObjective::L2, opts);
}

// min lambda'x s.t. A x = y, x >= 0.
inline EstimationResult estimate_weighted_l1(const MeasurementSystem& ms,
                                             const Eigen::VectorXd& y,
                                             const Eigen::VectorXd& lambda,
                                             const SolverOptions& opts = {}) {
  detail::check_counts(ms, y, true);
  detail::check_weights(ms, lambda);
  return detail::weighted_lp("weighted", ms, y, lambda, opts);
}

// Iteratively reweighted l1. `iters` counts the initial unweighted solve, so
// iters = 1 is plain l1. epsilon <= 0 selects 1e-3 * max(x0).
inline EstimationResult reweighted_l1(const MeasurementSystem& ms,
                                      const Eigen::VectorXd& y, int iters = 4,
                                      double epsilon = 0.0,
                                      const SolverOptions& opts = {}) {
  if (iters < 1) {
    throw Error(ErrorCode::InvalidArgument, "reweighting needs iters >= 1");
  }
  if (!(epsilon >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  }
  EstimationResult r = estimate_l1(ms, y, opts);
  r.method = "reweighted";
  r.objective_trace.push_back(r.objective);
  if (!r.optimal()) return r;
  if (epsilon == 0.0) {
    const double peak = r.x.size() ? r.x.maxCoeff() : 0.0;
    epsilon = peak > 0.0 ? 1e-3 * peak : 1e-3;
  }
  int total_iterations = r.iterations;
  for (int t = 1; t < iters; ++t) {
    const Eigen::VectorXd lambda =
        (r.x.array() + epsilon).inverse().matrix();
    std::vector<double> trace = std::move(r.objective_trace);
    r = detail::weighted_lp("reweighted", ms, y, lambda, opts);
    total_iterations += r.iterations;
    trace.push_back(r.objective);
    r.objective_trace = std::move(trace);
    if (!r.optimal()) break;
  }
  r.iterations = total_iterations;
  return r;
}

struct VmtBounds {
  Eigen::VectorXd x_min;
  Eigen::VectorXd x_max;
  double vmt_lower = 0.0;
  double vmt_upper = 0.0;
  Status status_lower = Status::Optimal;
  Status status_upper = Status::Optimal;
  // Columns with positive length that cross no measured link; any of them
  // makes the upper program unbounded.
  std::vector<std::size_t> unbounded_columns;
};

// min and max of v'x over {A x = y, x >= 0}.
inline VmtBounds vmt_bounds(const MeasurementSystem& ms, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& v,
                            const SolverOptions& opts = {}) {
  detail::check_counts(ms, y, true);
  if (v.size() != ms.num_cols()) {
    throw Error(ErrorCode::DimensionMismatch, "length vector differs from unknowns");
  }
  if (v.size() > 0 && v.minCoeff() < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "path lengths must be nonnegative");
  }
  VmtBounds out;
  const Solution lo = solve_lp({v, ms.matrix, y, Sense::Minimize}, opts);
  const Solution hi = solve_lp({v, ms.matrix, y, Sense::Maximize}, opts);
  out.x_min = lo.x.cwiseMax(0.0);
  out.x_max = hi.x.cwiseMax(0.0);
  out.status_lower = lo.status;
  out.status_upper = hi.status;
  out.vmt_lower = lo.status == Status::Optimal ? v.dot(out.x_min) : 0.0;
  out.vmt_upper = hi.status == Status::Optimal
                      ? v.dot(out.x_max)
                      : (hi.status == Status::Unbounded
                             ? std::numeric_limits<double>::infinity()
                             : 0.0);
  for (Eigen::Index j = 0; j < ms.num_cols(); ++j) {
    if (v[j] > 0.0 && ms.matrix.col(j).cwiseAbs().sum() == 0.0) {
      out.unbounded_columns.push_back(static_cast<std::size_t>(j));
    }
  }
  return out;
}

// Per-column lengths: each column takes the length of its path.
inline Eigen::VectorXd column_lengths(const MeasurementSystem& ms,
                                      const Eigen::VectorXd& path_lengths) {
  Eigen::VectorXd v(ms.num_cols());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const auto n = static_cast<Eigen::Index>(ms.cols[j].path);
    if (n >= path_lengths.size()) {
      throw Error(ErrorCode::DimensionMismatch, "path length vector too short");
    }
    v[j] = path_lengths[n];
  }
  return v;
}

}  // namespace sparse_od

#endif  // SPARSE_OD_ESTIMATOR_HPP_
