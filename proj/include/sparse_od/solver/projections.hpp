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

#ifndef SPARSE_OD_SOLVER_PROJECTIONS_HPP_
#define SPARSE_OD_SOLVER_PROJECTIONS_HPP_

#include <algorithm>

#include <Eigen/Dense>

#include "sparse_od/error.hpp"

namespace sparse_od {

// Euclidean projection onto {z : ||z - center||_2 <= radius}.
inline Eigen::VectorXd project_ball(const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& center,
                                    double radius) {
  if (radius < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "negative ball radius");
  }
  const Eigen::VectorXd offset = v - center;
  const double dist = offset.norm();
  if (dist <= radius) return v;
  return center + offset * (radius / dist);
}

inline Eigen::VectorXd project_nonneg(const Eigen::VectorXd& v) {
  return v.cwiseMax(0.0);
}

}  // namespace sparse_od

#endif  // SPARSE_OD_SOLVER_PROJECTIONS_HPP_
