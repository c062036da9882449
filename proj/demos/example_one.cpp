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

// Six counted links on the 4-node network: l1 finds the 4-path allocation,
// the minimum-norm solution spreads flow over every consistent path.

#include <cstdio>

#include "sparse_od.hpp"

int main() {
  using namespace sparse_od;
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms =
      build_static_incidence(f.paths, {"1-2", "1-3", "2-1", "3-2", "3-4", "4-3"});

  Eigen::VectorXd x = Eigen::VectorXd::Zero(14);
  x[1] = 30;   // p2, OD 3-1
  x[7] = 45;   // p8, OD 3-2
  x[10] = 15;  // p11 and p14 split OD 4-2 1:3
  x[13] = 45;
  const Eigen::VectorXd y = ms.matrix * x;

  const EstimationResult l1 = estimate_l1(ms, y);
  const EstimationResult l2 = estimate_l2(ms, y);
  std::printf("path   true      l1        l2\n");
  for (Eigen::Index n = 0; n < 14; ++n) {
    std::printf("p%-4ld %8.3f  %8.3f  %8.3f\n", static_cast<long>(n + 1), x[n], l1.x[n], l2.x[n]);
  }
  std::printf("relative error: l1 %.2e, l2 %.2e\n", (l1.x - x).norm() / x.norm(),
              (l2.x - x).norm() / x.norm());
  std::printf("nonzeros: l1 %zu, l2 %zu\n", l1.sparsity, l2.sparsity);
  return 0;
}
