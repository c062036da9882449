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

// Vehicle-miles bounds on the 13-node network as more links are counted.

#include <cstdio>

#include "sparse_od.hpp"

int main() {
  using namespace sparse_od;
  const Fixture f = nguyen_fixture();
  const Eigen::VectorXd v = path_lengths(f.network, f.paths);
  Rng rng(7, 0);
  const Eigen::VectorXd x =
      sample_allocation(f.paths, sample_one_path_per_od(f.paths, rng), rng);
  const auto order = random_permutation(f.links.size(), rng);
  std::printf("true VMT %.3f\n", v.dot(x));
  std::printf(" M   lower      upper\n");
  for (std::size_t M : {10, 14, 18, 22, 26, 30, 34, 38}) {
    const auto links = measurement_prefix(f.links, order, M);
    const MeasurementSystem ms = build_static_incidence(f.paths, links);
    const VmtBounds b = vmt_bounds(ms, ms.matrix * x, v);
    std::printf("%2zu  %9.3f  %9.3f\n", M, b.vmt_lower, b.vmt_upper);
  }
  return 0;
}
