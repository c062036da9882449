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

// How few lattice routes have few turns.

#include <cstdio>

#include "sparse_od.hpp"

int main() {
  using namespace sparse_od;
  std::printf("  N  alpha  turns<=      limited                total   fraction    bound\n");
  for (int N : {10, 20, 30, 40, 50, 60}) {
    for (double alpha : {0.1, 0.2, 0.3}) {
      const GridReport g = grid_report(N, alpha);
      std::printf("%3d  %5.2f  %7d  %11llu  %19llu  %9.3e  %9.3e\n", g.N, g.alpha, g.max_turns,
                  static_cast<unsigned long long>(g.limited),
                  static_cast<unsigned long long>(g.total), g.fraction, g.bound);
    }
  }
  return 0;
}
