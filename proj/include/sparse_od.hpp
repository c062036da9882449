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

// Umbrella header.

#ifndef SPARSE_OD_HPP_
#define SPARSE_OD_HPP_

#include "sparse_od/error.hpp"
#include "sparse_od/estimator.hpp"
#include "sparse_od/experiments.hpp"
#include "sparse_od/fixtures.hpp"
#include "sparse_od/io.hpp"
#include "sparse_od/network.hpp"
#include "sparse_od/parallel.hpp"
#include "sparse_od/rng.hpp"
#include "sparse_od/solver/cone.hpp"
#include "sparse_od/solver/lp_oracle.hpp"
#include "sparse_od/solver/nnls.hpp"
#include "sparse_od/solver/projections.hpp"
#include "sparse_od/solver/simplex.hpp"
#include "sparse_od/solver/types.hpp"
#include "sparse_od/version.hpp"

#endif  // SPARSE_OD_HPP_
