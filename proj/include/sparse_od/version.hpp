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

#ifndef SPARSE_OD_VERSION_HPP_
#define SPARSE_OD_VERSION_HPP_

namespace sparse_od {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sparse_od

#endif  // SPARSE_OD_VERSION_HPP_
