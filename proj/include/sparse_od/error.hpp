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

#ifndef SPARSE_OD_ERROR_HPP_
#define SPARSE_OD_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparse_od {

enum class ErrorCode {
  // network validation
  DanglingEndpoint,
  DuplicateLinkId,
  DuplicateNode,
  SelfLoop,
  NegativeAttribute,
  // path validation
  BrokenChain,
  WrongEndpoints,
  RepeatedNode,
  UnknownLink,
  UnknownNode,
  EmptyPath,
  NoPathExists,
  // measurement systems
  UselessRow,
  LinkNotOnPath,
  EmptyWindow,
  NegativeEntry,
  DimensionMismatch,
  // solvers
  TooLarge,
  // experiments
  SOutOfRange,
  MOutOfRange,
  NOutOfRange,
  AlphaOutOfRange,
  // generic
  InvalidArgument,
  Parse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::DuplicateLinkId: return "DuplicateLinkId";
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NegativeAttribute: return "NegativeAttribute";
    case ErrorCode::BrokenChain: return "BrokenChain";
    case ErrorCode::WrongEndpoints: return "WrongEndpoints";
    case ErrorCode::RepeatedNode: return "RepeatedNode";
    case ErrorCode::UnknownLink: return "UnknownLink";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::EmptyPath: return "EmptyPath";
    case ErrorCode::NoPathExists: return "NoPathExists";
    case ErrorCode::UselessRow: return "UselessRow";
    case ErrorCode::LinkNotOnPath: return "LinkNotOnPath";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SOutOfRange: return "SOutOfRange";
    case ErrorCode::MOutOfRange: return "MOutOfRange";
    case ErrorCode::NOutOfRange: return "NOutOfRange";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

// Precondition and validation failures. Solver outcomes such as infeasible
// or unbounded programs are reported through Status, not thrown.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sparse_od

#endif  // SPARSE_OD_ERROR_HPP_
