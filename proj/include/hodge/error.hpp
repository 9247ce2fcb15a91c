// Copyright 2026 The Hodge Allocation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HODGE_ERROR_HPP
#define HODGE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hodge {

enum class ErrorCode {
  kDuplicateEdge,
  kNonpositiveWeight,
  kMissingNullState,
  kMultipleNullStates,
  kDuplicateState,
  kUnknownState,
  kSelfLoop,
  kNotAnEdge,
  kDimensionMismatch,
  kInvalidGame,
  kSolverDidNotConverge,
  kMissingAnchor,
  kDuplicateAnchor,
  kUnreachableTarget,
  kIsolatedState,
  kDisconnected,
  kNotAWalk,
  kTruncatedPath,
  kAllPathsTruncated,
  kTooLarge,
  kPlayerOutOfRange,
  kInvalidEdge,
  kInvalidArgument,
  kLPNumericalFailure,
  kAntisymmetryViolated,
  kParseError,
  kValidationError,
};

// Stable name of an error class, e.g. "DuplicateEdge".
std::string_view error_name(ErrorCode code);

// All library failures are reported through this exception. The code is the
// error class; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hodge

#endif  // HODGE_ERROR_HPP
