// Copyright 2026 The agecmpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AGECMPC_ERRORS_HPP
#define AGECMPC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace agecmpc {

enum class ErrorCode {
  kZeroInverse,
  kDuplicatePoints,
  kSingularSupportMatrix,
  kShapeMismatch,
  kIndivisibleDimensions,
  kInvalidScheme,
  kInvalidPrime,
  kNoCaseMatched,
  kInsufficientResponders,
  kInconsistentResponses,
  kTooManyColluders,
  kSchemeMismatch,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroInverse: return "ZeroInverse";
    case ErrorCode::kDuplicatePoints: return "DuplicatePoints";
    case ErrorCode::kSingularSupportMatrix: return "SingularSupportMatrix";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kIndivisibleDimensions: return "IndivisibleDimensions";
    case ErrorCode::kInvalidScheme: return "InvalidScheme";
    case ErrorCode::kInvalidPrime: return "InvalidPrime";
    case ErrorCode::kNoCaseMatched: return "NoCaseMatched";
    case ErrorCode::kInsufficientResponders: return "InsufficientResponders";
    case ErrorCode::kInconsistentResponses: return "InconsistentResponses";
    case ErrorCode::kTooManyColluders: return "TooManyColluders";
    case ErrorCode::kSchemeMismatch: return "SchemeMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure
/// class; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace agecmpc

#endif  // AGECMPC_ERRORS_HPP
