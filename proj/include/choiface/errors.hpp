// Copyright 2026 The choiface Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace choiface {

enum class ErrorCode {
  DimensionMismatch,
  NonFinite,
  NonHermitian,
  NotPSD,
  NotMember,
  NotUnitary,
  InvalidDirection,
  DegenerateDirection,
  RankTooHigh,
  IterationOverflow,
  DecompositionOverflow,
  BadDimension,
  Infeasible,
  DegenerateSample,
  UnknownExample,
  InvalidTolerance,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidDirection: return "InvalidDirection";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::IterationOverflow: return "IterationOverflow";
    case ErrorCode::DecompositionOverflow: return "DecompositionOverflow";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace choiface
