// Copyright 2026 The qsl Authors
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

namespace qsl {

enum class ErrorCode {
  NonHermitian,
  DimensionMismatch,
  NoOccupation,
  StepTooLarge,
  DomainError,
  DegenerateInterval,
  NotReached,
  InsufficientLevels,
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoOccupation: return "NoOccupation";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::NotReached: return "NotReached";
    case ErrorCode::InsufficientLevels: return "InsufficientLevels";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Numerical failures (as opposed to bad input) are the ones a caller may
/// want to retry with different step or horizon settings.
constexpr bool is_numerical_failure(ErrorCode code) {
  return code == ErrorCode::StepTooLarge || code == ErrorCode::NotReached ||
         code == ErrorCode::NoOccupation || code == ErrorCode::DegenerateInterval;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace qsl
