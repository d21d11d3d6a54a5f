// Copyright 2026 The zeno Authors
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

namespace zeno {

enum class ErrorCode {
  NotHermitian,
  NotUnitary,
  NonFinite,
  ConvergenceFailure,
  DimensionMismatch,
  InvalidState,
  InvalidParameter,
  DegenerateClustering,
  DegenerateKickPhases,
  DegenerateCouplingLevels,
  NonHermitianDensityEvolution,
  IndexOutOfRange,
  SchemaViolation,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DegenerateClustering: return "DegenerateClustering";
    case ErrorCode::DegenerateKickPhases: return "DegenerateKickPhases";
    case ErrorCode::DegenerateCouplingLevels: return "DegenerateCouplingLevels";
    case ErrorCode::NonHermitianDensityEvolution: return "NonHermitianDensityEvolution";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Single exception type for the library; the code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zeno
