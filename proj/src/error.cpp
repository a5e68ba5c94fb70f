// Copyright 2026 The cauchyratio Authors
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

#include "cauchyratio/error.hpp"

namespace cauchyratio {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kBadSum: return "BadSum";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::kNotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::kNonPositiveDiagonal: return "NonPositiveDiagonal";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kNoFactors: return "NoFactors";
    case ErrorCode::kIntegrabilityNotAsserted: return "IntegrabilityNotAsserted";
    case ErrorCode::kNotIntegrable: return "NotIntegrable";
    case ErrorCode::kBadParameter: return "BadParameter";
    case ErrorCode::kDecompositionFailure: return "DecompositionFailure";
    case ErrorCode::kBadExponent: return "BadExponent";
    case ErrorCode::kNonFiniteLogDensity: return "NonFiniteLogDensity";
    case ErrorCode::kDegenerateChain: return "DegenerateChain";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kUnknownExperiment: return "UnknownExperiment";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace cauchyratio
