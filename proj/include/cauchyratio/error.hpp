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

#ifndef CAUCHYRATIO_ERROR_HPP_
#define CAUCHYRATIO_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cauchyratio {

enum class ErrorCode {
  kNegativeWeight,
  kBadSum,
  kEmptyInput,
  kDimensionMismatch,
  kNotSymmetric,
  kNotAntisymmetric,
  kNotPositiveSemidefinite,
  kNonPositiveDiagonal,
  kNotPositiveDefinite,
  kNoFactors,
  kIntegrabilityNotAsserted,
  kNotIntegrable,
  kBadParameter,
  kDecompositionFailure,
  kBadExponent,
  kNonFiniteLogDensity,
  kDegenerateChain,
  kNoConvergence,
  kDomainError,
  kOutOfRange,
  kEmptySample,
  kTooFewSamples,
  kUnknownExperiment,
  kConfigError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// All library failures surface as this exception; `code()` identifies the
/// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cauchyratio

#endif  // CAUCHYRATIO_ERROR_HPP_
