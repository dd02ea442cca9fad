// Copyright 2026 The stinc Authors
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

#include "stinc/error.hpp"

namespace stinc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kConfiguration: return "configuration";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kNonIntegrableDensity: return "non-integrable-density";
    case ErrorCode::kQuadratureNonconvergence: return "quadrature-nonconvergence";
    case ErrorCode::kInsufficientFourierRange: return "insufficient-fourier-range";
    case ErrorCode::kSingularOperator: return "singular-operator";
    case ErrorCode::kResidualFailure: return "residual-failure";
    case ErrorCode::kNoConvergence: return "no-convergence";
    case ErrorCode::kSupportLeakage: return "support-leakage";
    case ErrorCode::kPositivityViolation: return "positivity-violation";
    case ErrorCode::kRootFindingFailure: return "root-finding-failure";
    case ErrorCode::kGramSingular: return "gram-singular";
    case ErrorCode::kFactorizationFailure: return "factorization-failure";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace stinc
