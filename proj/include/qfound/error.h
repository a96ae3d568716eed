// Copyright 2026 The qfound Authors
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

#ifndef QFOUND_ERROR_H
#define QFOUND_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfound {

enum class ErrorCode {
    DimensionMismatch,
    NotHermitian,
    NotNormalized,
    NotOrthonormal,
    NotMaximallyEntangled,
    ZeroProbabilityOutcome,
    EigenvalueNotInSpectrum,
    InvalidRaySet,
    InvalidSquare,
    InconsistentState,
    StepTooLarge,
    StartOnNode,
    InvalidParameter,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

/// All library failures are reported with this exception; `code()` names the
/// violated precondition.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace qfound

#endif
