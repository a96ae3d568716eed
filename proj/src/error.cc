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

#include "qfound/error.h"

namespace qfound {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotNormalized:
            return "NotNormalized";
        case ErrorCode::NotOrthonormal:
            return "NotOrthonormal";
        case ErrorCode::NotMaximallyEntangled:
            return "NotMaximallyEntangled";
        case ErrorCode::ZeroProbabilityOutcome:
            return "ZeroProbabilityOutcome";
        case ErrorCode::EigenvalueNotInSpectrum:
            return "EigenvalueNotInSpectrum";
        case ErrorCode::InvalidRaySet:
            return "InvalidRaySet";
        case ErrorCode::InvalidSquare:
            return "InvalidSquare";
        case ErrorCode::InconsistentState:
            return "InconsistentState";
        case ErrorCode::StepTooLarge:
            return "StepTooLarge";
        case ErrorCode::StartOnNode:
            return "StartOnNode";
        case ErrorCode::InvalidParameter:
            return "InvalidParameter";
        case ErrorCode::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

}  // namespace qfound
