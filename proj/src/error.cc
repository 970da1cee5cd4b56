// Copyright 2026 The qecopt Authors
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

#include "qecopt/error.h"

namespace qecopt {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonHermitian:
            return "NonHermitian";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::NotNormalized:
            return "NotNormalized";
        case ErrorKind::NotUnitaryKind:
            return "NotUnitaryKind";
        case ErrorKind::UnknownCode:
            return "UnknownCode";
        case ErrorKind::NonInjectiveOutcomeMap:
            return "NonInjectiveOutcomeMap";
        case ErrorKind::AuxTooSmall:
            return "AuxTooSmall";
        case ErrorKind::NonUnitaryGate:
            return "NonUnitaryGate";
        case ErrorKind::MeasurementInUnitarySegment:
            return "MeasurementInUnitarySegment";
        case ErrorKind::StaleCache:
            return "StaleCache";
        case ErrorKind::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorKind::FixedSlot:
            return "FixedSlot";
        case ErrorKind::ConfigInvalid:
            return "ConfigInvalid";
        case ErrorKind::InputNotOptimal:
            return "InputNotOptimal";
        case ErrorKind::ResetOnEntangledQubit:
            return "ResetOnEntangledQubit";
        case ErrorKind::NonUnitarySequence:
            return "NonUnitarySequence";
        case ErrorKind::ParseError:
            return "ParseError";
        case ErrorKind::ContractMismatch:
            return "ContractMismatch";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

}  // namespace qecopt
