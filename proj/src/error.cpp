// Copyright 2026 The macroreal Authors
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

#include "macroreal/error.hpp"

namespace macroreal {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::BadDim: return "BadDim";
        case ErrorCode::InvalidBloch: return "InvalidBloch";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::TraceNotOne: return "TraceNotOne";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::BadCase: return "BadCase";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::NotOrthogonal: return "NotOrthogonal";
        case ErrorCode::NotDichotomic: return "NotDichotomic";
        case ErrorCode::BadProjectors: return "BadProjectors";
        case ErrorCode::MissingData: return "MissingData";
        case ErrorCode::WrongSubset: return "WrongSubset";
        case ErrorCode::WrongKind: return "WrongKind";
        case ErrorCode::UnknownFamily: return "UnknownFamily";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::Unattainable: return "Unattainable";
        case ErrorCode::BadInput: return "BadInput";
        case ErrorCode::InvariantBreach: return "InvariantBreach";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) { return code != ErrorCode::InvariantBreach; }

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace macroreal
