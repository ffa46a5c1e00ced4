// SPDX-License-Identifier: Apache-2.0
//
// gammaclutter: detection statistics for fluctuating targets in compound clutter
// Copyright (C) 2026 The gammaclutter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "gammaclutter/error.hpp"

namespace gcl {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidCorrelation: return "InvalidCorrelation";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::InvalidLooks: return "InvalidLooks";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::DegenerateMix: return "DegenerateMix";
    case ErrorCode::DegenerateV: return "DegenerateV";
    case ErrorCode::BranchJump: return "BranchJump";
    case ErrorCode::PadePoleOnPath: return "PadePoleOnPath";
    case ErrorCode::BracketFail: return "BracketFail";
    case ErrorCode::ContourTooClose: return "ContourTooClose";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::NonMonotoneSF: return "NonMonotoneSF";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

bool is_config_error(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidCorrelation:
    case ErrorCode::InvalidParameter:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidLooks:
    case ErrorCode::InvalidShape:
    case ErrorCode::OrderTooLarge:
    case ErrorCode::Io:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

void fail(ErrorCode code, const std::string &what) { throw Error(code, what); }

} // namespace gcl
