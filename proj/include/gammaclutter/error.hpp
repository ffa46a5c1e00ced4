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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gcl {

enum class ErrorCode {
    InvalidCorrelation,
    InvalidParameter,
    DimensionMismatch,
    NegativeEigenvalue,
    InvalidLooks,
    NoConvergence,
    PoleHit,
    DegenerateMix,
    DegenerateV,
    BranchJump,
    PadePoleOnPath,
    BracketFail,
    ContourTooClose,
    InvalidShape,
    OrderTooLarge,
    NonMonotoneSF,
    Io,
};

std::string_view to_string(ErrorCode code);

// Configuration-class errors (bad input) versus numerical failures; the CLI maps
// them to distinct exit codes.
bool is_config_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &what);

} // namespace gcl
