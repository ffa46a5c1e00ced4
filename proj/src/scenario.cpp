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

#include "gammaclutter/scenario.hpp"

#include "gammaclutter/error.hpp"

#include <cmath>

namespace gcl {

Kappa::Kappa(int value) : value_(value)
{
    if (value < 1) fail(ErrorCode::InvalidParameter, "fluctuation class must be an integer >= 1");
}

int Kappa::value() const
{
    if (is_infinite()) fail(ErrorCode::InvalidParameter, "infinite fluctuation class has no integer value");
    return value_;
}

std::string Kappa::to_string() const { return is_infinite() ? std::string("inf") : std::to_string(value_); }

void ScenarioParams::validate() const
{
    if (M < 1) fail(ErrorCode::InvalidParameter, "M must be >= 1");
    if (spec_s.pulses() != M || spec_c.pulses() != M)
        fail(ErrorCode::DimensionMismatch, "correlation specs must have M pulses");
    if (!(S >= 0.0) || std::isinf(S)) fail(ErrorCode::InvalidParameter, "S must be finite and >= 0");
    if (!(q >= 0.0 && q <= 1.0)) fail(ErrorCode::InvalidParameter, "q must lie in [0, 1]");
    if (!(nu > 0.0)) fail(ErrorCode::InvalidShape, "nu must be > 0 (or infinite)");
}

ScenarioParams ScenarioParams::gauss_markov(int pulses, Kappa kappa, double sir, double clutter_fraction,
                                            double nu, double rho_s, double rho_c)
{
    ScenarioParams p;
    p.M = pulses;
    p.kappa = kappa;
    p.S = sir;
    p.q = clutter_fraction;
    p.nu = nu;
    p.spec_s = CorrelationSpec::gauss_markov(rho_s, pulses);
    p.spec_c = CorrelationSpec::gauss_markov(rho_c, pulses);
    p.validate();
    return p;
}

} // namespace gcl
