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

#include "gammaclutter/corrmodel.hpp"

#include <limits>
#include <string>

namespace gcl {

// Target fluctuation class: a positive integer, or the steady-target limit.
class Kappa {
public:
    static Kappa infinite() { return Kappa(); }
    explicit Kappa(int value);

    bool is_infinite() const { return value_ == 0; }
    int value() const; // finite only
    double as_double() const
    {
        return is_infinite() ? std::numeric_limits<double>::infinity() : static_cast<double>(value_);
    }
    std::string to_string() const;

    friend bool operator==(const Kappa &, const Kappa &) = default;

private:
    Kappa() = default;
    int value_ = 0; // 0 encodes infinity
};

inline constexpr double kInfiniteShape = std::numeric_limits<double>::infinity();

// Normalized detection scenario: interference power (noise + mean clutter) is 1,
// S is the signal-to-interference ratio and q the clutter fraction.
struct ScenarioParams {
    int M = 1;
    Kappa kappa{1};
    double S = 0.0;
    double q = 0.0;
    double nu = kInfiniteShape; // texture shape; infinity = Gaussian clutter
    CorrelationSpec spec_s = CorrelationSpec::gauss_markov(0.0, 1);
    CorrelationSpec spec_c = CorrelationSpec::gauss_markov(0.0, 1);

    // Throws InvalidParameter / DimensionMismatch.
    void validate() const;

    // Gauss-Markov convenience constructor.
    static ScenarioParams gauss_markov(int pulses, Kappa kappa, double sir, double clutter_fraction, double nu,
                                       double rho_s, double rho_c);
};

} // namespace gcl
