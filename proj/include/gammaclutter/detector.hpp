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

#include "gammaclutter/texture.hpp"

#include <functional>
#include <vector>

namespace gcl {

struct DetectionCurve {
    std::vector<double> sir_grid; // linear S
    std::vector<double> pd;
    double threshold = 0.0; // v_b
    double pfa = 0.0;
    Method method = Method::EffSdp;
};

// Root of ln sf(v) = ln pfa by bracketing from the mean and Illinois regula falsi
// in log-survival. Converges to 1e-9 relative in survival (well inside the
// 1e-3 pfa tolerance). pfa = 1 gives 0. Throws BracketFail when the survival
// underflows before reaching pfa.
double threshold_for_level(const std::function<double(double)> &sf, double mean, int pulses, double pfa);

// Threshold of the null scenario (S forced to 0).
double threshold_for_pfa(const ScenarioParams &params, double pfa, Method method = Method::EffSdp,
                         const CompoundOptions &opts = {});

// P_D(S) = F(v_b; S) at the null threshold. The grid must be ascending.
DetectionCurve pd_curve(const ScenarioParams &params, double pfa, const std::vector<double> &sir_grid,
                        Method method = Method::EffSdp, const CompoundOptions &opts = {});

} // namespace gcl
