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

#include "gammaclutter/detector.hpp"

#include "gammaclutter/error.hpp"

#include <algorithm>
#include <cmath>

namespace gcl {

double threshold_for_level(const std::function<double(double)> &sf, double mean, int pulses, double pfa)
{
    if (!(pfa > 0.0 && pfa <= 1.0)) fail(ErrorCode::InvalidParameter, "pfa must lie in (0, 1]");
    if (pfa == 1.0) return 0.0;
    const double target = std::log(pfa);
    const auto g = [&](double v) {
        const double f = sf(v);
        return f > 0.0 ? std::log(f) - target : -std::numeric_limits<double>::infinity();
    };

    // Bracket [lo, hi] with g(lo) >= 0 > g(hi).
    double lo = mean, hi = mean * (1.0 + 10.0 * -target / pulses);
    double glo = g(lo);
    while (glo < 0.0) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-300) fail(ErrorCode::BracketFail, "survival below pfa at v -> 0");
        glo = g(lo);
    }
    double ghi = g(hi);
    while (ghi >= 0.0) {
        lo = hi;
        glo = ghi;
        hi *= 2.0;
        if (hi > 1e8 * std::max(mean, 1.0)) fail(ErrorCode::BracketFail, "threshold bracket not found");
        ghi = g(hi);
    }
    if (std::isinf(ghi)) {
        // Survival underflowed; shrink until finite or the bracket is pinned.
        while (std::isinf(ghi) && hi - lo > 1e-12 * hi) {
            const double mid = 0.5 * (lo + hi);
            const double gm = g(mid);
            if (gm >= 0.0) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
                ghi = gm;
            }
        }
        if (std::isinf(ghi) && glo > 1e-9) fail(ErrorCode::BracketFail, "survival underflows before reaching pfa");
    }

    // Illinois regula falsi; log-survival is near-linear in the tail.
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(glo) <= 1e-9) return lo;
        if (std::abs(ghi) <= 1e-9) return hi;
        double x = std::isinf(ghi) ? 0.5 * (lo + hi) : (lo * ghi - hi * glo) / (ghi - glo);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        const double gx = g(x);
        if (gx >= 0.0) {
            lo = x;
            glo = gx;
            if (side == 1) ghi *= 0.5;
            side = 1;
        } else {
            hi = x;
            ghi = gx;
            if (side == -1) glo *= 0.5;
            side = -1;
        }
        if (hi - lo <= 1e-14 * hi) return gx >= 0.0 ? lo : hi;
    }
    fail(ErrorCode::NoConvergence, "threshold iteration did not converge");
}

double threshold_for_pfa(const ScenarioParams &params, double pfa, Method method, const CompoundOptions &opts)
{
    ScenarioParams null = params;
    null.S = 0.0;
    const CompoundModel model(null, method, opts);
    return threshold_for_level([&model](double v) { return model.survival(v); }, model.mean(), null.M, pfa);
}

DetectionCurve pd_curve(const ScenarioParams &params, double pfa, const std::vector<double> &sir_grid, Method method,
                        const CompoundOptions &opts)
{
    if (!std::is_sorted(sir_grid.begin(), sir_grid.end())) fail(ErrorCode::InvalidParameter, "SIR grid must be ascending");
    DetectionCurve out;
    out.sir_grid = sir_grid;
    out.pfa = pfa;
    out.method = method;
    out.threshold = threshold_for_pfa(params, pfa, method, opts);
    out.pd.reserve(sir_grid.size());
    for (double s : sir_grid) {
        if (!(s >= 0.0)) fail(ErrorCode::InvalidParameter, "SIR must be >= 0");
        ScenarioParams p = params;
        p.S = s;
        const CompoundModel model(p, method, opts);
        out.pd.push_back(model.survival_grid({out.threshold}).front());
    }
    return out;
}

} // namespace gcl
