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

#include "gammaclutter/mgf.hpp"
#include "gammaclutter/quadrature.hpp"
#include "gammaclutter/saddlepoint.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace gcl {

// Survival evaluation method: spectrum model times inversion method.
enum class Method { EffSdp, EffSp, DmgSdp, DmgSp, DiagSdp, DiagSp, EffPade };

std::string to_string(Method method);
// Accepts "eff-sdp", "eff-sp", "dmg-sdp", "dmg-sp", "diag-sdp", "diag-sp", "eff-pade"
// (also "sdp" / "sp" for the effective model). Throws InvalidParameter.
Method parse_method(const std::string &name);
SpectrumModel spectrum_model(Method method);
std::vector<Method> all_methods(); // the six spectrum-model x inversion pairs (no Pade)

struct CompoundOptions {
    int texture_order = kDefaultTextureOrder;
    bool refine_order = true;       // double L while the probe check exceeds refine_tolerance (not for SP)
    double refine_tolerance = 1e-8; // absolute, on probes with survival >= 1e-6
    SdpOptions sdp{};
    PadeOrder pade = PadeOrder::P33;
};

// Compound survival F(v) = sum_l w_l F_spk(v; q u_l). Per-node speckle laws are
// built once (the effective model solves a fresh eigenproblem at every node).
class CompoundModel {
public:
    CompoundModel(const ScenarioParams &params, Method method, const CompoundOptions &opts = {});

    const ScenarioParams &params() const { return params_; }
    Method method() const { return method_; }
    const TextureRule &rule() const { return rule_; }
    double mean() const { return 1.0 + params_.S; }

    // Speckle survival at node l.
    double node_survival(std::size_t node, double v) const;

    double survival(double v) const;
    // OpenMP over the (v, node) lattice; node sums run in fixed order, so the
    // result is bit-identical to survival_grid_serial.
    std::vector<double> survival_grid(const std::vector<double> &v) const;
    std::vector<double> survival_grid_serial(const std::vector<double> &v) const;

private:
    void build(int order);

    ScenarioParams params_;
    Method method_;
    CompoundOptions opts_;
    TextureRule rule_;
    std::vector<SpeckleDistribution> nodes_;
};

// One-shot compound survival with an explicit texture rule (no refinement).
double compound_survival(double v, const ScenarioParams &params, Method method, const TextureRule &rule);
double compound_survival(double v, const ScenarioParams &params, Method method = Method::EffSdp);

// Monotone (PCHIP) tabulation of a survival function on [0, v_max]; values
// beyond v_max are 0. Used where millions of evaluations are needed.
class SurvivalCurve {
public:
    SurvivalCurve(std::vector<double> v, std::vector<double> sf);
    static SurvivalCurve tabulate(const std::function<double(double)> &sf, double v_max, int points);
    static SurvivalCurve tabulate(const CompoundModel &model, double v_max, int points);

    double operator()(double v) const;
    const std::vector<double> &abscissae() const { return v_; }
    const std::vector<double> &values() const { return sf_; }

private:
    std::vector<double> v_, sf_;
    std::shared_ptr<const std::function<double(double)>> interp_;
};

// Smallest grid end where the survival has dropped below `floor` (doubling from
// the mean). Throws BracketFail past 1e6 times the mean.
double survival_horizon(const std::function<double(double)> &sf, double mean, double floor);

struct BromwichOptions {
    double decay = 30.0;      // aliasing exponent: T * distance-to-singularity
    double tolerance = 1e-14; // stop when the Euler-averaged sum settles
    int max_blocks = 20000;
};

// Survival from the transform M(s) = E[exp(-s X)] by the trapezoid rule on
// Re s = c, -1/pole_scale < c < 0: F(v) = (1/pi) int_0^inf Re[M(c+iy) e^{(c+iy)v} / -(c+iy)] dy.
// Half-period blocks of the oscillation are Euler-averaged. Throws
// ContourTooClose if c lies within 1e-6 of 0 or of the pole.
double bromwich_survival(const std::function<cplx(cplx)> &mgf, double v, double c, double pole_scale,
                         const BromwichOptions &opts = {});

// Independent oracle for one texture node u: contour through the minimum of the
// real phase (golden-section search, not the saddle solver).
double bromwich_oracle(double v, const ScenarioParams &params, double u, SpectrumModel model = SpectrumModel::Effective);
// Texture average of per-node oracles; nodes with weight < 1e-12 are dropped.
double bromwich_compound(double v, const ScenarioParams &params, const TextureRule &rule,
                         SpectrumModel model = SpectrumModel::Effective);
// Oracle for an arbitrary transform with known pole scale (largest a).
double bromwich_generic(const std::function<cplx(cplx)> &mgf, double v, double pole_scale);

} // namespace gcl
