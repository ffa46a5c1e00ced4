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

#include <array>
#include <complex>
#include <optional>
#include <vector>

namespace gcl {

enum class Tail { Left, Right };

// Saddle point of Helstrom's phase Phi(s) = ln M(s) - ln|s| + s v and the
// tau-phase data tau(z) = Phi(s0) - Phi(s0 - z/v) built from it.
struct SaddleState {
    double s0 = 0.0;
    double v = 0.0;
    std::vector<double> c;  // c[0] = 1/(s0 v), c[m] = a_m / (v (1 + a_m s0))
    std::vector<double> cq; // same with aq (cq[0] = c[0])
    double r2 = 0.0;
    double phase0 = 0.0; // Phi(s0)
    Tail side = Tail::Right;

    // Merged phase terms: tau(z) = z + ln(1 - c0 z) + sum w ln(1 - c z) - sum beta d z / (1 - c z).
    std::vector<double> term_c, term_d, term_w, term_beta;

    double r(int n) const; // series coefficient; r(1) = 1 at a converged saddle
};

struct SdpOptions {
    int nodes = 48;          // generalized Gauss-Laguerre order for the tau integral
    double weight_floor = 1e-17;
};

enum class PadeOrder { P22 = 2, P33 = 3 };

// Residual-series Pade data for the accelerated tau-phase.
struct PadePhase {
    double c0 = 0.0, c_top = 0.0, cq_top = 0.0; // explicit log terms
    double cbar = 0.0, cqbar = 0.0;
    double kappa = 1.0;
    int rest = 0; // number of pulses folded into cbar (M - 1)
    std::array<double, 7> rbar{}; // rbar[n] for n = 2..6
    std::vector<double> num, den; // residual ~ num(z) / den(z), den[0] = 1

    cplx tau(cplx z) const;
    cplx dtau(cplx z) const;
};

// Survival of one speckle law; the coefficient set is preprocessed once (equal
// poles merged) and reused across power levels.
class SpeckleDistribution {
public:
    explicit SpeckleDistribution(SpeckleCoefficients coeffs);

    const SpeckleCoefficients &coefficients() const { return coeffs_; }
    double mean() const { return mean_; }
    double max_pole() const { return alpha_max_; }

    // ln M(s) and its first two derivatives on the real axis.
    double cgf(double s) const;
    double cgf_d1(double s) const;
    double cgf_d2(double s) const;

    double phase(double s, double v) const;
    SaddleState saddle(double v) const;

    double survival_sp(double v) const;
    double survival_sdp(double v, const SdpOptions &opts = {}) const;
    // Falls back to the exact phase when the approximant has a pole inside the
    // integration range or kappa is infinite. `used_pade` reports which path ran.
    double survival_pade(double v, PadeOrder order = PadeOrder::P33, const SdpOptions &opts = {},
                         bool *used_pade = nullptr) const;

private:
    SpeckleCoefficients coeffs_;
    std::vector<double> alpha_, weight_, beta_;
    double alpha_max_ = 0.0;
    double mean_ = 0.0;
};

double phase(double s, double v, const SpeckleCoefficients &coeffs);
SaddleState solve_saddle(double v, const SpeckleCoefficients &coeffs);
cplx tau_phase(cplx z, const SaddleState &state);
cplx tau_phase_derivative(cplx z, const SaddleState &state);
// Root of tau(z) = tau with Im z > 0 on the steepest-descent branch; `warm` is a
// nearby root on the same branch.
cplx invert_tau(double tau, const SaddleState &state, std::optional<cplx> warm = std::nullopt);

double survival_sdp(double v, const SpeckleCoefficients &coeffs, const SdpOptions &opts = {});
double survival_sp(double v, const SpeckleCoefficients &coeffs);
PadePhase build_pade(const SaddleState &state, const SpeckleCoefficients &coeffs, PadeOrder order);
double pade_survival(double v, const SpeckleCoefficients &coeffs, PadeOrder order = PadeOrder::P33);

} // namespace gcl
