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
#include "gammaclutter/quadrature.hpp"
#include "gammaclutter/scenario.hpp"

#include <complex>
#include <vector>

namespace gcl {

using cplx = std::complex<double>;

// Rational speckle MGF at one texture node u, in the normalized power variable:
//   finite kappa:   prod (1 + aq_m s)^(kappa-1) / prod (1 + a_m s)^kappa
//   infinite kappa: exp{-sum [ln(1 + aq_m s) + S b_m s / (1 + aq_m s)]}
// For infinite kappa `a` equals `aq` and `b` holds the steady-target weights.
// Coefficients are sorted ascending (index M-1 is the dominant mode).
struct SpeckleCoefficients {
    std::vector<double> a;
    std::vector<double> aq;
    std::vector<double> b;
    double u = 1.0;
    Kappa kappa{1};
    double S = 0.0;

    int pulses() const { return static_cast<int>(a.size()); }
    double mean() const;
};

// How the per-node spectrum of the aggregated correlation matrix is obtained.
enum class SpectrumModel {
    Effective, // eigenvalues of C_sc(u), solved afresh at every node
    Diagonal,  // eig(Cc) and eig(Cs) paired as if the matrices commuted
    Dmg,       // rank-one-plus-identity spectra matched to the effective looks
};

// (qu Cc + (S/kappa) Cs) / (qu + S/kappa). Throws DegenerateMix when the mix
// weight vanishes.
Matrix aggregated_corr(const Matrix &cc, const Matrix &cs, double q, double u, double S, Kappa kappa);

// Builds coefficient sets for one scenario and spectrum model; eigen-systems of
// Cc and Cs are computed once and reused for every texture node.
class CoefficientFactory {
public:
    CoefficientFactory(const ScenarioParams &params, SpectrumModel model);

    SpeckleCoefficients at(double u) const;
    SpeckleCoefficients at(double u, double sir) const; // S overridden

    const ScenarioParams &params() const { return params_; }
    SpectrumModel model() const { return model_; }
    const EigenSystem &clutter_system() const { return clutter_; }

private:
    ScenarioParams params_;
    SpectrumModel model_;
    Matrix cc_, cs_;
    EigenSystem clutter_;
    Vector gamma_c_, gamma_s_;     // spectra used by the Diagonal / Dmg models
    std::vector<double> steady_b_; // infinite-kappa weights
};

// Effective model at node u (fresh eigen-decomposition of C_sc(u)).
SpeckleCoefficients speckle_coeffs(const ScenarioParams &params, double u);

// Sum of principal logarithms; a valid log M(s) on Re s > -1/max(a).
cplx log_mgf_eval(const SpeckleCoefficients &coeffs, cplx s);
// Throws PoleHit when |1 + a_m s| < 1e-300.
cplx mgf_eval(const SpeckleCoefficients &coeffs, cplx s);

struct MomentReport {
    double mean = 0.0;
    double variance = 0.0;
    struct Components {
        double noise_clutter = 0.0; // (1 - q^2) / M
        double texture = 0.0;       // zeta q^2 / L
        double target = 0.0;        // S^2 / (kappa B)
        double noise_target = 0.0;  // 2 S (1 - q) / M
        double clutter_target = 0.0; // 2 S q / N
    } components;
    double looks_clutter = 0.0; // L
    double looks_target = 0.0;  // B
    double looks_cross = 0.0;   // N
    double zeta = 1.0;
};

MomentReport analytic_moments(const ScenarioParams &params);

struct MomentEstimate {
    double mean = 0.0;
    double variance = 0.0;
};

// Mean and variance from central differences of the texture-averaged CGF at the
// origin (h = 1e-4, one Richardson step).
MomentEstimate cgf_moment_check(const ScenarioParams &params, const TextureRule &rule,
                                SpectrumModel model = SpectrumModel::Effective);

// b_m = (1/M) [R_c Cs R_c^T]_mm. Sums to 1.
std::vector<double> steady_target_weights(const EigenSystem &clutter, const Matrix &cs);
// Same weights from the rotation form (1/M) sum_n [R_c R_s^T]^2_mn gamma^s_n.
std::vector<double> steady_target_weights(const EigenSystem &clutter, const EigenSystem &target);

cplx mgf_kappa_inf(const ScenarioParams &params, double u, cplx s);

// Closed form for a fully correlated target (spec_s all ones), any kappa.
cplx mgf_fully_correlated(const ScenarioParams &params, double u, cplx s);

// Which rotation realizes an identity target correlation matrix.
enum class TargetRotation {
    Literal,        // L_s from the target's own eigen-system (identity -> identity)
    ClutterAligned, // identity target borrows R_c
};

// Steady target with random signs, cosh-product form:
//   det(I + (s/M) Qn)^(-1) exp(-S Tr{Cs A}) prod_{i != j} cosh(S [L_s A L_s^T]_ij)
// with A = (s/M) (I + (s/M)(1 - q + q u Cc))^(-1).
cplx mgf_first_principles_steady(const ScenarioParams &params, double u, cplx s,
                                 TargetRotation rotation = TargetRotation::Literal);
// Same model with the sign average done by enumerating all 2^M sign vectors
// (M <= 20). The cosh product agrees with it for M <= 2 or decoupled modes.
cplx mgf_first_principles_steady_enumerated(const ScenarioParams &params, double u, cplx s,
                                            TargetRotation rotation = TargetRotation::Literal);

// q = 1, fully correlated clutter, uncorrelated steady target.
cplx worst_case_mgf(double S, int M, cplx s);
// Shifted single-pulse Rician survival: P(X > v - (1 - 1/M) S) with X the power
// of a unit-noise channel carrying a steady signal of power S / M.
double effsw0_survival(double v, double S, int M);
// MGF matching effsw0_survival (the worst-case MGF without its cosh factor).
cplx effsw0_mgf(double S, int M, cplx s);

} // namespace gcl
