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

#include "gammaclutter/mgf.hpp"

#include "gammaclutter/error.hpp"

#include <boost/math/distributions/non_central_chi_squared.hpp>

#include <cmath>
#include <numeric>

namespace gcl {

namespace {

using CMatrix = Eigen::MatrixXcd;

cplx checked_factor(double a, cplx s)
{
    const cplx f = 1.0 + a * s;
    if (std::abs(f) < 1e-300) fail(ErrorCode::PoleHit, "MGF evaluated at a pole");
    return f;
}

// log cosh(z) without overflow for large |Re z|.
cplx log_cosh(cplx z)
{
    if (z.real() < 0.0) z = -z;
    return z + std::log(1.0 + std::exp(-2.0 * z)) - std::log(2.0);
}

std::vector<double> clutter_zeros(const Vector &gamma_c, double q, double u)
{
    const double m = static_cast<double>(gamma_c.size());
    std::vector<double> aq(static_cast<std::size_t>(gamma_c.size()));
    for (Eigen::Index i = 0; i < gamma_c.size(); ++i)
        aq[static_cast<std::size_t>(i)] = (1.0 - q + q * u * gamma_c(i)) / m;
    return aq;
}

// Rotation that realizes the target's loading matrix for the chosen convention.
Matrix target_loading(const ScenarioParams &params, const EigenSystem &clutter, TargetRotation rotation)
{
    EigenSystem target = eigen_decompose(params.spec_s);
    if (rotation == TargetRotation::ClutterAligned) target = align_identity_rotation(target, clutter);
    return loading_matrix(target);
}

// (s/M) (I + (s/M) Qn)^(-1) via the clutter eigen-basis.
CMatrix resolvent(const EigenSystem &clutter, const std::vector<double> &aq, cplx s)
{
    const Eigen::Index n = clutter.pulses();
    const double m = static_cast<double>(n);
    Eigen::VectorXcd d(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i) = (s / m) / checked_factor(aq[static_cast<std::size_t>(i)], s);
    const CMatrix r = clutter.rotation.cast<cplx>();
    return r.transpose() * d.asDiagonal() * r;
}

cplx log_det_factor(const std::vector<double> &aq, cplx s)
{
    cplx acc = 0.0;
    for (double x : aq) acc -= std::log(checked_factor(x, s));
    return acc;
}

} // namespace

double SpeckleCoefficients::mean() const
{
    double base = std::accumulate(aq.begin(), aq.end(), 0.0);
    if (kappa.is_infinite()) return base + S * std::accumulate(b.begin(), b.end(), 0.0);
    const double k = kappa.as_double();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += k * a[i] - (k - 1.0) * aq[i];
    return acc;
}

Matrix aggregated_corr(const Matrix &cc, const Matrix &cs, double q, double u, double S, Kappa kappa)
{
    if (cc.rows() != cs.rows() || cc.cols() != cs.cols()) fail(ErrorCode::DimensionMismatch, "Cc and Cs differ in size");
    const double wc = q * u;
    const double ws = kappa.is_infinite() ? 0.0 : S / kappa.as_double();
    const double mix = wc + ws;
    if (!(mix > 0.0)) fail(ErrorCode::DegenerateMix, "qu + S/kappa vanishes; noise-only path required");
    if (ws == 0.0) return cc;
    if (wc == 0.0) return cs;
    return (wc * cc + ws * cs) / mix;
}

CoefficientFactory::CoefficientFactory(const ScenarioParams &params, SpectrumModel model)
    : params_(params), model_(model)
{
    params_.validate();
    cc_ = build_matrix(params_.spec_c);
    cs_ = build_matrix(params_.spec_s);
    clutter_ = eigen_decompose(cc_);
    const double m = static_cast<double>(params_.M);
    switch (model_) {
    case SpectrumModel::Effective:
        steady_b_ = steady_target_weights(clutter_, cs_);
        break;
    case SpectrumModel::Diagonal:
        gamma_c_ = clutter_.eigenvalues;
        gamma_s_ = symmetric_eigenvalues(cs_);
        break;
    case SpectrumModel::Dmg:
        gamma_c_ = dmg_spectrum(effective_looks(cc_), params_.M).eigenvalues;
        gamma_s_ = dmg_spectrum(effective_looks(cs_), params_.M).eigenvalues;
        break;
    }
    if (model_ != SpectrumModel::Effective) {
        steady_b_.resize(static_cast<std::size_t>(params_.M));
        for (int i = 0; i < params_.M; ++i) steady_b_[static_cast<std::size_t>(i)] = gamma_s_(i) / m;
    }
}

SpeckleCoefficients CoefficientFactory::at(double u) const { return at(u, params_.S); }

SpeckleCoefficients CoefficientFactory::at(double u, double sir) const
{
    const int n = params_.M;
    const double m = static_cast<double>(n);
    const double q = params_.q;
    SpeckleCoefficients out;
    out.u = u;
    out.kappa = params_.kappa;
    out.S = sir;
    out.aq = clutter_zeros(model_ == SpectrumModel::Effective ? clutter_.eigenvalues : gamma_c_, q, u);

    if (params_.kappa.is_infinite()) {
        out.a = out.aq;
        out.b = steady_b_;
        return out;
    }
    const double kappa = params_.kappa.as_double();
    const double ws = sir / kappa;
    const double mix = q * u + ws;
    if (ws == 0.0 || !(mix > 0.0)) {
        out.a = out.aq;
        return out;
    }
    out.a.resize(static_cast<std::size_t>(n));
    if (model_ == SpectrumModel::Effective) {
        const Vector gamma_sc = symmetric_eigenvalues(aggregated_corr(cc_, cs_, q, u, sir, params_.kappa));
        for (int i = 0; i < n; ++i)
            out.a[static_cast<std::size_t>(i)] = (1.0 - q + mix * gamma_sc(i)) / m;
    } else {
        for (int i = 0; i < n; ++i)
            out.a[static_cast<std::size_t>(i)] = out.aq[static_cast<std::size_t>(i)] + ws * gamma_s_(i) / m;
    }
    return out;
}

SpeckleCoefficients speckle_coeffs(const ScenarioParams &params, double u)
{
    return CoefficientFactory(params, SpectrumModel::Effective).at(u);
}

cplx log_mgf_eval(const SpeckleCoefficients &coeffs, cplx s)
{
    cplx acc = 0.0;
    if (coeffs.kappa.is_infinite()) {
        for (std::size_t i = 0; i < coeffs.aq.size(); ++i) {
            const cplx f = checked_factor(coeffs.aq[i], s);
            acc -= std::log(f) + coeffs.S * coeffs.b[i] * s / f;
        }
        return acc;
    }
    const double kappa = coeffs.kappa.as_double();
    for (std::size_t i = 0; i < coeffs.a.size(); ++i) {
        acc -= kappa * std::log(checked_factor(coeffs.a[i], s));
        if (kappa > 1.0) acc += (kappa - 1.0) * std::log(checked_factor(coeffs.aq[i], s));
    }
    return acc;
}

cplx mgf_eval(const SpeckleCoefficients &coeffs, cplx s) { return std::exp(log_mgf_eval(coeffs, s)); }

MomentReport analytic_moments(const ScenarioParams &params)
{
    params.validate();
    const Matrix cc = build_matrix(params.spec_c);
    const Matrix cs = build_matrix(params.spec_s);
    const double m = static_cast<double>(params.M);
    const double q = params.q, S = params.S;

    MomentReport r;
    r.looks_clutter = effective_looks(cc);
    r.looks_target = effective_looks(cs);
    r.looks_cross = cross_looks(cc, cs);
    r.zeta = std::isinf(params.nu) ? 1.0 : 1.0 + (r.looks_clutter + 1.0) / params.nu;
    r.mean = 1.0 + S;
    r.components.noise_clutter = (1.0 - q * q) / m;
    r.components.texture = r.zeta * q * q / r.looks_clutter;
    r.components.target = params.kappa.is_infinite() ? 0.0 : S * S / (params.kappa.as_double() * r.looks_target);
    r.components.noise_target = 2.0 * S * (1.0 - q) / m;
    r.components.clutter_target = 2.0 * S * q / r.looks_cross;
    r.variance = r.components.noise_clutter + r.components.texture + r.components.target +
                 r.components.noise_target + r.components.clutter_target;
    return r;
}

MomentEstimate cgf_moment_check(const ScenarioParams &params, const TextureRule &rule, SpectrumModel model)
{
    const CoefficientFactory factory(params, model);
    std::vector<SpeckleCoefficients> nodes;
    nodes.reserve(rule.nodes.size());
    for (double u : rule.nodes) nodes.push_back(factory.at(u));

    // K(s) = log1p(sum w (M_spk - 1)) keeps relative accuracy near the origin.
    auto cgf = [&](double s) {
        double acc = 0.0;
        for (std::size_t l = 0; l < nodes.size(); ++l)
            acc += rule.weights[l] * std::expm1(log_mgf_eval(nodes[l], s).real());
        return std::log1p(acc);
    };
    constexpr double h = 1e-4;
    const double kp = cgf(h), km = cgf(-h), kp2 = cgf(0.5 * h), km2 = cgf(-0.5 * h);
    const double d1 = (kp - km) / (2.0 * h);
    const double d1_half = (kp2 - km2) / h;
    const double d2 = (kp + km) / (h * h);
    const double d2_half = (kp2 + km2) / (0.25 * h * h);
    MomentEstimate out;
    out.mean = -(4.0 * d1_half - d1) / 3.0;
    out.variance = (4.0 * d2_half - d2) / 3.0;
    return out;
}

std::vector<double> steady_target_weights(const EigenSystem &clutter, const Matrix &cs)
{
    const Eigen::Index n = clutter.pulses();
    if (cs.rows() != n || cs.cols() != n) fail(ErrorCode::DimensionMismatch, "Cs size differs from clutter system");
    const double m = static_cast<double>(n);
    std::vector<double> b(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vector r = clutter.rotation.row(i).transpose();
        b[static_cast<std::size_t>(i)] = std::max(0.0, r.dot(cs * r) / m);
    }
    return b;
}

std::vector<double> steady_target_weights(const EigenSystem &clutter, const EigenSystem &target)
{
    const Eigen::Index n = clutter.pulses();
    if (target.pulses() != n) fail(ErrorCode::DimensionMismatch, "eigen-system sizes differ");
    const double m = static_cast<double>(n);
    const Matrix overlap = clutter.rotation * target.rotation.transpose();
    std::vector<double> b(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) acc += overlap(i, j) * overlap(i, j) * target.eigenvalues(j);
        b[static_cast<std::size_t>(i)] = acc / m;
    }
    return b;
}

cplx mgf_kappa_inf(const ScenarioParams &params, double u, cplx s)
{
    ScenarioParams steady = params;
    steady.kappa = Kappa::infinite();
    return mgf_eval(CoefficientFactory(steady, SpectrumModel::Effective).at(u), s);
}

cplx mgf_fully_correlated(const ScenarioParams &params, double u, cplx s)
{
    params.validate();
    if (!params.spec_s.is_fully_correlated())
        fail(ErrorCode::InvalidParameter, "closed form requires a fully correlated target");
    const EigenSystem clutter = eigen_decompose(params.spec_c);
    const std::vector<double> aq = clutter_zeros(clutter.eigenvalues, params.q, u);
    const std::vector<double> b = steady_target_weights(clutter, build_matrix(params.spec_s));
    // Tr{Cs Q^-1} in normalized units: sum_m b_m s / (1 + aq_m s).
    cplx trace = 0.0;
    for (std::size_t i = 0; i < aq.size(); ++i) trace += b[i] * s / checked_factor(aq[i], s);
    cplx log_value = log_det_factor(aq, s);
    if (params.kappa.is_infinite()) {
        log_value -= params.S * trace;
    } else {
        const double kappa = params.kappa.as_double();
        log_value -= kappa * std::log(1.0 + params.S / kappa * trace);
    }
    return std::exp(log_value);
}

cplx mgf_first_principles_steady(const ScenarioParams &params, double u, cplx s, TargetRotation rotation)
{
    params.validate();
    const EigenSystem clutter = eigen_decompose(params.spec_c);
    const std::vector<double> aq = clutter_zeros(clutter.eigenvalues, params.q, u);
    const CMatrix a = resolvent(clutter, aq, s);
    const CMatrix l = target_loading(params, clutter, rotation).cast<cplx>();
    const CMatrix coupled = l * a * l.transpose();

    cplx log_value = log_det_factor(aq, s) - params.S * coupled.trace();
    for (Eigen::Index i = 0; i < coupled.rows(); ++i)
        for (Eigen::Index j = 0; j < coupled.cols(); ++j)
            if (i != j) log_value += log_cosh(params.S * coupled(i, j));
    return std::exp(log_value);
}

cplx mgf_first_principles_steady_enumerated(const ScenarioParams &params, double u, cplx s,
                                            TargetRotation rotation)
{
    params.validate();
    if (params.M > 20) fail(ErrorCode::InvalidParameter, "sign enumeration limited to M <= 20");
    const EigenSystem clutter = eigen_decompose(params.spec_c);
    const std::vector<double> aq = clutter_zeros(clutter.eigenvalues, params.q, u);
    const CMatrix a = resolvent(clutter, aq, s);
    const CMatrix l = target_loading(params, clutter, rotation).cast<cplx>();
    const CMatrix coupled = l * a * l.transpose();

    const int n = params.M;
    // B and -B give the same quadratic form; fix the last sign to +1.
    const unsigned long patterns = 1ul << (n - 1);
    std::vector<cplx> exponents(patterns);
    std::vector<double> sign(static_cast<std::size_t>(n));
    for (unsigned long p = 0; p < patterns; ++p) {
        for (int i = 0; i < n; ++i) sign[static_cast<std::size_t>(i)] = (i < n - 1 && ((p >> i) & 1ul)) ? -1.0 : 1.0;
        cplx form = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                form += sign[static_cast<std::size_t>(i)] * sign[static_cast<std::size_t>(j)] * coupled(i, j);
        exponents[p] = -0.5 * params.S * form;
    }
    // Log-sum-exp over patterns.
    double shift = -std::numeric_limits<double>::infinity();
    for (const cplx &e : exponents) shift = std::max(shift, e.real());
    cplx acc = 0.0;
    for (const cplx &e : exponents) acc += std::exp(e - shift);
    const cplx log_channel = shift + std::log(acc / static_cast<double>(patterns));
    return std::exp(log_det_factor(aq, s) + 2.0 * log_channel);
}

cplx effsw0_mgf(double S, int M, cplx s)
{
    const double m = static_cast<double>(M);
    const cplx f = checked_factor(1.0, s);
    return std::exp(-std::log(f) - (1.0 - 1.0 / m) * S * s - (S / m) * s / f);
}

cplx worst_case_mgf(double S, int M, cplx s)
{
    const double m = static_cast<double>(M);
    const cplx f = checked_factor(1.0, s);
    const cplx arg = (S / (m * m)) * s * s / f;
    return std::exp(-std::log(f) - (1.0 - 1.0 / m) * S * s - (S / m) * s / f + m * (m - 1.0) * log_cosh(arg));
}

double effsw0_survival(double v, double S, int M)
{
    const double m = static_cast<double>(M);
    const double x = v - (1.0 - 1.0 / m) * S;
    if (x <= 0.0) return 1.0;
    const double lambda = S / m;
    if (lambda == 0.0) return std::exp(-x);
    // 2 |n + a|^2 is noncentral chi-square with 2 degrees of freedom.
    const boost::math::non_central_chi_squared_distribution<double> dist(2.0, 2.0 * lambda);
    return boost::math::cdf(boost::math::complement(dist, 2.0 * x));
}

} // namespace gcl
