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

#include "gammaclutter/saddlepoint.hpp"

#include "gammaclutter/error.hpp"
#include "gammaclutter/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace gcl {

namespace {

constexpr int kSaddleIterations = 200;
constexpr int kNewtonIterations = 50;

struct TauValue {
    cplx tau;
    cplx dtau;
};

// Exact tau-phase from the merged terms.
TauValue eval_tau(const SaddleState &st, cplx z)
{
    const double c0 = st.c.front();
    const cplx q0 = 1.0 - c0 * z;
    cplx tau = z + std::log(q0);
    cplx dtau = 1.0 - c0 / q0;
    const std::size_t n = st.term_c.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double c = st.term_c[j];
        const cplx inv = 1.0 / (1.0 - c * z);
        const double w = st.term_w[j];
        if (w != 0.0) {
            tau -= w * std::log(inv);
            dtau -= w * c * inv;
        }
        const double bd = st.term_beta[j] * st.term_d[j];
        if (bd != 0.0) {
            tau -= bd * z * inv;
            dtau -= bd * inv * inv;
        }
    }
    return {tau, dtau};
}

// Newton on tau(z) = target keeping Im z > 0. Returns false on failure.
template <class Eval>
bool newton_tau(const Eval &eval, double target, cplx &z)
{
    const double tol = 1e-12 * std::max(1.0, target);
    for (int it = 0; it < kNewtonIterations; ++it) {
        const TauValue tv = eval(z);
        const cplx g = tv.tau - target;
        if (std::abs(g) <= tol) return true;
        if (tv.dtau == 0.0) return false;
        cplx dz = -g / tv.dtau;
        const double cap = std::max(std::abs(z), 1e-3);
        if (std::abs(dz) > cap) dz *= cap / std::abs(dz);
        int halvings = 0;
        while (!((z + dz).imag() > 0.0)) {
            dz *= 0.5;
            if (++halvings > 60) return false;
        }
        const cplx next = z + dz;
        if (std::abs(dz) <= 1e-15 * std::abs(next)) {
            z = next;
            return std::abs(eval(z).tau - target) <= 1e3 * tol;
        }
        z = next;
    }
    return false;
}

// Follows the steepest-descent branch from (t_from, z_from) to t_to, shrinking
// the continuation step whenever Newton fails or the root strays from the
// predictor (a sign of a branch jump).
template <class Eval>
cplx continue_root(const Eval &eval, double r2, double t_from, cplx z_from, double t_to)
{
    double t = t_from;
    cplx z = z_from;
    double step = t_to - t_from;
    const double min_step = 1e-13 * (1.0 + t_to);
    while (t < t_to) {
        const double nt = std::min(t_to, t + step);
        cplx pred;
        if (t == 0.0) {
            pred = cplx(0.0, std::sqrt(2.0 * nt / r2));
        } else {
            const cplx d = eval(z).dtau;
            pred = z + (nt - t) / d;
            if (!(pred.imag() > 0.0)) pred = cplx(pred.real(), 0.5 * z.imag());
        }
        cplx root = pred;
        bool ok = newton_tau(eval, nt, root);
        if (ok && t > 0.0) {
            const double expected = std::abs(pred - z);
            ok = std::abs(root - pred) <= 0.5 * expected + 1e-10 * std::abs(root);
        }
        if (ok) {
            t = nt;
            z = root;
            step = std::min(2.0 * step, t_to - t);
            if (step <= 0.0) break;
        } else {
            step *= 0.25;
            if (step < min_step) fail(ErrorCode::NoConvergence, "tau inversion failed near tau = " + std::to_string(nt));
        }
    }
    return z;
}

// Gamma(3/2) * sum_k w_k Im z(tau_k) / sqrt(tau_k) over the alpha = 1/2 Laguerre rule,
// i.e. the integral of exp(-tau) Im z(tau) over (0, inf).
template <class Eval>
double sdp_integral(const Eval &eval, double r2, const SdpOptions &opts, double *z_extent = nullptr)
{
    const auto rule = generalized_laguerre(0.5, opts.nodes);
    double sum = 0.0;
    double t_prev = 0.0;
    cplx z_prev = 0.0;
    double extent = 0.0;
    for (std::size_t k = 0; k < rule->nodes.size(); ++k) {
        const double t = rule->nodes[k];
        const double w = rule->weights[k];
        if (w < opts.weight_floor && t > 1.0) break;
        const cplx z = continue_root(eval, r2, t_prev, z_prev, t);
        sum += w * z.imag() / std::sqrt(t);
        extent = std::max(extent, std::abs(z));
        t_prev = t;
        z_prev = z;
    }
    if (z_extent) *z_extent = extent;
    return 0.5 * std::sqrt(std::numbers::pi) * sum;
}

double finish_survival(const SaddleState &st, double integral)
{
    const double value = std::exp(st.phase0) * integral / (std::numbers::pi * st.v);
    const double out = st.side == Tail::Right ? value : 1.0 - value;
    return std::clamp(out, 0.0, 1.0);
}

} // namespace

double SaddleState::r(int n) const
{
    double acc = std::pow(c.front(), n);
    for (std::size_t j = 0; j < term_c.size(); ++j) {
        acc += term_w[j] * std::pow(term_c[j], n);
        acc += n * term_beta[j] * term_d[j] * std::pow(term_c[j], n - 1);
    }
    return acc;
}

SpeckleDistribution::SpeckleDistribution(SpeckleCoefficients coeffs) : coeffs_(std::move(coeffs))
{
    struct Raw {
        double alpha, weight, beta;
    };
    std::vector<Raw> raw;
    const std::size_t n = coeffs_.aq.size();
    if (coeffs_.kappa.is_infinite()) {
        if (coeffs_.b.size() != n) fail(ErrorCode::InvalidParameter, "steady-target weights missing");
        for (std::size_t i = 0; i < n; ++i) raw.push_back({coeffs_.aq[i], 1.0, coeffs_.S * coeffs_.b[i]});
    } else {
        if (coeffs_.a.size() != n) fail(ErrorCode::InvalidParameter, "coefficient vectors differ in length");
        const double kappa = coeffs_.kappa.as_double();
        for (std::size_t i = 0; i < n; ++i) {
            raw.push_back({coeffs_.a[i], kappa, 0.0});
            if (kappa > 1.0) raw.push_back({coeffs_.aq[i], -(kappa - 1.0), 0.0});
        }
    }
    for (const Raw &r : raw)
        if (!(r.alpha >= 0.0) || std::isinf(r.alpha)) fail(ErrorCode::InvalidParameter, "speckle coefficients must be finite and >= 0");
    std::sort(raw.begin(), raw.end(), [](const Raw &x, const Raw &y) { return x.alpha < y.alpha; });
    for (const Raw &r : raw) {
        if (!alpha_.empty() && alpha_.back() == r.alpha) {
            weight_.back() += r.weight;
            beta_.back() += r.beta;
        } else {
            alpha_.push_back(r.alpha);
            weight_.push_back(r.weight);
            beta_.push_back(r.beta);
        }
    }
    // Drop inert terms: zero net weight and no linear part, or zero pole without linear part.
    std::size_t k = 0;
    for (std::size_t j = 0; j < alpha_.size(); ++j) {
        const bool log_inert = weight_[j] == 0.0 || alpha_[j] == 0.0;
        if (log_inert && beta_[j] == 0.0) continue;
        alpha_[k] = alpha_[j];
        weight_[k] = alpha_[j] == 0.0 ? 0.0 : weight_[j];
        beta_[k] = beta_[j];
        ++k;
    }
    alpha_.resize(k);
    weight_.resize(k);
    beta_.resize(k);
    if (alpha_.empty()) fail(ErrorCode::InvalidParameter, "degenerate speckle law (no noise or clutter power)");
    alpha_max_ = alpha_.back();
    if (!(alpha_max_ > 0.0)) fail(ErrorCode::InvalidParameter, "speckle law has no random component");
    mean_ = 0.0;
    for (std::size_t j = 0; j < alpha_.size(); ++j) mean_ += weight_[j] * alpha_[j] + beta_[j];
}

double SpeckleDistribution::cgf(double s) const
{
    double acc = 0.0;
    for (std::size_t j = 0; j < alpha_.size(); ++j) {
        const double f = 1.0 + alpha_[j] * s;
        if (!(f > 0.0)) fail(ErrorCode::PoleHit, "CGF evaluated beyond its pole");
        if (weight_[j] != 0.0) acc -= weight_[j] * std::log1p(alpha_[j] * s);
        acc -= beta_[j] * s / f;
    }
    return acc;
}

double SpeckleDistribution::cgf_d1(double s) const
{
    double acc = 0.0;
    for (std::size_t j = 0; j < alpha_.size(); ++j) {
        const double inv = 1.0 / (1.0 + alpha_[j] * s);
        acc -= weight_[j] * alpha_[j] * inv + beta_[j] * inv * inv;
    }
    return acc;
}

double SpeckleDistribution::cgf_d2(double s) const
{
    double acc = 0.0;
    for (std::size_t j = 0; j < alpha_.size(); ++j) {
        const double x = alpha_[j] / (1.0 + alpha_[j] * s);
        acc += weight_[j] * x * x + 2.0 * beta_[j] * x / ((1.0 + alpha_[j] * s) * (1.0 + alpha_[j] * s));
    }
    return acc;
}

double SpeckleDistribution::phase(double s, double v) const
{
    if (s == 0.0) fail(ErrorCode::PoleHit, "phase is singular at s = 0");
    return cgf(s) - std::log(std::abs(s)) + s * v;
}

SaddleState SpeckleDistribution::saddle(double v) const
{
    if (!(v > 0.0) || std::isinf(v)) fail(ErrorCode::DegenerateV, "power level must be positive and finite");
    SaddleState st;
    st.v = v;
    st.side = v >= mean_ ? Tail::Right : Tail::Left;

    auto f = [&](double s) { return cgf_d1(s) - 1.0 / s + v; };
    auto fp = [&](double s) { return cgf_d2(s) + 1.0 / (s * s); };

    double lo, hi, s;
    if (st.side == Tail::Right) {
        lo = -1.0 / alpha_max_;
        hi = 0.0;
        // Near the dominant pole: w alpha / (1 + alpha s) ~ v.
        const double guess = (weight_.back() * alpha_max_ / v + (beta_.back() > 0.0 ? std::sqrt(beta_.back() / v) : 0.0) - 1.0) / alpha_max_;
        s = (guess > lo && guess < hi) ? guess : 0.5 * lo;
    } else {
        lo = 0.0;
        hi = 1.0 / v;
        int grow = 0;
        while (f(hi) <= 0.0) {
            lo = hi;
            hi *= 2.0;
            if (++grow > 200) fail(ErrorCode::NoConvergence, "left-tail saddle bracket not found");
        }
        s = 0.5 * (lo + hi);
    }

    const double tol = 1e-10 * std::max(1.0, v);
    bool converged = false;
    for (int it = 0; it < kSaddleIterations; ++it) {
        const double fv = f(s);
        if (std::abs(fv) <= 1e-3 * tol) {
            converged = true;
            break;
        }
        if (fv < 0.0)
            lo = s;
        else
            hi = s;
        double next = s - fv / fp(s);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == s || std::abs(next - s) <= 2e-16 * std::abs(s)) {
            converged = std::abs(f(next)) <= tol;
            s = next;
            break;
        }
        s = next;
    }
    if (!converged && !(std::abs(f(s)) <= tol))
        fail(ErrorCode::NoConvergence, "saddle point not found at v = " + std::to_string(v));

    st.s0 = s;
    st.phase0 = phase(s, v);
    const double c0 = 1.0 / (s * v);
    const std::size_t n = alpha_.size();
    st.term_c.resize(n);
    st.term_d.resize(n);
    st.term_w = weight_;
    st.term_beta = beta_;
    for (std::size_t j = 0; j < n; ++j) {
        const double den = 1.0 + alpha_[j] * s;
        st.term_c[j] = alpha_[j] / (v * den);
        st.term_d[j] = 1.0 / (v * den * den);
    }
    const std::size_t m = coeffs_.aq.size();
    st.c.assign(m + 1, c0);
    st.cq.assign(m + 1, c0);
    for (std::size_t i = 0; i < m; ++i) {
        const double a = coeffs_.kappa.is_infinite() ? coeffs_.aq[i] : coeffs_.a[i];
        st.c[i + 1] = a / (v * (1.0 + a * s));
        st.cq[i + 1] = coeffs_.aq[i] / (v * (1.0 + coeffs_.aq[i] * s));
    }
    st.r2 = fp(s) / (v * v);
    return st;
}

double SpeckleDistribution::survival_sp(double v) const
{
    if (v <= 0.0) return 1.0;
    const SaddleState st = saddle(v);
    const double value = std::exp(st.phase0) / (v * std::sqrt(2.0 * std::numbers::pi * st.r2));
    return std::clamp(st.side == Tail::Right ? value : 1.0 - value, 0.0, 1.0);
}

double SpeckleDistribution::survival_sdp(double v, const SdpOptions &opts) const
{
    if (v <= 0.0) return 1.0;
    const SaddleState st = saddle(v);
    const auto eval = [&st](cplx z) { return eval_tau(st, z); };
    return finish_survival(st, sdp_integral(eval, st.r2, opts));
}

double SpeckleDistribution::survival_pade(double v, PadeOrder order, const SdpOptions &opts, bool *used_pade) const
{
    if (used_pade) *used_pade = false;
    if (v <= 0.0) return 1.0;
    const SaddleState st = saddle(v);
    const auto exact = [&st](cplx z) { return eval_tau(st, z); };
    if (coeffs_.kappa.is_infinite()) return finish_survival(st, sdp_integral(exact, st.r2, opts));

    const PadePhase pade = build_pade(st, coeffs_, order);
    const auto approx = [&pade](cplx z) { return TauValue{pade.tau(z), pade.dtau(z)}; };
    double extent = 0.0;
    double integral = 0.0;
    bool ok = true;
    try {
        integral = sdp_integral(approx, st.r2, opts, &extent);
    } catch (const Error &) {
        ok = false;
    }
    if (ok && pade.den.size() > 1) {
        // Reject approximants with a pole inside the integration range.
        const int deg = static_cast<int>(pade.den.size()) - 1;
        int top = deg;
        while (top > 0 && pade.den[static_cast<std::size_t>(top)] == 0.0) --top;
        if (top > 0) {
            // den(z) = 1 + d1 z + ... + dk z^k; roots of the reversed polynomial give 1/z.
            Eigen::MatrixXd rev = Eigen::MatrixXd::Zero(top, top);
            for (int i = 0; i < top; ++i) rev(0, i) = -pade.den[static_cast<std::size_t>(i + 1)];
            for (int i = 1; i < top; ++i) rev(i, i - 1) = 1.0;
            const Eigen::VectorXcd inv_roots = rev.eigenvalues();
            for (Eigen::Index i = 0; i < inv_roots.size(); ++i) {
                const double mag = std::abs(inv_roots(i));
                if (mag > 0.0 && 1.0 / mag < 1.5 * extent) ok = false;
            }
        }
    }
    if (!ok) return finish_survival(st, sdp_integral(exact, st.r2, opts));
    if (used_pade) *used_pade = true;
    return finish_survival(st, integral);
}

cplx PadePhase::tau(cplx z) const
{
    cplx t = z + std::log(1.0 - c0 * z) + kappa * std::log(1.0 - c_top * z);
    if (kappa > 1.0) t -= (kappa - 1.0) * std::log(1.0 - cq_top * z);
    if (rest > 0) {
        t += kappa * rest * std::log(1.0 - cbar * z);
        if (kappa > 1.0) t -= (kappa - 1.0) * rest * std::log(1.0 - cqbar * z);
    }
    cplx p = 0.0, q = 0.0;
    for (std::size_t i = num.size(); i-- > 0;) p = p * z + num[i];
    for (std::size_t i = den.size(); i-- > 0;) q = q * z + den[i];
    return t - p / q;
}

cplx PadePhase::dtau(cplx z) const
{
    cplx d = 1.0 - c0 / (1.0 - c0 * z) - kappa * c_top / (1.0 - c_top * z);
    if (kappa > 1.0) d += (kappa - 1.0) * cq_top / (1.0 - cq_top * z);
    if (rest > 0) {
        d -= kappa * rest * cbar / (1.0 - cbar * z);
        if (kappa > 1.0) d += (kappa - 1.0) * rest * cqbar / (1.0 - cqbar * z);
    }
    cplx p = 0.0, q = 0.0, dp = 0.0, dq = 0.0;
    for (std::size_t i = num.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + num[i];
    }
    for (std::size_t i = den.size(); i-- > 0;) {
        dq = dq * z + q;
        q = q * z + den[i];
    }
    return d - (dp * q - p * dq) / (q * q);
}

PadePhase build_pade(const SaddleState &st, const SpeckleCoefficients &coeffs, PadeOrder order)
{
    if (coeffs.kappa.is_infinite()) fail(ErrorCode::InvalidParameter, "Pade phase needs a finite fluctuation class");
    const std::size_t m = coeffs.a.size();
    PadePhase p;
    p.kappa = coeffs.kappa.as_double();
    p.c0 = st.c.front();
    p.c_top = st.c[m];
    p.cq_top = st.cq[m];
    p.rest = static_cast<int>(m) - 1;
    if (p.rest > 0) {
        for (std::size_t i = 1; i < m; ++i) {
            p.cbar += st.c[i];
            p.cqbar += st.cq[i];
        }
        p.cbar /= p.rest;
        p.cqbar /= p.rest;
    }
    double scale = 0.0;
    for (int n = 2; n <= 6; ++n) {
        double acc = 0.0;
        for (std::size_t i = 1; i < m; ++i) {
            acc += p.kappa * (std::pow(st.c[i], n) - std::pow(p.cbar, n));
            if (p.kappa > 1.0) acc -= (p.kappa - 1.0) * (std::pow(st.cq[i], n) - std::pow(p.cqbar, n));
        }
        p.rbar[static_cast<std::size_t>(n)] = acc;
        scale = std::max(scale, std::abs(acc) * std::pow(std::max(std::abs(p.cbar), std::abs(p.cqbar)) + 1e-300, -n));
    }

    const int l = static_cast<int>(order);
    // Series e_k of the residual sum_{n>=2} rbar_n z^n / n, k = 0..2l.
    std::vector<double> e(static_cast<std::size_t>(2 * l + 1), 0.0);
    for (int k = 2; k <= 2 * l; ++k) e[static_cast<std::size_t>(k)] = p.rbar[static_cast<std::size_t>(k)] / k;
    p.num = {0.0};
    p.den = {1.0};
    if (scale < 1e-13 * static_cast<double>(m)) return p; // residual vanishes (e.g. DMG spectra)

    for (int order_try = l; order_try >= 1; --order_try) {
        Eigen::MatrixXd a(order_try, order_try);
        Eigen::VectorXd rhs(order_try);
        for (int r = 0; r < order_try; ++r) {
            const int k = order_try + 1 + r;
            for (int j = 1; j <= order_try; ++j) a(r, j - 1) = (k - j >= 0) ? e[static_cast<std::size_t>(k - j)] : 0.0;
            rhs(r) = -e[static_cast<std::size_t>(k)];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (lu.rank() < order_try) continue;
        const Eigen::VectorXd b = lu.solve(rhs);
        if (!b.allFinite()) continue;
        p.den.assign(static_cast<std::size_t>(order_try + 1), 1.0);
        for (int j = 1; j <= order_try; ++j) p.den[static_cast<std::size_t>(j)] = b(j - 1);
        p.num.assign(static_cast<std::size_t>(order_try + 1), 0.0);
        for (int k = 0; k <= order_try; ++k) {
            double acc = 0.0;
            for (int j = 0; j <= k; ++j) acc += p.den[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(k - j)];
            p.num[static_cast<std::size_t>(k)] = acc;
        }
        return p;
    }
    // No usable approximant: truncated series as the numerator.
    p.num.assign(e.begin(), e.end());
    p.den = {1.0};
    return p;
}

double phase(double s, double v, const SpeckleCoefficients &coeffs)
{
    return SpeckleDistribution(coeffs).phase(s, v);
}

SaddleState solve_saddle(double v, const SpeckleCoefficients &coeffs) { return SpeckleDistribution(coeffs).saddle(v); }

cplx tau_phase(cplx z, const SaddleState &state) { return eval_tau(state, z).tau; }

cplx tau_phase_derivative(cplx z, const SaddleState &state) { return eval_tau(state, z).dtau; }

cplx invert_tau(double tau, const SaddleState &state, std::optional<cplx> warm)
{
    if (!(tau >= 0.0)) fail(ErrorCode::InvalidParameter, "tau must be non-negative");
    if (tau == 0.0) return 0.0;
    const auto eval = [&state](cplx z) { return eval_tau(state, z); };
    if (warm && warm->imag() > 0.0) {
        cplx z = *warm;
        if (newton_tau(eval, tau, z)) return z;
    }
    return continue_root(eval, state.r2, 0.0, 0.0, tau);
}

double survival_sdp(double v, const SpeckleCoefficients &coeffs, const SdpOptions &opts)
{
    return SpeckleDistribution(coeffs).survival_sdp(v, opts);
}

double survival_sp(double v, const SpeckleCoefficients &coeffs) { return SpeckleDistribution(coeffs).survival_sp(v); }

double pade_survival(double v, const SpeckleCoefficients &coeffs, PadeOrder order)
{
    return SpeckleDistribution(coeffs).survival_pade(v, order);
}

} // namespace gcl
