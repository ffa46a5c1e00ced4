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

#include "gammaclutter/texture.hpp"

#include "gammaclutter/error.hpp"

// Boost 1.74 pchip calls unqualified isnan; <math.h> brings it into scope.
#include <math.h>
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

namespace gcl {

namespace {

struct MethodName {
    Method method;
    const char *name;
};

constexpr MethodName kMethodNames[] = {
    {Method::EffSdp, "eff-sdp"},   {Method::EffSp, "eff-sp"},   {Method::DmgSdp, "dmg-sdp"},
    {Method::DmgSp, "dmg-sp"},     {Method::DiagSdp, "diag-sdp"}, {Method::DiagSp, "diag-sp"},
    {Method::EffPade, "eff-pade"},
};

bool is_sp(Method m) { return m == Method::EffSp || m == Method::DmgSp || m == Method::DiagSp; }

// Runs body(i) for i in [0, n) under OpenMP and rethrows the first exception.
template <class Body>
void parallel_for(std::size_t n, const Body &body)
{
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(gcl_parallel_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

// Minimizer of a convex-in-practice function on (lo, hi) by golden section.
template <class F>
double golden_min(const F &f, double lo, double hi)
{
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(std::abs(a), std::abs(b)); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double max_pole(const SpeckleCoefficients &c)
{
    double top = 0.0;
    for (double x : c.aq) top = std::max(top, x);
    if (!c.kappa.is_infinite())
        for (double x : c.a) top = std::max(top, x);
    return top;
}

// Contour abscissa through the minimum of the real Helstrom phase.
double contour_abscissa(const std::function<cplx(cplx)> &mgf, double v, double pole_scale)
{
    const double lo = -1.0 / pole_scale;
    const auto phase = [&](double s) {
        const double m = mgf(cplx(s, 0.0)).real();
        if (!(m > 0.0) || std::isinf(m)) return std::numeric_limits<double>::infinity();
        return std::log(m) - std::log(-s) + s * v;
    };
    const double margin = 1e-9 * std::abs(lo);
    return golden_min(phase, lo + margin, -margin);
}

} // namespace

std::string to_string(Method method)
{
    for (const auto &m : kMethodNames)
        if (m.method == method) return m.name;
    return "unknown";
}

Method parse_method(const std::string &name)
{
    for (const auto &m : kMethodNames)
        if (name == m.name) return m.method;
    if (name == "sdp") return Method::EffSdp;
    if (name == "sp") return Method::EffSp;
    fail(ErrorCode::InvalidParameter, "unknown method '" + name + "'");
}

SpectrumModel spectrum_model(Method method)
{
    switch (method) {
    case Method::DmgSdp:
    case Method::DmgSp: return SpectrumModel::Dmg;
    case Method::DiagSdp:
    case Method::DiagSp: return SpectrumModel::Diagonal;
    default: return SpectrumModel::Effective;
    }
}

std::vector<Method> all_methods()
{
    return {Method::EffSdp, Method::EffSp, Method::DmgSdp, Method::DmgSp, Method::DiagSdp, Method::DiagSp};
}

CompoundModel::CompoundModel(const ScenarioParams &params, Method method, const CompoundOptions &opts)
    : params_(params), method_(method), opts_(opts)
{
    params_.validate();
    build(opts_.texture_order);
    // The basic SP survival jumps where v crosses the node mean, so Gaussian
    // quadrature in u cannot reach the refinement tolerance; SP keeps the base order.
    if (!opts_.refine_order || is_sp(method_) || std::isinf(params_.nu) || params_.q == 0.0) return;

    // Order check on probes around and beyond the mean.
    const double m = mean();
    const std::vector<double> probes = {0.5 * m, m, 2.0 * m, 4.0 * m};
    std::vector<double> current = survival_grid(probes);
    while (rule_.order < kMaxTextureOrder) {
        CompoundModel finer(*this);
        finer.build(std::min(2 * rule_.order, kMaxTextureOrder));
        const std::vector<double> next = finer.survival_grid(probes);
        double worst = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i)
            if (std::max(current[i], next[i]) >= 1e-6) worst = std::max(worst, std::abs(next[i] - current[i]));
        *this = std::move(finer);
        if (worst <= opts_.refine_tolerance) break;
        current = next;
    }
}

void CompoundModel::build(int order)
{
    rule_ = adaptive_texture_rule(params_.nu, order);
    const CoefficientFactory factory(params_, spectrum_model(method_));
    std::vector<SpeckleCoefficients> coeffs(rule_.nodes.size());
    parallel_for(coeffs.size(), [&](std::size_t l) { coeffs[l] = factory.at(rule_.nodes[l]); });
    nodes_.clear();
    nodes_.reserve(coeffs.size());
    for (auto &c : coeffs) nodes_.emplace_back(std::move(c));
}

double CompoundModel::node_survival(std::size_t node, double v) const
{
    const SpeckleDistribution &d = nodes_.at(node);
    try {
        if (is_sp(method_)) return d.survival_sp(v);
        if (method_ == Method::EffPade) return d.survival_pade(v, opts_.pade, opts_.sdp);
        return d.survival_sdp(v, opts_.sdp);
    } catch (const Error &e) {
        fail(e.code(), std::string(e.what()) + " [v = " + std::to_string(v) + ", u = " + std::to_string(rule_.nodes[node]) + "]");
    }
}

double CompoundModel::survival(double v) const
{
    if (v <= 0.0) return 1.0;
    double acc = 0.0;
    for (std::size_t l = 0; l < nodes_.size(); ++l) acc += rule_.weights[l] * node_survival(l, v);
    return std::clamp(acc, 0.0, 1.0);
}

std::vector<double> CompoundModel::survival_grid_serial(const std::vector<double> &v) const
{
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = survival(v[i]);
    return out;
}

std::vector<double> CompoundModel::survival_grid(const std::vector<double> &v) const
{
    const std::size_t nn = nodes_.size();
    std::vector<double> lattice(v.size() * nn, 0.0);
    parallel_for(lattice.size(), [&](std::size_t k) {
        const std::size_t i = k / nn, l = k % nn;
        lattice[k] = v[i] <= 0.0 ? 1.0 : node_survival(l, v[i]);
    });
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] <= 0.0) {
            out[i] = 1.0;
            continue;
        }
        double acc = 0.0;
        for (std::size_t l = 0; l < nn; ++l) acc += rule_.weights[l] * lattice[i * nn + l];
        out[i] = std::clamp(acc, 0.0, 1.0);
    }
    return out;
}

double compound_survival(double v, const ScenarioParams &params, Method method, const TextureRule &rule)
{
    if (v <= 0.0) return 1.0;
    const CoefficientFactory factory(params, spectrum_model(method));
    double acc = 0.0;
    for (std::size_t l = 0; l < rule.nodes.size(); ++l) {
        const SpeckleDistribution d(factory.at(rule.nodes[l]));
        double f;
        if (is_sp(method))
            f = d.survival_sp(v);
        else if (method == Method::EffPade)
            f = d.survival_pade(v);
        else
            f = d.survival_sdp(v);
        acc += rule.weights[l] * f;
    }
    return std::clamp(acc, 0.0, 1.0);
}

double compound_survival(double v, const ScenarioParams &params, Method method)
{
    return CompoundModel(params, method).survival(v);
}

SurvivalCurve::SurvivalCurve(std::vector<double> v, std::vector<double> sf) : v_(std::move(v)), sf_(std::move(sf))
{
    if (v_.size() != sf_.size() || v_.size() < 4) fail(ErrorCode::InvalidParameter, "survival table needs >= 4 points");
    for (std::size_t i = 1; i < v_.size(); ++i) {
        if (!(v_[i] > v_[i - 1])) fail(ErrorCode::InvalidParameter, "survival abscissae must increase");
        if (sf_[i] > sf_[i - 1] + 1e-9) fail(ErrorCode::NonMonotoneSF, "tabulated survival increases");
        sf_[i] = std::min(sf_[i], sf_[i - 1]);
    }
    auto x = v_;
    auto y = sf_;
    boost::math::interpolators::pchip<std::vector<double>> spline(std::move(x), std::move(y));
    interp_ = std::make_shared<const std::function<double(double)>>(std::move(spline));
}

SurvivalCurve SurvivalCurve::tabulate(const std::function<double(double)> &sf, double v_max, int points)
{
    std::vector<double> v(static_cast<std::size_t>(points)), f(v.size());
    for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = v_max * i / (points - 1);
    parallel_for(v.size(), [&](std::size_t i) { f[i] = v[i] <= 0.0 ? 1.0 : sf(v[i]); });
    return SurvivalCurve(std::move(v), std::move(f));
}

SurvivalCurve SurvivalCurve::tabulate(const CompoundModel &model, double v_max, int points)
{
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = v_max * i / (points - 1);
    std::vector<double> f = model.survival_grid(v);
    return SurvivalCurve(std::move(v), std::move(f));
}

double SurvivalCurve::operator()(double v) const
{
    if (v <= v_.front()) return sf_.front();
    if (v >= v_.back()) return 0.0;
    return std::clamp((*interp_)(v), 0.0, 1.0);
}

double survival_horizon(const std::function<double(double)> &sf, double mean, double floor)
{
    double v = std::max(mean, 1e-12);
    while (sf(v) > floor) {
        v *= 1.5;
        if (v > 1e6 * std::max(mean, 1.0)) fail(ErrorCode::BracketFail, "survival does not reach the floor");
    }
    return v;
}

double bromwich_survival(const std::function<cplx(cplx)> &mgf, double v, double c, double pole_scale,
                         const BromwichOptions &opts)
{
    if (v <= 0.0) return 1.0;
    const double dist = std::min(-c, 1.0 / pole_scale + c);
    if (!(c < 0.0) || !(dist >= 1e-6)) fail(ErrorCode::ContourTooClose, "contour within 1e-6 of a singularity");

    // Step from the aliasing period T = 2 pi / h, rounded so that a half period
    // pi / v of exp(i y v) holds a whole number of nodes.
    const double period = 1.2 * opts.decay / dist;
    const int per_block = std::max(4, static_cast<int>(std::ceil(period / (2.0 * v))));
    const double h = std::numbers::pi / (v * per_block);

    const auto integrand = [&](double y) {
        const cplx s(c, y);
        return (mgf(s) * std::exp(s * v) / (-s)).real();
    };

    constexpr int kEuler = 24;
    std::vector<double> partial;
    double sum = 0.5 * integrand(0.0);
    double previous = std::numeric_limits<double>::quiet_NaN();
    double estimate = sum;
    for (int block = 0; block < opts.max_blocks; ++block) {
        double block_sum = 0.0;
        for (int j = (block == 0 ? 1 : 0); j < per_block; ++j) block_sum += integrand((block * per_block + j) * h);
        sum += block_sum;
        partial.push_back(sum);
        if (std::abs(block_sum) <= 1e-18 * std::max(1.0, std::abs(sum)) && block > 2) {
            estimate = sum;
            break;
        }
        if (partial.size() >= kEuler) {
            // Binomial averaging of the last partial sums (Euler transform of the
            // alternating block tail).
            std::vector<double> t(partial.end() - kEuler, partial.end());
            for (int level = 1; level < kEuler; ++level)
                for (int i = 0; i + level < kEuler; ++i) t[static_cast<std::size_t>(i)] = 0.5 * (t[static_cast<std::size_t>(i)] + t[static_cast<std::size_t>(i + 1)]);
            estimate = t.front();
            if (std::abs(estimate - previous) <= opts.tolerance * std::max(1e-3, std::abs(estimate))) break;
            previous = estimate;
        }
        if (block + 1 == opts.max_blocks) fail(ErrorCode::NoConvergence, "contour sum did not settle");
    }
    return std::clamp(estimate * h / std::numbers::pi, 0.0, 1.0);
}

double bromwich_generic(const std::function<cplx(cplx)> &mgf, double v, double pole_scale)
{
    if (v <= 0.0) return 1.0;
    const double c = contour_abscissa(mgf, v, pole_scale);
    return bromwich_survival(mgf, v, c, pole_scale);
}

double bromwich_oracle(double v, const ScenarioParams &params, double u, SpectrumModel model)
{
    const SpeckleCoefficients coeffs = CoefficientFactory(params, model).at(u);
    const auto mgf = [&coeffs](cplx s) { return mgf_eval(coeffs, s); };
    return bromwich_generic(mgf, v, max_pole(coeffs));
}

double bromwich_compound(double v, const ScenarioParams &params, const TextureRule &rule, SpectrumModel model)
{
    if (v <= 0.0) return 1.0;
    const CoefficientFactory factory(params, model);
    std::vector<double> terms(rule.nodes.size(), 0.0);
    parallel_for(terms.size(), [&](std::size_t l) {
        if (rule.weights[l] < 1e-12) return;
        const SpeckleCoefficients coeffs = factory.at(rule.nodes[l]);
        const auto mgf = [&coeffs](cplx s) { return mgf_eval(coeffs, s); };
        terms[l] = rule.weights[l] * bromwich_generic(mgf, v, max_pole(coeffs));
    });
    double acc = 0.0;
    for (double t : terms) acc += t;
    return std::clamp(acc, 0.0, 1.0);
}

} // namespace gcl
