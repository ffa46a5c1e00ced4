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

#include "gammaclutter/gof_stats.hpp"

#include "gammaclutter/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace gcl {

double ks_statistic(const std::vector<double> &sorted, const SurvivalFn &sf)
{
    if (sorted.empty()) fail(ErrorCode::InvalidParameter, "KS statistic of an empty sample");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    double prev = 1.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double s = sf(sorted[i]);
        if (s > prev + 1e-9) fail(ErrorCode::NonMonotoneSF, "survival function increases between samples");
        prev = std::min(prev, s);
        const double f = 1.0 - s;
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return std::min(d, 1.0);
}

double ks_statistic(const EmpiricalDistribution &samples, const SurvivalFn &sf)
{
    return ks_statistic(samples.sorted_samples, sf);
}

double kolmogorov_sf(double x)
{
    if (!(x > 0.0)) return 1.0;
    if (x < 1.0) {
        // 1 - (sqrt(2 pi) / x) sum exp(-(2k-1)^2 pi^2 / (8 x^2))
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
        double acc = 0.0;
        for (int k = 1; k < 100; ++k) {
            const double t = std::exp(-(2.0 * k - 1.0) * (2.0 * k - 1.0) * c);
            acc += t;
            if (t < 1e-17 * acc) break;
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * acc, 0.0, 1.0);
    }
    double acc = 0.0;
    for (int k = 1; k < 100; ++k) {
        const double t = std::exp(-2.0 * k * k * x * x);
        acc += (k % 2 == 1) ? t : -t;
        if (t < 1e-16) break;
    }
    return std::clamp(2.0 * acc, 0.0, 1.0);
}

double kolmogorov_critical_value(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::InvalidParameter, "alpha must lie in (0, 1)");
    double lo = 0.0, hi = 10.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_sf(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double dkw_epsilon(std::int64_t n, double alpha)
{
    if (n < 1 || !(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::InvalidParameter, "dkw_epsilon needs n >= 1, 0 < alpha < 1");
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::InvalidParameter, "normal quantile needs 0 < p < 1");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement against the exact normal CDF.
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

KSReport ks_test(const EmpiricalDistribution &samples, const SurvivalFn &sf, double alpha, const std::vector<double> &levels)
{
    KSReport r;
    r.n = static_cast<std::int64_t>(samples.sorted_samples.size());
    r.statistic = ks_statistic(samples, sf);
    r.p_value = kolmogorov_sf(std::sqrt(static_cast<double>(r.n)) * r.statistic);
    r.alpha = alpha;
    r.dkw_epsilon_at_alpha = dkw_epsilon(r.n, alpha);
    for (double level : levels) r.reject_at[level] = r.p_value < level;
    return r;
}

KSEnsemble build_ensemble(std::vector<double> statistics, std::int64_t n, const EnsembleOptions &opts)
{
    if (statistics.empty()) fail(ErrorCode::InvalidParameter, "ensemble needs at least one statistic");
    KSEnsemble e;
    e.statistics = std::move(statistics);
    e.n = n;
    e.alpha = opts.alpha;
    const std::size_t k = e.statistics.size();
    const double kd = static_cast<double>(k);
    e.mean_statistic = std::accumulate(e.statistics.begin(), e.statistics.end(), 0.0) / kd;

    std::vector<double> sorted = e.statistics;
    std::sort(sorted.begin(), sorted.end());
    const auto fraction_above = [](const std::vector<double> &s, double x) {
        return static_cast<double>(s.end() - std::upper_bound(s.begin(), s.end(), x)) / static_cast<double>(s.size());
    };

    const int g = std::max(2, opts.grid_points);
    const double top = 1.2 * sorted.back();
    e.grid.resize(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) e.grid[static_cast<std::size_t>(i)] = top * i / (g - 1);

    const double z = normal_quantile(1.0 - 0.5 * opts.alpha);
    const double root_n = std::sqrt(static_cast<double>(n));
    for (double x : e.grid) {
        const double f = fraction_above(sorted, x);
        const double half = z * std::sqrt(f * (1.0 - f) / kd);
        e.ensemble_sf.push_back(f);
        e.greenwood_lower.push_back(std::max(0.0, f - half));
        e.greenwood_upper.push_back(std::min(1.0, f + half));
        e.kolmogorov_curve.push_back(kolmogorov_sf(root_n * x));
        e.dkw_curve.push_back(std::min(1.0, 2.0 * std::exp(-2.0 * static_cast<double>(n) * x * x)));
    }

    // Bootstrap band: pointwise quantiles of resampled ensemble survival curves.
    const int nb = std::max(1, opts.bootstrap);
    std::vector<std::vector<double>> curves(static_cast<std::size_t>(g), std::vector<double>(static_cast<std::size_t>(nb)));
    std::vector<double> resample(k);
    for (int b = 0; b < nb; ++b) {
        RandomStream rng(opts.bootstrap_seed, static_cast<std::uint64_t>(b), 0x7B00u);
        for (double &x : resample) x = sorted[std::min(k - 1, static_cast<std::size_t>(rng.uniform() * kd))];
        std::sort(resample.begin(), resample.end());
        for (int i = 0; i < g; ++i)
            curves[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] = fraction_above(resample, e.grid[static_cast<std::size_t>(i)]);
    }
    const auto rank = [nb](double p) {
        return static_cast<std::size_t>(std::clamp(static_cast<int>(std::ceil(p * nb)) - 1, 0, nb - 1));
    };
    for (auto &c : curves) {
        std::sort(c.begin(), c.end());
        e.bootstrap_lower.push_back(c[rank(0.5 * opts.alpha)]);
        e.bootstrap_upper.push_back(c[rank(1.0 - 0.5 * opts.alpha)]);
    }

    // White space between the DKW curve and the lower Greenwood edge.
    int run = 0;
    for (std::size_t i = 0; i < e.grid.size(); ++i) {
        const double f = e.ensemble_sf[i];
        const bool violation = f > 0.0 && f < 1.0 && e.greenwood_lower[i] > e.dkw_curve[i];
        run = violation ? run + 1 : 0;
        e.longest_violation = std::max(e.longest_violation, run);
    }
    e.reject = e.longest_violation >= opts.violation_run;
    return e;
}

namespace {

double replicate_statistic(const McConfig &base, const SurvivalFn &sf, int r)
{
    McConfig c = base;
    c.seed = replicate_seed(base.seed, r);
    std::vector<double> x = simulate_raw_serial(c);
    std::sort(x.begin(), x.end());
    return ks_statistic(x, sf);
}

} // namespace

std::vector<double> ks_replicates(const McConfig &base, const SurvivalFn &sf, int replicates)
{
    std::vector<double> out(static_cast<std::size_t>(std::max(0, replicates)));
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < replicates; ++r) {
        try {
            out[static_cast<std::size_t>(r)] = replicate_statistic(base, sf, r);
        } catch (...) {
#pragma omp critical(gcl_ks_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<double> ks_replicates_serial(const McConfig &base, const SurvivalFn &sf, int replicates)
{
    std::vector<double> out;
    for (int r = 0; r < replicates; ++r) out.push_back(replicate_statistic(base, sf, r));
    return out;
}

KSEnsemble ks_ensemble(const McConfig &base, const SurvivalFn &sf, int replicates, const EnsembleOptions &opts)
{
    return build_ensemble(ks_replicates(base, sf, replicates), base.n_samples, opts);
}

nlohmann::json to_json(const KSEnsemble &e)
{
    nlohmann::json j;
    j["statistics"] = e.statistics;
    j["n"] = e.n;
    j["replicates"] = e.statistics.size();
    j["alpha"] = e.alpha;
    j["mean_statistic"] = e.mean_statistic;
    j["reject"] = e.reject;
    j["longest_violation"] = e.longest_violation;
    j["grid"] = e.grid;
    j["ensemble_sf"] = e.ensemble_sf;
    j["bootstrap_band"] = {{"lower", e.bootstrap_lower}, {"upper", e.bootstrap_upper}};
    j["greenwood"] = {{"lower", e.greenwood_lower}, {"upper", e.greenwood_upper}};
    j["kolmogorov_curve"] = e.kolmogorov_curve;
    j["dkw_curve"] = e.dkw_curve;
    return j;
}

SurvivalFn perturb_sf(SurvivalFn sf, double epsilon)
{
    if (!(epsilon > -1.0)) fail(ErrorCode::InvalidParameter, "perturbation exponent must exceed -1");
    return [sf = std::move(sf), epsilon](double v) {
        const double s = sf(v);
        return s > 0.0 ? std::pow(s, 1.0 + epsilon) : 0.0;
    };
}

double delta_max(double epsilon)
{
    if (epsilon == 0.0) return 0.0;
    if (!(epsilon > -1.0)) fail(ErrorCode::InvalidParameter, "perturbation exponent must exceed -1");
    return epsilon * std::exp(-(1.0 + 1.0 / epsilon) * std::log1p(epsilon));
}

double epsilon_from_delta(double delta)
{
    if (!(delta >= 0.0 && delta < 1.0)) fail(ErrorCode::InvalidParameter, "delta must lie in [0, 1)");
    if (delta == 0.0) return 0.0;
    double eps = std::numbers::e * delta;
    // Newton on ln delta_max(eps) = ln delta; d/d eps ln delta_max = ln(1 + eps) / eps^2.
    for (int it = 0; it < 100; ++it) {
        const double g = std::log(delta_max(eps)) - std::log(delta);
        if (std::abs(g) <= 2e-16) return eps;
        const double step = g / (std::log1p(eps) / (eps * eps));
        double next = eps - step;
        if (!(next > 0.0)) next = 0.5 * eps;
        if (std::abs(next - eps) <= 1e-14 * eps) return next;
        eps = next;
    }
    fail(ErrorCode::NoConvergence, "epsilon_from_delta did not converge");
}

PowerStudyResult power_study(const McConfig &base, const SurvivalFn &sf, double delta, int replicates, int studies,
                             const EnsembleOptions &opts)
{
    PowerStudyResult out;
    out.epsilon = epsilon_from_delta(delta);
    out.studies = studies;
    const SurvivalFn perturbed = perturb_sf(sf, out.epsilon);
    for (int j = 0; j < studies; ++j) {
        McConfig c = base;
        c.seed = replicate_seed(base.seed ^ 0x5057u, j);
        EnsembleOptions o = opts;
        o.bootstrap_seed = replicate_seed(opts.bootstrap_seed, j);
        const KSEnsemble e = build_ensemble(ks_replicates(c, perturbed, replicates), c.n_samples, o);
        out.rejections += e.reject ? 1 : 0;
        out.mean_statistics.push_back(e.mean_statistic);
    }
    out.power = studies > 0 ? static_cast<double>(out.rejections) / studies : 0.0;
    return out;
}

} // namespace gcl
