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

// Acceptance harness: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset. Exit status is non-zero if any criterion fails.

#include "gammaclutter/detector.hpp"
#include "gammaclutter/error.hpp"
#include "gammaclutter/fpm_mc.hpp"
#include "gammaclutter/gof_stats.hpp"
#include "gammaclutter/texture.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace gcl;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

// Curves emitted by any criterion; criterion 11 checks bounds and monotonicity over all of them.
struct CurveAudit {
    long curves = 0, violations = 0;
    void check(const std::vector<double> &sf)
    {
        ++curves;
        for (std::size_t i = 0; i < sf.size(); ++i) {
            if (!(sf[i] >= 0.0 && sf[i] <= 1.0)) ++violations;
            if (i > 0 && sf[i] > sf[i - 1] + 1e-12) ++violations;
        }
    }
} audit;

// Saddle-equation audit: r1 at every saddle behind the grids of criteria 2 and 4.
struct SaddleAudit {
    long saddles = 0;
    double worst = 0.0;
    void check(const ScenarioParams &p, SpectrumModel model, const TextureRule &rule, const std::vector<double> &v)
    {
        const CoefficientFactory factory(p, model);
        for (double u : rule.nodes) {
            const SpeckleDistribution d(factory.at(u));
            for (double x : v) {
                if (!(x > 0.0)) continue;
                worst = std::max(worst, std::abs(d.saddle(x).r(1) - 1.0));
                ++saddles;
            }
        }
    }
} saddle_audit;

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioParams random_scenario(std::mt19937_64 &gen, const std::vector<int> &pulses)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int M = pulses[gen() % pulses.size()];
    const Kappa kappa(static_cast<int>(gen() % 3) + 1);
    const double nus[] = {1.0, 10.0, kInfiniteShape};
    const double nu = nus[gen() % 3];
    const double S = 10.0 * unit(gen), q = unit(gen), rho_s = 0.999 * unit(gen), rho_c = 0.999 * unit(gen);
    return ScenarioParams::gauss_markov(M, kappa, S, q, nu, rho_s, rho_c);
}

// Scenario of the KS figures: correlated target in correlated K-clutter.
ScenarioParams ks_scenario(int kappa)
{
    return ScenarioParams::gauss_markov(10, Kappa(kappa), 5.0, 0.9, 2.0, 0.95, 0.75);
}

SurvivalCurve tabulated(const ScenarioParams &p, Method method)
{
    const CompoundModel model(p, method);
    const double vmax = survival_horizon([&model](double v) { return model.survival(v); }, model.mean(), 1e-9);
    SurvivalCurve curve = SurvivalCurve::tabulate(model, vmax, 1000);
    audit.check(curve.values());
    return curve;
}

McConfig mc(const ScenarioParams &p, std::uint64_t seed, std::int64_t n = 10000)
{
    McConfig c;
    c.params = p;
    c.n_samples = n;
    c.seed = seed;
    return c;
}

double sum_rule_worst = 0.0;

Outcome criterion_moments()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(101);
    double worst_mean = 0.0, worst_var = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ScenarioParams p = random_scenario(gen, {2, 5, 10, 50});
        const MomentReport r = analytic_moments(p);
        const TextureRule rule = gamma_texture_rule(p.nu);
        const MomentEstimate e = cgf_moment_check(p, rule);
        worst_mean = std::max(worst_mean, std::abs(e.mean / (1.0 + p.S) - 1.0));
        worst_var = std::max(worst_var, std::abs(e.variance / r.variance - 1.0));
        const CoefficientFactory f(p, SpectrumModel::Effective);
        for (double u : rule.nodes) {
            const SpeckleCoefficients c = f.at(u);
            double s = 0.0;
            for (int m = 0; m < p.M; ++m) s += c.a[static_cast<std::size_t>(m)] - c.aq[static_cast<std::size_t>(m)];
            sum_rule_worst = std::max(sum_rule_worst, std::abs(s - p.S / p.kappa.as_double()));
        }
    }
    const double t = seconds_since(t0);
    return {worst_mean <= 1e-6 && worst_var <= 1e-5 && t < 120.0,
            fmt("200 scenarios, max rel mean err %.2e (<= 1e-6), max rel var err %.2e (<= 1e-5), %.1f s (< 120)",
                worst_mean, worst_var, t)};
}

Outcome criterion_oracle()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(202);
    double worst = 0.0;
    long points = 0;
    for (int i = 0; i < 20; ++i) {
        const ScenarioParams p = random_scenario(gen, {2, 5, 10});
        const CompoundModel model(p, Method::EffSdp);
        const auto sf = [&model](double v) { return model.survival(v); };
        const double vmax = survival_horizon(sf, model.mean(), 1e-6);
        const std::vector<double> v = linspace(vmax / 50.0, vmax, 50);
        const std::vector<double> f = model.survival_grid(v);
        audit.check(f);
        saddle_audit.check(p, SpectrumModel::Effective, model.rule(), v);
        std::vector<double> exact(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) exact[k] = bromwich_compound(v[k], p, model.rule());
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (exact[k] < 1e-6) continue;
            worst = std::max(worst, std::abs(f[k] - exact[k]));
            ++points;
        }
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-6 && t < 300.0,
            fmt("20 scenarios x 50 points (%ld with survival >= 1e-6), max abs err %.2e (<= 1e-6), %.1f s (< 300)",
                points, worst, t)};
}

Outcome criterion_diagonal_exact()
{
    struct Case {
        const char *name;
        ScenarioParams p;
    };
    const Case cases[] = {
        {"rho_c = 0", ScenarioParams::gauss_markov(8, Kappa(2), 4.0, 0.8, 3.0, 0.9, 0.0)},
        {"rho_s = 0", ScenarioParams::gauss_markov(8, Kappa(2), 4.0, 0.8, 3.0, 0.0, 0.7)},
        {"rho_c = rho_s", ScenarioParams::gauss_markov(8, Kappa(1), 4.0, 0.8, 3.0, 0.6, 0.6)},
        {"M = 2", ScenarioParams::gauss_markov(2, Kappa(3), 4.0, 0.8, 3.0, 0.95, 0.3)},
        {"S = 0", ScenarioParams::gauss_markov(8, Kappa(2), 0.0, 0.8, 3.0, 0.95, 0.75)},
        {"q = 0", ScenarioParams::gauss_markov(8, Kappa(2), 4.0, 0.0, 3.0, 0.95, 0.75)},
    };
    double worst = 0.0;
    std::string worst_case;
    for (const Case &c : cases) {
        const CompoundModel eff(c.p, Method::EffSdp), diag(c.p, Method::DiagSdp);
        const double vmax = survival_horizon([&eff](double v) { return eff.survival(v); }, eff.mean(), 1e-8);
        const auto v = linspace(vmax / 60.0, vmax, 60);
        const auto a = eff.survival_grid(v), b = diag.survival_grid(v);
        audit.check(a);
        audit.check(b);
        for (std::size_t k = 0; k < v.size(); ++k)
            if (std::abs(a[k] - b[k]) > worst) worst = std::abs(a[k] - b[k]), worst_case = c.name;
    }
    return {worst <= 1e-8, fmt("6 special cases, max |diag - eff| %.2e (<= 1e-8, worst: %s)", worst,
                               worst_case.empty() ? "-" : worst_case.c_str())};
}

Outcome criterion_diagonal_accuracy()
{
    const ScenarioParams cases[] = {
        ScenarioParams::gauss_markov(10, Kappa(2), 5.0, 0.9, 2.0, 0.95, 0.75),
        ScenarioParams::gauss_markov(10, Kappa(1), 5.0, 0.9, 2.0, 0.95, 0.75),
        ScenarioParams::gauss_markov(10, Kappa(2), 5.0, 1.0, kInfiniteShape, 0.95, 0.5),
        ScenarioParams::gauss_markov(20, Kappa(2), 5.0, 0.7, 5.0, 0.9, 0.3),
    };
    double worst = 0.0;
    std::string per_case;
    for (const ScenarioParams &p : cases) {
        double case_worst = 0.0;
        const CompoundModel eff(p, Method::EffSdp), diag(p, Method::DiagSdp);
        const double vmax = threshold_for_level([&eff](double v) { return eff.survival(v); }, eff.mean(), p.M, 1e-3);
        const auto v = linspace(vmax / 100.0, vmax, 100);
        const auto a = eff.survival_grid(v), b = diag.survival_grid(v);
        audit.check(a);
        audit.check(b);
        saddle_audit.check(p, SpectrumModel::Diagonal, diag.rule(), v);
        for (std::size_t k = 0; k < v.size(); ++k)
            if (a[k] >= 1e-3) case_worst = std::max(case_worst, std::abs(b[k] / a[k] - 1.0));
        per_case += fmt(" %.2e", case_worst);
        worst = std::max(worst, case_worst);
    }
    return {worst < 0.01, fmt("S = 5 (mean 6), 4 scenarios, max relative deviation %.2e for survival >= 1e-3 (< 0.01); "
                              "per scenario:%s",
                              worst, per_case.c_str())};
}

// Randomized M = 100 draws shared by criteria 5 and 10.
struct BenchStats {
    std::vector<Method> methods = all_methods();
    std::vector<double> seconds = std::vector<double>(6, 0.0), max_abs = std::vector<double>(6, 0.0);
    double sp_worst = 0.0, sp_worst_location = 0.0;
    int sp_draws_near_mean = 0;
    int draws = 0;
    bool done = false;
};

BenchStats &bench()
{
    static BenchStats b;
    if (b.done) return b;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> s_dist(1.0, 10.0), nu_dist(1.0, 10.0), q_dist(0.5, 1.0);
    CompoundOptions opts;
    opts.refine_order = false;
    b.draws = 10;
    for (int d = 0; d < b.draws; ++d) {
        const double S = s_dist(rng), nu = nu_dist(rng), q = q_dist(rng);
        const ScenarioParams p = ScenarioParams::gauss_markov(100, Kappa(2), S, q, nu, 0.95, 0.75);
        const CompoundModel ref(p, Method::EffSdp, opts);
        const double v_end = threshold_for_level([&ref](double v) { return ref.survival(v); }, ref.mean(), p.M, 1e-3);
        const auto v = linspace(v_end / 100.0, v_end, 100);
        const auto truth = ref.survival_grid(v);
        double draw_sp_worst = 0.0, draw_sp_where = 0.0;
        for (std::size_t k = 0; k < b.methods.size(); ++k) {
            const auto t0 = std::chrono::steady_clock::now();
            const CompoundModel model(p, b.methods[k], opts);
            const auto f = model.survival_grid(v);
            b.seconds[k] += seconds_since(t0);
            audit.check(f);
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double diff = std::abs(f[i] - truth[i]);
                b.max_abs[k] = std::max(b.max_abs[k], diff);
                if (b.methods[k] == Method::EffSp && diff > draw_sp_worst) draw_sp_worst = diff, draw_sp_where = v[i];
            }
        }
        if (std::abs(draw_sp_where / (1.0 + S) - 1.0) <= 0.3) ++b.sp_draws_near_mean;
        if (draw_sp_worst > b.sp_worst) b.sp_worst = draw_sp_worst, b.sp_worst_location = draw_sp_where / (1.0 + S);
    }
    for (double &s : b.seconds) s /= b.draws;
    b.done = true;
    return b;
}

std::size_t index_of(const BenchStats &b, Method m)
{
    return static_cast<std::size_t>(std::find(b.methods.begin(), b.methods.end(), m) - b.methods.begin());
}

Outcome criterion_sp_vs_sdp()
{
    const BenchStats &b = bench();
    const double err = b.max_abs[index_of(b, Method::EffSp)];
    const bool pass = err >= 1e-3 && err <= 1e-1 && b.sp_draws_near_mean == b.draws;
    return {pass, fmt("%d draws (M = 100), eff-sp max abs dev %.3e (in [1e-3, 1e-1]); per-draw maximum within "
                      "+-30%% of the mean in %d/%d draws (largest at %.3f x mean)",
                      b.draws, err, b.sp_draws_near_mean, b.draws, b.sp_worst_location)};
}

Outcome criterion_benchmark()
{
    const BenchStats &b = bench();
    auto t = [&](Method m) { return b.seconds[index_of(b, m)]; };
    const bool fastest = std::all_of(b.methods.begin(), b.methods.end(),
                                     [&](Method m) { return m == Method::DmgSp || t(Method::DmgSp) < t(m); });
    const bool slowest_sdp = t(Method::EffSdp) > t(Method::DmgSdp) && t(Method::EffSdp) > t(Method::DiagSdp);
    const double diag_err = b.max_abs[index_of(b, Method::DiagSdp)];
    std::string times;
    for (Method m : b.methods) times += fmt(" %s %.3fs", to_string(m).c_str(), t(m));
    return {fastest && slowest_sdp && diag_err <= 1e-3,
            fmt("dmg-sp fastest: %s, eff-sdp slowest SDP: %s, diag-sdp max abs err %.2e (<= 1e-3); mean times:%s",
                fastest ? "yes" : "no", slowest_sdp ? "yes" : "no", diag_err, times.c_str())};
}

// Shared KS statistics for criteria 6 and 7.
std::map<std::pair<int, Method>, KSEnsemble> ks_cache;

const KSEnsemble &ks_run(int kappa, Method method)
{
    const auto key = std::make_pair(kappa, method);
    if (auto it = ks_cache.find(key); it != ks_cache.end()) return it->second;
    const ScenarioParams p = ks_scenario(kappa);
    const SurvivalCurve curve = tabulated(p, method);
    const auto sf = [&curve](double v) { return curve(v); };
    return ks_cache[key] = ks_ensemble(mc(p, 600 + static_cast<std::uint64_t>(kappa)), sf, 400);
}

Outcome criterion_ks_null()
{
    const auto t0 = std::chrono::steady_clock::now();
    const KSEnsemble &a = ks_run(1, Method::EffSdp);
    const KSEnsemble &b = ks_run(2, Method::EffSdp);
    const double t = seconds_since(t0);
    return {!a.reject && !b.reject && t < 600.0,
            fmt("K = 400, n = 1e4 vs eff-sdp: kappa 1 mean D %.5f run %d reject %s; kappa 2 mean D %.5f run %d "
                "reject %s; %.1f s (< 600)",
                a.mean_statistic, a.longest_violation, a.reject ? "yes" : "no", b.mean_statistic,
                b.longest_violation, b.reject ? "yes" : "no", t)};
}

Outcome criterion_ks_dmg()
{
    const KSEnsemble &b = ks_run(2, Method::DmgSdp);
    const KSEnsemble &a = ks_run(1, Method::DmgSdp);
    return {b.reject, fmt("K = 400, n = 1e4 vs dmg-sdp: kappa 2 mean D %.5f run %d reject %s (required); kappa 1 mean "
                          "D %.5f run %d reject %s (reported)",
                          b.mean_statistic, b.longest_violation, b.reject ? "yes" : "no", a.mean_statistic,
                          a.longest_violation, a.reject ? "yes" : "no")};
}

Outcome criterion_worst_case()
{
    auto mean_ks = [](double rho_s, std::uint64_t seed) {
        McConfig c = mc(ScenarioParams::gauss_markov(10, Kappa::infinite(), 5.0, 1.0, kInfiniteShape, rho_s, 1.0), seed);
        c.rotation = TargetRotation::Literal;
        const auto sf = [](double v) { return effsw0_survival(v, 5.0, 10); };
        const auto d = ks_replicates(c, sf, 100);
        return std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
    };
    const double uncorrelated = mean_ks(0.0, 801), slight = mean_ks(1e-4, 802);
    const bool pass = std::abs(uncorrelated - 0.04) <= 0.01 && std::abs(slight - 0.008) <= 0.004;
    return {pass, fmt("100 replicates, n = 1e4: rho_s = 0 mean D %.4f (0.04 +- 0.01); rho_s = 1e-4 mean D %.4f "
                      "(0.008 +- 0.004)",
                      uncorrelated, slight)};
}

Outcome criterion_power()
{
    const auto t0 = std::chrono::steady_clock::now();
    const ScenarioParams p = ks_scenario(2);
    const SurvivalCurve curve = tabulated(p, Method::EffSdp);
    const auto sf = [&curve](double v) { return curve(v); };
    const int studies = 20;
    EnsembleOptions opts;
    opts.bootstrap_seed = 9;
    const PowerStudyResult alt = power_study(mc(p, 901), sf, 0.003, 400, studies, opts);
    const PowerStudyResult null = power_study(mc(p, 902), sf, 0.0, 400, studies, opts);
    const double t = seconds_since(t0);
    return {alt.power >= 0.95 && null.power <= 0.05,
            fmt("%d ensembles each (K = 400, n = 1e4): delta 0.003 (eps %.5f) power %.2f (>= 0.95); delta 0 "
                "rejection rate %.2f (<= 0.05); %.0f s",
                studies, alt.epsilon, alt.power, null.power, t)};
}

Outcome criterion_properties()
{
    std::vector<std::string> failures;
    // r1 at every saddle of the criterion 2 and 4 grids (run them if they have not run).
    if (saddle_audit.saddles == 0) {
        const ScenarioParams p = ks_scenario(2);
        const CompoundModel model(p, Method::EffSdp);
        saddle_audit.check(p, SpectrumModel::Effective, model.rule(), linspace(0.2, 60.0, 50));
    }
    if (saddle_audit.worst > 1e-8) failures.push_back("r1");

    // Sum rule over the criterion 1 scenarios (or a fresh batch).
    if (sum_rule_worst == 0.0) {
        std::mt19937_64 gen(101);
        for (int i = 0; i < 200; ++i) {
            const ScenarioParams p = random_scenario(gen, {2, 5, 10, 50});
            const SpeckleCoefficients c = speckle_coeffs(p, 1.0);
            double s = 0.0;
            for (int m = 0; m < p.M; ++m) s += c.a[static_cast<std::size_t>(m)] - c.aq[static_cast<std::size_t>(m)];
            sum_rule_worst = std::max(sum_rule_worst, std::abs(s - p.S / p.kappa.as_double()));
        }
    }
    if (sum_rule_worst > 1e-10) failures.push_back("sum rule");

    // Steady-target weights.
    std::mt19937_64 gen(1111);
    std::uniform_real_distribution<double> unit(0.0, 0.999);
    double b_worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int M = 2 + static_cast<int>(gen() % 30);
        const EigenSystem ec = eigen_decompose(CorrelationSpec::gauss_markov(unit(gen), M));
        const EigenSystem es = eigen_decompose(CorrelationSpec::gauss_markov(unit(gen), M));
        const auto b = steady_target_weights(ec, es);
        b_worst = std::max(b_worst, std::abs(std::accumulate(b.begin(), b.end(), 0.0) - 1.0));
    }
    if (b_worst > 1e-12) failures.push_back("steady weights");

    // Texture-rule gamma moments.
    double moment_worst = 0.0;
    for (double nu : {0.5, 1.0, 5.0, 10.0, 100.0}) {
        const TextureRule rule = gamma_texture_rule(nu);
        for (int k = 0; k <= 4; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
            moment_worst = std::max(moment_worst, std::abs(s / gamma_texture_moment(nu, k) - 1.0));
        }
    }
    if (moment_worst > 1e-9) failures.push_back("texture moments");

    if (audit.curves == 0) audit.check(CompoundModel(ks_scenario(1), Method::DmgSp).survival_grid(linspace(0.0, 40.0, 80)));
    if (audit.violations > 0) failures.push_back("curve monotonicity");

    // Bit-identical reruns at any thread count.
    bool identical = true;
    const McConfig c = mc(ks_scenario(2), 4242, 4000);
    const auto reference = simulate_raw_serial(c);
    const CompoundModel model(ks_scenario(2), Method::DiagSdp);
    const auto grid = linspace(0.5, 40.0, 40);
    const auto grid_ref = model.survival_grid_serial(grid);
    const auto sf = [](double v) { return std::exp(-v / 6.0); };
    const auto ks_ref = ks_replicates_serial(mc(ks_scenario(2), 4343, 500), sf, 12);
    const int restore = omp_get_max_threads();
    for (int threads : {1, 2, 3, 8}) {
        omp_set_num_threads(threads);
        identical = identical && simulate_raw(c) == reference && model.survival_grid(grid) == grid_ref &&
                    ks_replicates(mc(ks_scenario(2), 4343, 500), sf, 12) == ks_ref;
    }
    omp_set_num_threads(restore);
    if (!identical) failures.push_back("reproducibility");

    std::string failed;
    for (const auto &f : failures) failed += " " + f;
    return {failures.empty(),
            fmt("r1 max dev %.1e over %ld saddles (1e-8); sum rule %.1e (1e-10); sum b - 1 %.1e (1e-12); texture "
                "moments %.1e (1e-9); %ld curves, %ld monotonicity/bound violations; thread bit-identity %s%s%s",
                saddle_audit.worst, saddle_audit.saddles, sum_rule_worst, b_worst, moment_worst, audit.curves,
                audit.violations, identical ? "yes" : "no", failed.empty() ? "" : "; failed:", failed.c_str())};
}

} // namespace

int main(int argc, char **argv)
{
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    const std::map<int, std::pair<const char *, std::function<Outcome()>>> criteria = {
        {1, {"moment identities", criterion_moments}},
        {2, {"oracle equivalence", criterion_oracle}},
        {3, {"diagonal exact cases", criterion_diagonal_exact}},
        {4, {"diagonal accuracy", criterion_diagonal_accuracy}},
        {5, {"SP vs SDP", criterion_sp_vs_sdp}},
        {6, {"KS null non-rejection", criterion_ks_null}},
        {7, {"KS rejection of DMG", criterion_ks_dmg}},
        {8, {"worst-case discrepancy", criterion_worst_case}},
        {9, {"power study", criterion_power}},
        {10, {"benchmark orderings", criterion_benchmark}},
        {11, {"property suites", criterion_properties}},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failed = 0;
    for (const auto &[id, entry] : criteria) {
        if (!selected.empty() && !selected.count(id)) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = entry.second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, entry.first, o.detail.c_str(),
                    seconds_since(t0));
    }
    return failed == 0 ? 0 : 1;
}
