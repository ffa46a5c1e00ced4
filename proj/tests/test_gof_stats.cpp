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

#include "gammaclutter/error.hpp"
#include "gammaclutter/gof_stats.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace gcl;

namespace {

// Single-pulse noise: unit exponential power, survival exp(-v).
McConfig exponential_config(std::int64_t n, std::uint64_t seed)
{
    McConfig c;
    c.params = ScenarioParams::gauss_markov(1, Kappa(1), 0.0, 0.0, kInfiniteShape, 0.0, 0.0);
    c.n_samples = n;
    c.seed = seed;
    return c;
}

const SurvivalFn unit_exponential = [](double v) { return v <= 0.0 ? 1.0 : std::exp(-v); };

double median(std::vector<double> x)
{
    std::sort(x.begin(), x.end());
    return 0.5 * (x[(x.size() - 1) / 2] + x[x.size() / 2]);
}

} // namespace

TEST(KsStatistic, SingleSampleAtMedian)
{
    EXPECT_DOUBLE_EQ(ks_statistic(std::vector<double>{std::log(2.0)}, unit_exponential), 0.5);
}

TEST(KsStatistic, ExactAtOrderStatistics)
{
    const std::vector<double> x{0.1, 0.5, 2.0};
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double f = 1.0 - std::exp(-x[i]);
        d = std::max({d, (i + 1) / 3.0 - f, f - i / 3.0});
    }
    EXPECT_DOUBLE_EQ(ks_statistic(x, unit_exponential), d);
}

TEST(KsStatistic, DistributionFreeUnderMonotoneTransform)
{
    const EmpiricalDistribution d = simulate_returns(exponential_config(2000, 3));
    std::vector<double> cubed = d.sorted_samples;
    for (double &x : cubed) x = x * x * x;
    const SurvivalFn sf_cubed = [](double y) { return unit_exponential(std::cbrt(y)); };
    EXPECT_NEAR(ks_statistic(d, unit_exponential), ks_statistic(cubed, sf_cubed), 1e-15);
}

TEST(KsStatistic, RejectsIncreasingSurvival)
{
    const SurvivalFn bad = [](double v) { return v < 1.0 ? 0.2 : 0.9; };
    EXPECT_THROW(ks_statistic(std::vector<double>{0.5, 1.5}, bad), Error);
}

TEST(Kolmogorov, SeriesValues)
{
    EXPECT_EQ(kolmogorov_sf(0.0), 1.0);
    EXPECT_NEAR(kolmogorov_sf(1e-3), 1.0, 1e-15);
    EXPECT_NEAR(kolmogorov_sf(3.0) / (2.0 * std::exp(-18.0)), 1.0, 1e-12);
    EXPECT_NEAR(kolmogorov_critical_value(0.01), 1.6276, 1e-4);
    EXPECT_NEAR(kolmogorov_sf(kolmogorov_critical_value(0.05)), 0.05, 1e-12);
    // Median of the Kolmogorov law.
    EXPECT_NEAR(kolmogorov_critical_value(0.5), 0.8276, 1e-4);
    double previous = 1.0;
    for (int i = 0; i <= 400; ++i) {
        const double q = kolmogorov_sf(i * 0.01);
        EXPECT_LE(q, previous);
        EXPECT_GE(q, 0.0);
        previous = q;
    }
    // Both branches agree where they meet.
    EXPECT_NEAR(kolmogorov_sf(1.0 - 1e-12), kolmogorov_sf(1.0 + 1e-12), 1e-11);
}

TEST(Dkw, ClosedForm)
{
    EXPECT_NEAR(dkw_epsilon(10000, 0.01), 0.0162762, 1e-7);
    EXPECT_NEAR(dkw_epsilon(40000, 0.01), 0.5 * dkw_epsilon(10000, 0.01), 1e-15);
    const std::int64_t n = 3;
    EXPECT_NEAR(dkw_epsilon(n, 2.0 * std::exp(-2.0 * n)), 1.0, 1e-14);
}

TEST(NormalQuantile, AgreesWithReference)
{
    const boost::math::normal_distribution<double> z;
    for (double p : {1e-12, 1e-6, 0.005, 0.025, 0.3, 0.5, 0.8, 0.995, 1.0 - 1e-9})
        EXPECT_NEAR(normal_quantile(p), boost::math::quantile(z, p), 1e-9 * std::max(1.0, std::abs(boost::math::quantile(z, p))))
            << p;
    EXPECT_THROW(normal_quantile(0.0), Error);
    EXPECT_THROW(normal_quantile(1.0), Error);
}

TEST(KsTest, ReportFields)
{
    const auto d = simulate_returns(exponential_config(10000, 8));
    const KSReport r = ks_test(d, unit_exponential);
    EXPECT_EQ(r.n, 10000);
    EXPECT_GE(r.statistic, 0.0);
    EXPECT_LE(r.statistic, 1.0);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    EXPECT_NEAR(r.p_value, kolmogorov_sf(100.0 * r.statistic), 1e-15);
    EXPECT_EQ(r.reject_at.size(), 3u);
    const KSReport shifted = ks_test(d, [](double v) { return std::exp(-v / 1.1); });
    EXPECT_TRUE(shifted.reject_at.at(0.01));
}

TEST(Replicates, NullMedianMatchesKolmogorovLaw)
{
    const auto stats = ks_replicates(exponential_config(10000, 21), unit_exponential, 400);
    std::vector<double> scaled(stats.size());
    for (std::size_t i = 0; i < stats.size(); ++i) scaled[i] = 100.0 * stats[i];
    EXPECT_NEAR(median(scaled), 0.8276, 0.05);
}

TEST(Replicates, ParallelMatchesSerial)
{
    const McConfig c = exponential_config(2000, 5);
    EXPECT_EQ(ks_replicates(c, unit_exponential, 24), ks_replicates_serial(c, unit_exponential, 24));
}

TEST(Replicates, DkwCoverage)
{
    const auto stats = ks_replicates(exponential_config(10000, 33), unit_exponential, 200);
    const double eps = dkw_epsilon(10000, 0.01);
    const auto inside = std::count_if(stats.begin(), stats.end(), [&](double d) { return d <= eps; });
    EXPECT_GE(static_cast<double>(inside) / stats.size(), 0.99);
}

TEST(Ensemble, BandsAndNullDecision)
{
    const KSEnsemble e = ks_ensemble(exponential_config(10000, 44), unit_exponential, 400);
    EXPECT_FALSE(e.reject) << e.longest_violation;
    EXPECT_EQ(e.statistics.size(), 400u);
    EXPECT_EQ(static_cast<int>(e.grid.size()), 200);
    EXPECT_NEAR(e.grid.back(), 1.2 * *std::max_element(e.statistics.begin(), e.statistics.end()), 1e-15);
    for (std::size_t i = 0; i < e.grid.size(); ++i) {
        EXPECT_LE(e.bootstrap_lower[i], e.ensemble_sf[i] + 1e-15);
        EXPECT_GE(e.bootstrap_upper[i], e.ensemble_sf[i] - 1e-15);
        EXPECT_LE(e.greenwood_lower[i], e.ensemble_sf[i]);
        EXPECT_GE(e.greenwood_upper[i], e.ensemble_sf[i]);
        EXPECT_NEAR(e.kolmogorov_curve[i], kolmogorov_sf(100.0 * e.grid[i]), 1e-15);
        EXPECT_NEAR(e.dkw_curve[i], std::min(1.0, 2.0 * std::exp(-2e4 * e.grid[i] * e.grid[i])), 1e-15);
    }
    // Coverage: the Kolmogorov curve leaves the Greenwood band on at most a small fraction of points.
    int outside = 0, interior = 0;
    for (std::size_t i = 0; i < e.grid.size(); ++i) {
        if (e.ensemble_sf[i] <= 0.0 || e.ensemble_sf[i] >= 1.0) continue;
        ++interior;
        if (e.kolmogorov_curve[i] < e.greenwood_lower[i] || e.kolmogorov_curve[i] > e.greenwood_upper[i]) ++outside;
    }
    EXPECT_LE(outside, std::max(2, interior / 10)) << outside << " of " << interior;
    const nlohmann::json j = to_json(e);
    for (const char *key : {"statistics", "grid", "ensemble_sf", "bootstrap_band", "greenwood", "kolmogorov_curve",
                            "dkw_curve", "reject", "mean_statistic"})
        EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Ensemble, GrossPerturbationIsRejected)
{
    const KSEnsemble e =
        ks_ensemble(exponential_config(10000, 45), perturb_sf(unit_exponential, epsilon_from_delta(0.05)), 400);
    EXPECT_TRUE(e.reject);
}

TEST(Perturbation, Axioms)
{
    const SurvivalFn g = perturb_sf(unit_exponential, 0.2);
    EXPECT_EQ(g(0.0), 1.0);
    EXPECT_LT(g(60.0), 1e-25);
    double previous = 1.0;
    for (int i = 0; i < 100; ++i) {
        EXPECT_LE(g(0.1 * i), previous);
        previous = g(0.1 * i);
    }
    const SurvivalFn same = perturb_sf(unit_exponential, 0.0);
    EXPECT_EQ(same(1.3), unit_exponential(1.3));
    EXPECT_EQ(delta_max(0.0), 0.0);
    EXPECT_EQ(epsilon_from_delta(0.0), 0.0);
}

TEST(Perturbation, DeltaInversion)
{
    const double eps = epsilon_from_delta(0.003);
    EXPECT_NEAR(eps, std::numbers::e * 0.003, 2e-4);
    EXPECT_NEAR(delta_max(eps), 0.003, 1e-15);
    for (double d : {1e-5, 0.01, 0.1}) EXPECT_NEAR(delta_max(epsilon_from_delta(d)) / d, 1.0, 1e-13);
}

TEST(Perturbation, ExtremumLocation)
{
    for (double eps : {0.008, 0.1, -0.05}) {
        const SurvivalFn g = perturb_sf(unit_exponential, eps);
        double best = 0.0, where = 0.0;
        for (int i = 1; i < 200000; ++i) {
            const double v = i * 1e-4;
            const double d = std::abs(unit_exponential(v) - g(v));
            if (d > best) best = d, where = v;
        }
        EXPECT_NEAR(best, std::abs(delta_max(eps)), 1e-9) << eps;
        EXPECT_NEAR(unit_exponential(where), std::pow(1.0 / (1.0 + eps), 1.0 / eps), 2e-4) << eps;
    }
}

TEST(PowerStudy, GrossPerturbationHasFullPower)
{
    const PowerStudyResult r = power_study(exponential_config(10000, 46), unit_exponential, 0.05, 400, 2);
    EXPECT_EQ(r.rejections, 2);
    EXPECT_EQ(r.power, 1.0);
    EXPECT_EQ(r.mean_statistics.size(), 2u);
}
