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
#include "gammaclutter/fpm_mc.hpp"
#include "gammaclutter/gof_stats.hpp"

#include <gtest/gtest.h>

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace gcl;

namespace {

struct SampleMoments {
    double mean = 0.0, variance = 0.0, mean_se = 0.0, variance_se = 0.0;
};

SampleMoments moments(const std::vector<double> &x)
{
    const double n = static_cast<double>(x.size());
    SampleMoments r;
    for (double v : x) r.mean += v;
    r.mean /= n;
    double m4 = 0.0;
    for (double v : x) {
        const double d = v - r.mean;
        r.variance += d * d;
        m4 += d * d * d * d;
    }
    r.variance /= n;
    m4 /= n;
    r.mean_se = std::sqrt(r.variance / n);
    r.variance_se = std::sqrt((m4 - r.variance * r.variance) / n);
    return r;
}

McConfig config(const ScenarioParams &p, std::int64_t n, std::uint64_t seed)
{
    McConfig c;
    c.params = p;
    c.n_samples = n;
    c.seed = seed;
    return c;
}

} // namespace

TEST(Philox, KnownAnswerVectors)
{
    using P = Philox4x32;
    EXPECT_EQ(P::block({0, 0, 0, 0}, {0, 0}), (P::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(P::block({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}),
              (P::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(P::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}),
              (P::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, UniformOpenIntervalAndComplement)
{
    RandomStream a(5, 17, 3), b(5, 17, 3, true);
    for (int i = 0; i < 10000; ++i) {
        const double u = a.uniform(), w = b.uniform();
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_EQ(u + w, 1.0);
    }
    RandomStream c(5, 18, 3);
    RandomStream d(5, 17, 3);
    EXPECT_NE(c.uniform(), d.uniform());
}

TEST(Samplers, GammaMoments)
{
    for (double shape : {0.3, 0.5, 1.0, 2.5, 20.0}) {
        RandomStream rng(9, 0, static_cast<std::uint32_t>(shape * 10));
        std::vector<double> x(200000);
        for (double &v : x) v = sample_gamma(rng, shape, 1.0 / shape);
        const SampleMoments m = moments(x);
        EXPECT_LT(std::abs(m.mean - 1.0), 4.0 * m.mean_se) << shape;
        EXPECT_LT(std::abs(m.variance - 1.0 / shape), 4.0 * m.variance_se) << shape;
    }
}

TEST(Samplers, TwoSidedNakagami)
{
    for (Kappa kappa : {Kappa(1), Kappa(2), Kappa(5), Kappa::infinite()}) {
        RandomStream sign(3, 0, 1), mag(3, 0, 2);
        const int n = 1000000;
        std::vector<double> y(n), y2(n);
        for (int i = 0; i < n; ++i) {
            y[i] = sample_two_sided_nakagami(sign, mag, kappa);
            y2[i] = y[i] * y[i];
        }
        const SampleMoments m = moments(y), m2 = moments(y2);
        EXPECT_LT(std::abs(m.mean), 4.0 / std::sqrt(n)) << kappa.to_string();
        if (kappa.is_infinite())
            EXPECT_EQ(m2.variance, 0.0);
        else
            EXPECT_LT(std::abs(m2.mean - 1.0), 3.0 * m2.mean_se) << kappa.to_string();
    }
}

TEST(Simulation, PureNoiseMoments)
{
    const int M = 4;
    const auto x = simulate_raw(config(ScenarioParams::gauss_markov(M, Kappa(1), 0.0, 0.0, kInfiniteShape, 0.0, 0.0), 100000, 3));
    const SampleMoments m = moments(x);
    EXPECT_LT(std::abs(m.mean - 1.0), 4.0 / std::sqrt(M * 1e5));
    EXPECT_LT(std::abs(m.variance - 1.0 / M), 3.0 * m.variance_se);
}

TEST(Simulation, FullScenarioMoments)
{
    for (int kappa : {1, 2, 3}) {
        const auto p = ScenarioParams::gauss_markov(10, Kappa(kappa), 5.0, 0.9, 2.0, 0.95, 0.75);
        const SampleMoments m = moments(simulate_raw(config(p, 200000, 10 + kappa)));
        const MomentReport r = analytic_moments(p);
        EXPECT_LT(std::abs(m.mean - r.mean), 3.0 * m.mean_se) << kappa;
        EXPECT_LT(std::abs(m.variance - r.variance), 3.0 * m.variance_se) << kappa;
    }
}

TEST(Simulation, CompoundClutterVariance)
{
    // S = 0, q = 1: variance zeta / L.
    const auto p = ScenarioParams::gauss_markov(8, Kappa(1), 0.0, 1.0, 3.0, 0.0, 0.6);
    const SampleMoments m = moments(simulate_raw(config(p, 200000, 8)));
    const MomentReport r = analytic_moments(p);
    EXPECT_NEAR(r.variance, r.zeta / r.looks_clutter, 1e-14);
    EXPECT_LT(std::abs(m.variance - r.variance), 3.0 * m.variance_se);
}

TEST(Simulation, ClutterLagOneAutocorrelation)
{
    const double rho = 0.75;
    const int M = 64, n = 100000;
    const ReturnSimulator sim(config(ScenarioParams::gauss_markov(M, Kappa(1), 0.0, 1.0, kInfiniteShape, 0.0, rho), n, 4));
    std::vector<double> prod;
    prod.reserve(static_cast<std::size_t>(n) * (M - 1));
    for (int i = 0; i < n; ++i) {
        const DrawComponents d = sim.draw(i);
        for (int k = 1; k < M; ++k) prod.push_back(d.clutter[0][k] * d.clutter[0][k - 1]);
    }
    const SampleMoments m = moments(prod);
    // Adjacent products within a draw are correlated; the draw-level error bar is conservative.
    std::vector<double> per_draw(n);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k < M - 1; ++k) s += prod[static_cast<std::size_t>(i) * (M - 1) + k];
        per_draw[i] = s / (M - 1);
    }
    const SampleMoments md = moments(per_draw);
    EXPECT_LT(std::abs(m.mean - rho), 3.0 * md.mean_se);
}

TEST(Simulation, TargetCovarianceMatchesCorrelation)
{
    const int M = 8, n = 100000;
    const auto p = ScenarioParams::gauss_markov(M, Kappa(2), 1.0, 0.0, kInfiniteShape, 0.8, 0.0);
    const ReturnSimulator sim(config(p, n, 6));
    const Matrix cs = build_matrix(p.spec_s);
    std::vector<std::vector<double>> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[i] = sim.draw(i).target[1];
    for (int a = 0; a < M; ++a)
        for (int b = a; b < M; ++b) {
            std::vector<double> prod(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) prod[i] = xs[i][a] * xs[i][b];
            const SampleMoments m = moments(prod);
            EXPECT_LT(std::abs(m.mean - cs(a, b)), 3.5 * m.mean_se) << a << " " << b;
        }
}

TEST(Simulation, NakagamiRouteMatchesNormalRoute)
{
    const auto p = ScenarioParams::gauss_markov(5, Kappa(1), 4.0, 0.5, 3.0, 0.9, 0.5);
    McConfig c = config(p, 100000, 12);
    const EmpiricalDistribution a = simulate_returns(c);
    c.seed = 13;
    const EmpiricalDistribution b = simulate_gaussian_target_channel(c);
    // Two-sample KS statistic by merging the sorted samples.
    double d = 0.0;
    std::size_t i = 0, j = 0;
    const auto &x = a.sorted_samples, &y = b.sorted_samples;
    while (i < x.size() && j < y.size()) {
        const double t = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= t) ++i;
        while (j < y.size() && y[j] <= t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
    }
    const double ne = 0.5 * x.size();
    EXPECT_GT(kolmogorov_sf(std::sqrt(ne) * d), 0.01) << d;
    c.params.kappa = Kappa(2);
    EXPECT_THROW(simulate_gaussian_target_channel(c), Error);
}

TEST(Simulation, GoldenVector)
{
    McConfig c = config(ScenarioParams::gauss_markov(2, Kappa(2), 3.0, 0.5, 2.0, 0.9, 0.6), 8, 42);
    const std::vector<double> golden{6.6278848871896079, 4.721220189127088,  4.7320629805941792, 0.16626221854381085,
                                     4.5626796470274744, 0.20495300032427999, 3.0464022088553744, 6.1260471188708312};
    const auto x = simulate_raw(c);
    ASSERT_EQ(x.size(), golden.size());
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], golden[i]) << i;
}

TEST(Simulation, BitIdenticalAcrossThreadCounts)
{
    const McConfig c = config(ScenarioParams::gauss_markov(10, Kappa(2), 5.0, 0.9, 2.0, 0.95, 0.75), 5000, 77);
    const auto serial = simulate_raw_serial(c);
    for (int threads : {1, 2, 4, 7}) {
        omp_set_num_threads(threads);
        EXPECT_EQ(simulate_raw(c), serial) << threads;
    }
    omp_set_num_threads(omp_get_num_procs());
    McConfig anti = c;
    anti.antithetic = true;
    EXPECT_EQ(simulate_raw(anti), simulate_raw_serial(anti));
    EXPECT_NE(simulate_raw(anti), serial);
}

TEST(Simulation, AntitheticPairsShareUniforms)
{
    McConfig c = config(ScenarioParams::gauss_markov(3, Kappa(1), 0.0, 0.0, kInfiniteShape, 0.0, 0.0), 4, 5);
    c.antithetic = true;
    const ReturnSimulator sim(c);
    // Mirrored uniforms flip the polar-method normals (u -> 1 - u maps 2u - 1 to its negative).
    const DrawComponents even = sim.draw(2), odd = sim.draw(3);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(even.noise[0][k], -odd.noise[0][k], 1e-12);
}

TEST(Empirical, CountingDefinition)
{
    EmpiricalDistribution d;
    d.sorted_samples = {1.0, 2.0, 2.0, 3.0, 5.0};
    d.n = 5;
    EXPECT_EQ(empirical_survival(d, 0.5), 1.0);
    EXPECT_EQ(empirical_survival(d, 5.0), 0.0);
    EXPECT_EQ(empirical_survival(d, 9.0), 0.0);
    EXPECT_DOUBLE_EQ(empirical_survival(d, 2.0), 2.0 / 5.0);
    EXPECT_DOUBLE_EQ(empirical_survival(d, 1.0), 4.0 / 5.0);
    EXPECT_THROW(empirical_survival(EmpiricalDistribution{}, 1.0), Error);
}

TEST(Empirical, SortedAndNonNegative)
{
    const auto d = simulate_returns(config(ScenarioParams::gauss_markov(3, Kappa(3), 2.0, 0.4, 1.0, 0.5, 0.5), 2000, 1));
    EXPECT_EQ(d.n, 2000);
    EXPECT_TRUE(std::is_sorted(d.sorted_samples.begin(), d.sorted_samples.end()));
    EXPECT_GE(d.sorted_samples.front(), 0.0);
}

TEST(Dump, RoundTrip)
{
    const auto path = (std::filesystem::temp_directory_path() / "gcl_dump_test.bin").string();
    const std::vector<double> x{0.5, 1.25, 3.0e-300, 7.0};
    write_sample_dump(path, x, 6, 0xDEADBEEFCAFEULL);
    const SampleDump d = read_sample_dump(path);
    EXPECT_EQ(d.samples, x);
    EXPECT_EQ(d.pulses, 6);
    EXPECT_EQ(d.seed, 0xDEADBEEFCAFEULL);
    {
        std::ifstream in(path, std::ios::binary);
        char magic[4];
        in.read(magic, 4);
        EXPECT_EQ(std::string(magic, 4), "FPMC");
    }
    {
        std::ofstream out(path, std::ios::binary);
        out << "JUNKJUNKJUNK";
    }
    EXPECT_THROW(read_sample_dump(path), Error);
    std::filesystem::remove(path);
    EXPECT_THROW(read_sample_dump(path), Error);
}
