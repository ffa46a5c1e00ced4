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

// OpenMP kernels against their serial references on the reference scenario.

#include "gammaclutter/fpm_mc.hpp"
#include "gammaclutter/gof_stats.hpp"
#include "gammaclutter/texture.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

gcl::ScenarioParams reference() { return gcl::ScenarioParams::gauss_markov(10, gcl::Kappa{2}, 5.0, 0.9, 2.0, 0.95, 0.75); }

std::vector<double> grid(int points)
{
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) v[i] = 30.0 * (i + 1) / points;
    return v;
}

const gcl::CompoundModel &model()
{
    static const gcl::CompoundModel m(reference(), gcl::Method::EffSdp);
    return m;
}

gcl::McConfig mc_config(std::int64_t n)
{
    gcl::McConfig config;
    config.n_samples = n;
    config.seed = 7;
    config.params = reference();
    return config;
}

void BM_SurvivalGrid(benchmark::State &state)
{
    const auto v = grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(model().survival_grid(v));
}

void BM_SurvivalGridSerial(benchmark::State &state)
{
    const auto v = grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(model().survival_grid_serial(v));
}

void BM_SimulateRaw(benchmark::State &state)
{
    const auto config = mc_config(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gcl::simulate_raw(config));
}

void BM_SimulateRawSerial(benchmark::State &state)
{
    const auto config = mc_config(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gcl::simulate_raw_serial(config));
}

// Tabulated once, outside the timed loop, so the replicate loop dominates.
const gcl::SurvivalFn &tabulated_sf()
{
    static const gcl::SurvivalCurve curve = gcl::SurvivalCurve::tabulate(model(), 80.0, 1000);
    static const gcl::SurvivalFn sf = [](double v) { return curve(v); };
    return sf;
}

void BM_KsReplicates(benchmark::State &state)
{
    const auto config = mc_config(2000);
    const auto &sf = tabulated_sf();
    for (auto _ : state)
        benchmark::DoNotOptimize(gcl::ks_replicates(config, sf, static_cast<int>(state.range(0))));
}

void BM_KsReplicatesSerial(benchmark::State &state)
{
    const auto config = mc_config(2000);
    const auto &sf = tabulated_sf();
    for (auto _ : state)
        benchmark::DoNotOptimize(gcl::ks_replicates_serial(config, sf, static_cast<int>(state.range(0))));
}

} // namespace

BENCHMARK(BM_SurvivalGrid)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SurvivalGridSerial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateRaw)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateRawSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KsReplicates)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KsReplicatesSerial)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
