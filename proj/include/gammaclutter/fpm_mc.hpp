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
#include "gammaclutter/philox.hpp"
#include "gammaclutter/scenario.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gcl {

// Marsaglia polar normal; consumes uniforms from `rng` only.
double sample_normal(RandomStream &rng);
// Gamma(shape, scale) by Marsaglia-Tsang; shape < 1 uses G(shape + 1) U^(1/shape).
double sample_gamma(RandomStream &rng, double shape, double scale);
// Two-sided Nakagami amplitude: sign * sqrt(G), G ~ Gamma(kappa/2, 2/kappa);
// infinite kappa gives a Rademacher sign. Signs and magnitudes use separate streams.
double sample_two_sided_nakagami(RandomStream &sign_rng, RandomStream &magnitude_rng, Kappa kappa);

enum class TargetSampler {
    Nakagami, // sign times sqrt of a gamma variate
    Gaussian, // plain normal draws (kappa = 1 only)
};

struct McConfig {
    std::int64_t n_samples = 10000;
    std::uint64_t seed = 1;
    ScenarioParams params;
    bool antithetic = false; // odd samples mirror the uniforms of their even partner
    TargetRotation rotation = TargetRotation::ClutterAligned;
    TargetSampler target = TargetSampler::Nakagami;
};

struct EmpiricalDistribution {
    std::vector<double> sorted_samples;
    std::int64_t n = 0;
};

// Quadrature components of one draw, indexed [channel][pulse].
struct DrawComponents {
    double texture = 1.0;
    std::array<std::vector<double>, 2> noise, clutter, target;
    double power = 0.0; // (1/2M) sum |sqrt(1-q) H + sqrt(q U) Xc + sqrt(S) Xs|^2
};

// Precomputed loading matrices for one scenario.
class ReturnSimulator {
public:
    explicit ReturnSimulator(const McConfig &config);

    const McConfig &config() const { return config_; }
    DrawComponents draw(std::int64_t index) const;
    double draw_power(std::int64_t index) const;

private:
    McConfig config_;
    bool clutter_ar1_ = false;
    double rho_c_ = 0.0;
    Matrix clutter_loading_t_; // X_c = L_c^T H
    Matrix target_loading_t_;  // X_s = L_s^T Y
};

// Powers in sample-index order. OpenMP and serial variants produce identical vectors.
std::vector<double> simulate_raw(const McConfig &config);
std::vector<double> simulate_raw_serial(const McConfig &config);

EmpiricalDistribution simulate_returns(const McConfig &config);
// The kappa = 1 target drawn as a plain normal instead of sign * sqrt(gamma).
EmpiricalDistribution simulate_gaussian_target_channel(const McConfig &config);

// (# samples > v) / n.
double empirical_survival(const EmpiricalDistribution &dist, double v);

// Seed of replicate r derived from a base seed.
std::uint64_t replicate_seed(std::uint64_t seed, std::int64_t replicate);

// Little-endian dump: "FPMC", u32 version (1), u64 n, u32 M, u64 seed, n doubles.
void write_sample_dump(const std::string &path, const std::vector<double> &samples, int pulses, std::uint64_t seed);
struct SampleDump {
    std::vector<double> samples;
    int pulses = 0;
    std::uint64_t seed = 0;
};
SampleDump read_sample_dump(const std::string &path);

} // namespace gcl
