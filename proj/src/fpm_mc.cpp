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

#include "gammaclutter/fpm_mc.hpp"

#include "gammaclutter/corrmodel.hpp"
#include "gammaclutter/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace gcl {

namespace {

enum Role : std::uint32_t { kTexture = 1, kNoise = 2, kClutter = 3, kSign = 4, kMagnitude = 5, kGaussTarget = 6 };

constexpr std::uint32_t stream_id(Role role, int channel) { return (static_cast<std::uint32_t>(role) << 8) | static_cast<std::uint32_t>(channel); }

template <class T>
void put_le(std::ostream &os, T value)
{
    std::array<unsigned char, sizeof(T)> bytes{};
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    os.write(reinterpret_cast<const char *>(bytes.data()), sizeof(T));
}

template <class T>
T get_le(std::istream &is)
{
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!is.read(reinterpret_cast<char *>(bytes.data()), sizeof(T))) fail(ErrorCode::Io, "truncated sample dump");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

} // namespace

double sample_normal(RandomStream &rng)
{
    for (;;) {
        const double x = 2.0 * rng.uniform() - 1.0;
        const double y = 2.0 * rng.uniform() - 1.0;
        const double r2 = x * x + y * y;
        if (r2 > 0.0 && r2 < 1.0) return x * std::sqrt(-2.0 * std::log(r2) / r2);
    }
}

double sample_gamma(RandomStream &rng, double shape, double scale)
{
    if (!(shape > 0.0) || !(scale > 0.0)) fail(ErrorCode::InvalidParameter, "gamma sampler needs positive shape and scale");
    if (shape < 1.0) {
        const double g = sample_gamma(rng, shape + 1.0, scale);
        return g * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

double sample_two_sided_nakagami(RandomStream &sign_rng, RandomStream &magnitude_rng, Kappa kappa)
{
    const double sign = sign_rng.uniform() < 0.5 ? -1.0 : 1.0;
    if (kappa.is_infinite()) return sign;
    const double k = kappa.as_double();
    return sign * std::sqrt(sample_gamma(magnitude_rng, 0.5 * k, 2.0 / k));
}

ReturnSimulator::ReturnSimulator(const McConfig &config) : config_(config)
{
    config_.params.validate();
    if (config_.n_samples < 1) fail(ErrorCode::InvalidParameter, "n_samples must be >= 1");
    if (config_.target == TargetSampler::Gaussian && config_.params.kappa != Kappa(1))
        fail(ErrorCode::InvalidParameter, "the Gaussian target sampler requires kappa = 1");
    const ScenarioParams &p = config_.params;
    const EigenSystem clutter = eigen_decompose(p.spec_c);
    if (p.spec_c.kind() == CorrelationSpec::Kind::GaussMarkov) {
        clutter_ar1_ = true;
        rho_c_ = p.spec_c.rho();
    } else {
        clutter_loading_t_ = loading_matrix(clutter).transpose();
    }
    EigenSystem target = eigen_decompose(p.spec_s);
    if (config_.rotation == TargetRotation::ClutterAligned) target = align_identity_rotation(target, clutter);
    target_loading_t_ = loading_matrix(target).transpose();
}

DrawComponents ReturnSimulator::draw(std::int64_t index) const
{
    const ScenarioParams &p = config_.params;
    const int m = p.M;
    const std::uint64_t seed = config_.seed;
    const bool mirror = config_.antithetic && (index & 1);
    const std::uint64_t sample = static_cast<std::uint64_t>(config_.antithetic ? (index & ~std::int64_t{1}) : index);

    DrawComponents out;
    if (!std::isinf(p.nu)) {
        RandomStream rng(seed, sample, stream_id(kTexture, 0), mirror);
        out.texture = sample_gamma(rng, p.nu, 1.0 / p.nu);
    }
    const double wn = std::sqrt(1.0 - p.q), wc = std::sqrt(p.q * out.texture), ws = std::sqrt(p.S);
    Vector y(m);
    double acc = 0.0;
    for (int ch = 0; ch < 2; ++ch) {
        auto &noise = out.noise[static_cast<std::size_t>(ch)];
        auto &clutter = out.clutter[static_cast<std::size_t>(ch)];
        auto &target = out.target[static_cast<std::size_t>(ch)];
        noise.resize(static_cast<std::size_t>(m));
        clutter.resize(static_cast<std::size_t>(m));
        target.resize(static_cast<std::size_t>(m));

        RandomStream noise_rng(seed, sample, stream_id(kNoise, ch), mirror);
        for (double &x : noise) x = sample_normal(noise_rng);

        RandomStream clutter_rng(seed, sample, stream_id(kClutter, ch), mirror);
        if (clutter_ar1_) {
            const double innov = std::sqrt(std::max(0.0, 1.0 - rho_c_ * rho_c_));
            clutter[0] = sample_normal(clutter_rng);
            for (int i = 1; i < m; ++i)
                clutter[static_cast<std::size_t>(i)] = rho_c_ * clutter[static_cast<std::size_t>(i - 1)] + innov * sample_normal(clutter_rng);
        } else {
            Vector h(m);
            for (int i = 0; i < m; ++i) h(i) = sample_normal(clutter_rng);
            const Vector x = clutter_loading_t_ * h;
            for (int i = 0; i < m; ++i) clutter[static_cast<std::size_t>(i)] = x(i);
        }

        if (config_.target == TargetSampler::Gaussian) {
            RandomStream rng(seed, sample, stream_id(kGaussTarget, ch), mirror);
            for (int i = 0; i < m; ++i) y(i) = sample_normal(rng);
        } else {
            RandomStream sign_rng(seed, sample, stream_id(kSign, ch), mirror);
            RandomStream mag_rng(seed, sample, stream_id(kMagnitude, ch), mirror);
            for (int i = 0; i < m; ++i) y(i) = sample_two_sided_nakagami(sign_rng, mag_rng, p.kappa);
        }
        const Vector xs = target_loading_t_ * y;
        for (int i = 0; i < m; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            target[k] = xs(i);
            const double r = wn * noise[k] + wc * clutter[k] + ws * target[k];
            acc += r * r;
        }
    }
    out.power = acc / (2.0 * m);
    return out;
}

double ReturnSimulator::draw_power(std::int64_t index) const { return draw(index).power; }

std::vector<double> simulate_raw(const McConfig &config)
{
    const ReturnSimulator sim(config);
    std::vector<double> out(static_cast<std::size_t>(config.n_samples));
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < config.n_samples; ++i) out[static_cast<std::size_t>(i)] = sim.draw_power(i);
    return out;
}

std::vector<double> simulate_raw_serial(const McConfig &config)
{
    const ReturnSimulator sim(config);
    std::vector<double> out(static_cast<std::size_t>(config.n_samples));
    for (std::int64_t i = 0; i < config.n_samples; ++i) out[static_cast<std::size_t>(i)] = sim.draw_power(i);
    return out;
}

EmpiricalDistribution simulate_returns(const McConfig &config)
{
    EmpiricalDistribution d;
    d.sorted_samples = simulate_raw(config);
    std::sort(d.sorted_samples.begin(), d.sorted_samples.end());
    d.n = config.n_samples;
    return d;
}

EmpiricalDistribution simulate_gaussian_target_channel(const McConfig &config)
{
    McConfig c = config;
    c.target = TargetSampler::Gaussian;
    return simulate_returns(c);
}

double empirical_survival(const EmpiricalDistribution &dist, double v)
{
    if (dist.sorted_samples.empty()) fail(ErrorCode::InvalidParameter, "empty sample");
    const auto it = std::upper_bound(dist.sorted_samples.begin(), dist.sorted_samples.end(), v);
    return static_cast<double>(dist.sorted_samples.end() - it) / static_cast<double>(dist.sorted_samples.size());
}

std::uint64_t replicate_seed(std::uint64_t seed, std::int64_t replicate)
{
    return mix_seed(seed, static_cast<std::uint64_t>(replicate));
}

void write_sample_dump(const std::string &path, const std::vector<double> &samples, int pulses, std::uint64_t seed)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    os.write("FPMC", 4);
    put_le<std::uint32_t>(os, 1);
    put_le<std::uint64_t>(os, samples.size());
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(pulses));
    put_le<std::uint64_t>(os, seed);
    for (double x : samples) put_le<double>(os, x);
    if (!os) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

SampleDump read_sample_dump(const std::string &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(ErrorCode::Io, "cannot open '" + path + "'");
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "FPMC", 4) != 0) fail(ErrorCode::Io, "not a sample dump");
    if (get_le<std::uint32_t>(is) != 1) fail(ErrorCode::Io, "unsupported dump version");
    const auto n = get_le<std::uint64_t>(is);
    SampleDump d;
    d.pulses = static_cast<int>(get_le<std::uint32_t>(is));
    d.seed = get_le<std::uint64_t>(is);
    d.samples.resize(n);
    for (auto &x : d.samples) x = get_le<double>(is);
    return d;
}

} // namespace gcl
