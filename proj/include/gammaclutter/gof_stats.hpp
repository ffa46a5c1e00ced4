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

#include "gammaclutter/fpm_mc.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace gcl {

using SurvivalFn = std::function<double(double)>;

// sup |F_n - F| with F = 1 - sf, evaluated exactly at the order statistics.
// Throws NonMonotoneSF if sf increases by more than 1e-9 between samples.
double ks_statistic(const EmpiricalDistribution &samples, const SurvivalFn &sf);
double ks_statistic(const std::vector<double> &sorted_samples, const SurvivalFn &sf);

// Asymptotic Kolmogorov survival Q(x) = 2 sum (-1)^(k-1) exp(-2 k^2 x^2); the
// Jacobi-theta form is used below x = 1 where the alternating series is slow.
double kolmogorov_sf(double x);
// x with Q(x) = alpha (bisection).
double kolmogorov_critical_value(double alpha);
// sqrt(ln(2/alpha) / (2n)).
double dkw_epsilon(std::int64_t n, double alpha);
// Standard normal quantile: rational approximation plus one Halley step (~1e-15).
double normal_quantile(double p);

struct KSReport {
    double statistic = 0.0;
    std::int64_t n = 0;
    double p_value = 1.0; // Q(sqrt(n) D)
    double dkw_epsilon_at_alpha = 0.0;
    double alpha = 0.01;
    std::map<double, bool> reject_at;
};

KSReport ks_test(const EmpiricalDistribution &samples, const SurvivalFn &sf, double alpha = 0.01,
                 const std::vector<double> &levels = {0.01, 0.05, 0.1});

struct EnsembleOptions {
    double alpha = 0.01;
    int bootstrap = 1000;
    int grid_points = 200;
    int violation_run = 2; // consecutive grid points needed to reject
    std::uint64_t bootstrap_seed = 1;
};

// Distribution of K replicate KS statistics, with the curves used to judge it:
// the ensemble survival of the statistics, its bootstrap and Greenwood bands,
// the Kolmogorov curve Q(sqrt(n) x) and the DKW curve min(1, 2 exp(-2 n x^2)).
struct KSEnsemble {
    std::vector<double> statistics;
    std::int64_t n = 0;
    double alpha = 0.01;
    std::vector<double> grid;
    std::vector<double> ensemble_sf;
    std::vector<double> bootstrap_lower, bootstrap_upper;
    std::vector<double> greenwood_lower, greenwood_upper;
    std::vector<double> kolmogorov_curve;
    std::vector<double> dkw_curve;
    int longest_violation = 0; // grid run where the Greenwood lower edge exceeds the DKW curve
    bool reject = false;
    double mean_statistic = 0.0;
};

KSEnsemble build_ensemble(std::vector<double> statistics, std::int64_t n, const EnsembleOptions &opts = {});

// K independent first-principles runs (replicate seeds derived from base.seed),
// each reduced to its KS distance from sf. Parallel over replicates.
std::vector<double> ks_replicates(const McConfig &base, const SurvivalFn &sf, int replicates);
std::vector<double> ks_replicates_serial(const McConfig &base, const SurvivalFn &sf, int replicates);

KSEnsemble ks_ensemble(const McConfig &base, const SurvivalFn &sf, int replicates, const EnsembleOptions &opts = {});

nlohmann::json to_json(const KSEnsemble &ensemble);

// G(x) = sf(x)^(1 + eps).
SurvivalFn perturb_sf(SurvivalFn sf, double epsilon);
// sup |sf - G| = eps (1 / (1 + eps))^(1 + 1/eps), attained where sf = (1 + eps)^(-1/eps).
double delta_max(double epsilon);
double epsilon_from_delta(double delta);

struct PowerStudyResult {
    double epsilon = 0.0;
    int studies = 0;
    int rejections = 0;
    double power = 0.0;
    std::vector<double> mean_statistics; // per study
};

// Repeats the KS ensemble `studies` times against the perturbed survival and
// reports the rejection fraction.
PowerStudyResult power_study(const McConfig &base, const SurvivalFn &sf, double delta, int replicates, int studies,
                             const EnsembleOptions &opts = {});

} // namespace gcl
