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

#include "gammaclutter/quadrature.hpp"

#include "gammaclutter/corrmodel.hpp"
#include "gammaclutter/error.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <utility>

namespace gcl {

namespace {

// Eigen-decomposition of the shifted Jacobi matrix J - (alpha + 1) I; returns
// shifted nodes (node - alpha - 1) and normalized weights.
QuadratureRule golub_welsch_shifted(double alpha, int n)
{
    Matrix j = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        j(k, k) = 2.0 * k;
        if (k + 1 < n) {
            const double off = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
            j(k, k + 1) = off;
            j(k + 1, k) = off;
        }
    }
    const EigenSystem es = jacobi_eigensystem(j);

    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        const double w = es.rotation(k, 0) * es.rotation(k, 0);
        rule.weights[static_cast<std::size_t>(k)] = w;
        total += w;
    }
    for (int k = 0; k < n; ++k) {
        rule.nodes[static_cast<std::size_t>(k)] = es.eigenvalues(k);
        rule.weights[static_cast<std::size_t>(k)] /= total;
    }
    return rule;
}

} // namespace

std::shared_ptr<const QuadratureRule> generalized_laguerre(double alpha, int n)
{
    if (!(alpha > -1.0)) fail(ErrorCode::InvalidShape, "Laguerre parameter must exceed -1");
    if (n < 1) fail(ErrorCode::InvalidParameter, "quadrature order must be >= 1");
    static std::mutex mutex;
    static std::map<std::pair<double, int>, std::shared_ptr<const QuadratureRule>> cache;
    const auto key = std::make_pair(alpha, n);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    QuadratureRule shifted = golub_welsch_shifted(alpha, n);
    for (double &t : shifted.nodes) t += alpha + 1.0;
    auto rule = std::make_shared<const QuadratureRule>(std::move(shifted));
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, std::move(rule)).first->second;
}

TextureRule gamma_texture_rule(double nu, int order)
{
    if (!(nu > 0.0)) fail(ErrorCode::InvalidShape, "texture shape must be positive");
    if (order < 1) fail(ErrorCode::InvalidParameter, "texture order must be >= 1");
    if (order > kMaxTextureOrder) fail(ErrorCode::OrderTooLarge, "texture order exceeds 256");
    TextureRule rule;
    rule.nu = nu;
    if (std::isinf(nu)) {
        rule.order = 1;
        rule.nodes = {1.0};
        rule.weights = {1.0};
        return rule;
    }
    rule.order = order;
    // u = t / nu = 1 + (t - nu) / nu keeps full relative accuracy for large nu.
    static std::mutex mutex;
    static std::map<std::pair<double, int>, QuadratureRule> cache;
    QuadratureRule shifted;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find({nu, order});
        if (it != cache.end()) shifted = it->second;
    }
    if (shifted.nodes.empty()) {
        shifted = golub_welsch_shifted(nu - 1.0, order);
        std::lock_guard<std::mutex> lock(mutex);
        cache.emplace(std::make_pair(nu, order), shifted);
    }
    rule.nodes.resize(shifted.nodes.size());
    rule.weights = shifted.weights;
    for (std::size_t k = 0; k < shifted.nodes.size(); ++k) {
        rule.nodes[k] = 1.0 + shifted.nodes[k] / nu;
        if (!(rule.nodes[k] > 0.0)) rule.nodes[k] = std::ldexp(1.0, -1000); // rounding guard
    }
    return rule;
}

TextureRule adaptive_texture_rule(double nu, int order)
{
    if (nu < 0.5 && order < 128) {
        std::cerr << "warning: texture shape " << nu << " < 0.5; raising quadrature order to 128\n";
        order = 128;
    }
    return gamma_texture_rule(nu, order);
}

double gamma_texture_moment(double nu, int k)
{
    if (std::isinf(nu)) return 1.0;
    double m = 1.0;
    for (int j = 0; j < k; ++j) m *= (nu + j) / nu;
    return m;
}

} // namespace gcl
