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

#include <memory>
#include <vector>

namespace gcl {

// Nodes ascending; weights normalized to sum 1 (the rule integrates against the
// probability density proportional to the weight function).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Golub-Welsch on the Jacobi matrix of generalized Laguerre polynomials:
// weight t^alpha e^{-t} on (0, inf), alpha > -1. Rules are cached per (alpha, n).
std::shared_ptr<const QuadratureRule> generalized_laguerre(double alpha, int n);

// Unit-mean gamma texture with shape nu: nodes u = t / nu from the alpha = nu - 1 rule.
// nu = infinity gives the single node u = 1.
struct TextureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
    double nu = 0.0;
};

inline constexpr int kDefaultTextureOrder = 32;
inline constexpr int kMaxTextureOrder = 256;

// Throws InvalidShape (nu <= 0) or OrderTooLarge (order > 256).
TextureRule gamma_texture_rule(double nu, int order = kDefaultTextureOrder);

// As gamma_texture_rule, but heavy-tailed textures (nu < 0.5) get order >= 128
// and a warning on stderr. Order doubling against a survival tolerance lives in
// the compound-survival layer, which can evaluate the integrand.
TextureRule adaptive_texture_rule(double nu, int order = kDefaultTextureOrder);

// Exact raw moment E[U^k] = (nu)_k / nu^k of the unit-mean gamma law.
double gamma_texture_moment(double nu, int k);

} // namespace gcl
