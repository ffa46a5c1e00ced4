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

#include <Eigen/Dense>
#include <vector>

namespace gcl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Pulse-to-pulse correlation of a symmetric Toeplitz matrix with unit diagonal.
class CorrelationSpec {
public:
    enum class Kind { GaussMarkov, ToeplitzFirstRow };

    // [C]_{mn} = rho^{|m-n|}, rho in [0, 1].
    static CorrelationSpec gauss_markov(double rho, int pulses);
    // row[0] must be 1; entries in [-1, 1]; the realized matrix must be PSD.
    static CorrelationSpec toeplitz(std::vector<double> first_row);

    Kind kind() const { return kind_; }
    int pulses() const { return static_cast<int>(row_.size()); }
    double rho() const; // GaussMarkov only
    const std::vector<double> &first_row() const { return row_; }

    bool is_identity() const;
    bool is_fully_correlated() const;

private:
    CorrelationSpec(Kind kind, double rho, std::vector<double> row);
    Kind kind_;
    double rho_;
    std::vector<double> row_;
};

Matrix build_matrix(const CorrelationSpec &spec);

// Eigenvalues ascending; rows of `rotation` are the matching unit eigenvectors,
// so rotation^T * diag(eigenvalues) * rotation reproduces the matrix.
struct EigenSystem {
    Vector eigenvalues;
    Matrix rotation;
    // Exact identity input: the rotation is arbitrary, consumers may substitute
    // another system's rotation (see align_identity_rotation).
    bool degenerate_identity = false;

    int pulses() const { return static_cast<int>(eigenvalues.size()); }
};

// Cyclic Jacobi (50-sweep budget). Identity and all-ones inputs take exact paths.
// Each eigenvector's largest-magnitude component is made positive.
EigenSystem eigen_decompose(const Matrix &matrix);
EigenSystem eigen_decompose(const CorrelationSpec &spec);

// The raw Jacobi solver: any symmetric matrix, no special paths, no clamping.
EigenSystem jacobi_eigensystem(const Matrix &matrix);

// Same solver without accumulating the rotation; ascending. Correlation-matrix
// use: round-off negatives are clamped to 0, larger ones throw InvalidCorrelation.
Vector symmetric_eigenvalues(const Matrix &matrix);

// Returns `target` with its rotation replaced by `clutter`'s when `target` is
// flagged degenerate_identity; otherwise returns `target` unchanged.
EigenSystem align_identity_rotation(const EigenSystem &target, const EigenSystem &clutter);

// L = diag(sqrt(gamma)) * R, so that L^T L reproduces the source matrix.
Matrix loading_matrix(const EigenSystem &es);

// M^2 / Tr{C^2}
double effective_looks(const Matrix &c);
// M^2 / Tr{Cc Cs}
double cross_looks(const Matrix &cc, const Matrix &cs);
double gm_effective_looks_closed_form(double rho, int pulses);

struct DmgSpectrum {
    double rho_eff = 0.0;
    Vector eigenvalues; // (1 - rho') repeated M-1 times, then 1 - rho' + M rho'
};
DmgSpectrum dmg_spectrum(double looks, int pulses);

} // namespace gcl
