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

#include "gammaclutter/corrmodel.hpp"

#include "gammaclutter/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gcl {

namespace {

constexpr int kSweepBudget = 50;
constexpr double kClampTolerance = 1e-10;

bool is_exact_identity(const Matrix &m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != (i == j ? 1.0 : 0.0)) return false;
    return true;
}

bool is_all_ones(const Matrix &m)
{
    return m.size() > 0 && (m.array() == 1.0).all();
}

void check_square_symmetric(const Matrix &m)
{
    if (m.rows() != m.cols() || m.rows() == 0)
        fail(ErrorCode::DimensionMismatch, "matrix must be square and non-empty");
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i)) fail(ErrorCode::InvalidCorrelation, "matrix is not symmetric");
}

// In-place cyclic Jacobi on a (copy of a) symmetric matrix. On return the diagonal
// holds the eigenvalues; if v is non-null its columns hold the eigenvectors.
void jacobi(Matrix &a, Matrix *v)
{
    const Eigen::Index n = a.rows();
    if (v) v->setIdentity(n, n);
    for (int sweep = 0;; ++sweep) {
        double off = 0.0, total = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) {
                const double x = a(i, j) * a(i, j);
                total += x;
                if (i != j) off += x;
            }
        if (off == 0.0 || off <= 1e-32 * total) return;
        if (sweep == kSweepBudget)
            fail(ErrorCode::NoConvergence, "Jacobi eigen-solver exceeded its sweep budget");

        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p), aqq = a(q, q);
                const double g = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150)
                    t = 0.5 / theta;
                else
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                if (v) {
                    for (Eigen::Index k = 0; k < n; ++k) {
                        const double vkp = (*v)(k, p), vkq = (*v)(k, q);
                        (*v)(k, p) = c * vkp - s * vkq;
                        (*v)(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
}

double clamp_eigenvalue(double x, double scale)
{
    if (x >= 0.0) return x;
    if (x >= -kClampTolerance * scale) return 0.0;
    fail(ErrorCode::InvalidCorrelation,
         "matrix is not positive semi-definite (eigenvalue " + std::to_string(x) + ")");
}

void apply_sign_convention(Matrix &rotation)
{
    for (Eigen::Index r = 0; r < rotation.rows(); ++r) {
        const double biggest = rotation.row(r).cwiseAbs().maxCoeff();
        for (Eigen::Index k = 0; k < rotation.cols(); ++k) {
            if (std::abs(rotation(r, k)) >= biggest * (1.0 - 1e-9)) {
                if (rotation(r, k) < 0.0) rotation.row(r) *= -1.0;
                break;
            }
        }
    }
}

EigenSystem rank_one_system(Eigen::Index n)
{
    EigenSystem es;
    es.eigenvalues = Vector::Zero(n);
    es.eigenvalues(n - 1) = static_cast<double>(n);
    es.rotation = Matrix::Zero(n, n);
    // Helmert contrasts span the null space of the all-ones matrix.
    for (Eigen::Index k = 1; k < n; ++k) {
        const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
        for (Eigen::Index j = 0; j < k; ++j) es.rotation(k - 1, j) = 1.0 / norm;
        es.rotation(k - 1, k) = -static_cast<double>(k) / norm;
    }
    es.rotation.row(n - 1).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    apply_sign_convention(es.rotation);
    return es;
}

} // namespace

CorrelationSpec::CorrelationSpec(Kind kind, double rho, std::vector<double> row)
    : kind_(kind), rho_(rho), row_(std::move(row))
{
}

CorrelationSpec CorrelationSpec::gauss_markov(double rho, int pulses)
{
    if (pulses < 1) fail(ErrorCode::InvalidParameter, "pulse count must be >= 1");
    if (!(rho >= 0.0 && rho <= 1.0))
        fail(ErrorCode::InvalidCorrelation, "Gauss-Markov coefficient must lie in [0, 1]");
    std::vector<double> row(static_cast<std::size_t>(pulses));
    double x = 1.0;
    for (auto &r : row) {
        r = x;
        x *= rho;
    }
    return CorrelationSpec(Kind::GaussMarkov, rho, std::move(row));
}

CorrelationSpec CorrelationSpec::toeplitz(std::vector<double> first_row)
{
    if (first_row.empty()) fail(ErrorCode::InvalidParameter, "Toeplitz row must be non-empty");
    if (first_row[0] != 1.0) fail(ErrorCode::InvalidCorrelation, "Toeplitz row must start with 1");
    for (double r : first_row)
        if (!(std::abs(r) <= 1.0)) fail(ErrorCode::InvalidCorrelation, "Toeplitz entries must lie in [-1, 1]");
    CorrelationSpec spec(Kind::ToeplitzFirstRow, 0.0, std::move(first_row));
    // PSD check; symmetric_eigenvalues clamps or throws.
    if (!spec.is_identity() && !spec.is_fully_correlated()) symmetric_eigenvalues(build_matrix(spec));
    return spec;
}

double CorrelationSpec::rho() const
{
    if (kind_ != Kind::GaussMarkov) fail(ErrorCode::InvalidParameter, "rho() requires a Gauss-Markov spec");
    return rho_;
}

bool CorrelationSpec::is_identity() const
{
    return std::all_of(row_.begin() + 1, row_.end(), [](double r) { return r == 0.0; });
}

bool CorrelationSpec::is_fully_correlated() const
{
    return std::all_of(row_.begin(), row_.end(), [](double r) { return r == 1.0; });
}

Matrix build_matrix(const CorrelationSpec &spec)
{
    const int n = spec.pulses();
    const auto &row = spec.first_row();
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(std::abs(i - j))];
    return m;
}

EigenSystem jacobi_eigensystem(const Matrix &matrix)
{
    check_square_symmetric(matrix);
    const Eigen::Index n = matrix.rows();
    Matrix a = matrix;
    Matrix v;
    jacobi(a, &v);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

    EigenSystem es;
    es.eigenvalues.resize(n);
    es.rotation.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index k = order[static_cast<std::size_t>(r)];
        es.eigenvalues(r) = a(k, k);
        es.rotation.row(r) = v.col(k).transpose();
    }
    apply_sign_convention(es.rotation);
    return es;
}

EigenSystem eigen_decompose(const Matrix &matrix)
{
    check_square_symmetric(matrix);
    const Eigen::Index n = matrix.rows();
    if (is_exact_identity(matrix)) {
        EigenSystem es;
        es.eigenvalues = Vector::Ones(n);
        es.rotation = Matrix::Identity(n, n);
        es.degenerate_identity = true;
        return es;
    }
    if (is_all_ones(matrix)) return rank_one_system(n);

    EigenSystem es = jacobi_eigensystem(matrix);
    const double scale = std::max<double>(1.0, matrix.trace());
    for (Eigen::Index r = 0; r < n; ++r) es.eigenvalues(r) = clamp_eigenvalue(es.eigenvalues(r), scale);
    return es;
}

EigenSystem eigen_decompose(const CorrelationSpec &spec) { return eigen_decompose(build_matrix(spec)); }

Vector symmetric_eigenvalues(const Matrix &matrix)
{
    check_square_symmetric(matrix);
    const Eigen::Index n = matrix.rows();
    if (is_exact_identity(matrix)) return Vector::Ones(n);
    if (is_all_ones(matrix)) {
        Vector g = Vector::Zero(n);
        g(n - 1) = static_cast<double>(n);
        return g;
    }
    Matrix a = matrix;
    jacobi(a, nullptr);
    Vector g = a.diagonal();
    std::sort(g.data(), g.data() + n);
    const double scale = std::max<double>(1.0, matrix.trace());
    for (Eigen::Index i = 0; i < n; ++i) g(i) = clamp_eigenvalue(g(i), scale);
    return g;
}

EigenSystem align_identity_rotation(const EigenSystem &target, const EigenSystem &clutter)
{
    if (!target.degenerate_identity) return target;
    if (clutter.pulses() != target.pulses()) fail(ErrorCode::DimensionMismatch, "eigen-system sizes differ");
    EigenSystem out = target;
    out.rotation = clutter.rotation;
    return out;
}

Matrix loading_matrix(const EigenSystem &es)
{
    const Eigen::Index n = es.pulses();
    Matrix l(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const double g = es.eigenvalues(r);
        if (g < 0.0) fail(ErrorCode::NegativeEigenvalue, "loading matrix needs non-negative eigenvalues");
        l.row(r) = std::sqrt(g) * es.rotation.row(r);
    }
    return l;
}

double effective_looks(const Matrix &c)
{
    if (c.rows() != c.cols()) fail(ErrorCode::DimensionMismatch, "matrix must be square");
    const double m = static_cast<double>(c.rows());
    return m * m / c.squaredNorm();
}

double cross_looks(const Matrix &cc, const Matrix &cs)
{
    if (cc.rows() != cs.rows() || cc.cols() != cs.cols() || cc.rows() != cc.cols())
        fail(ErrorCode::DimensionMismatch, "cross_looks needs equal square matrices");
    const double m = static_cast<double>(cc.rows());
    // Tr{Cc Cs} for symmetric matrices is the entrywise inner product.
    return m * m / cc.cwiseProduct(cs).sum();
}

double gm_effective_looks_closed_form(double rho, int pulses)
{
    const double m = static_cast<double>(pulses);
    if (rho <= 0.0) return m;
    if (rho >= 1.0) return 1.0;
    const double r2 = rho * rho;
    const double one_minus = 1.0 - r2;
    const double tail = -std::expm1(2.0 * m * std::log(rho)); // 1 - rho^{2M}
    return m / (1.0 + 2.0 * r2 / one_minus * (1.0 - tail / (m * one_minus)));
}

DmgSpectrum dmg_spectrum(double looks, int pulses)
{
    const double m = static_cast<double>(pulses);
    const double slack = 1e-12 * m;
    if (pulses < 1 || !(looks >= 1.0 - slack && looks <= m + slack))
        fail(ErrorCode::InvalidLooks, "effective looks must lie in [1, M]");
    DmgSpectrum out;
    if (pulses == 1) {
        out.eigenvalues = Vector::Ones(1);
        return out;
    }
    const double ratio = std::clamp((m / looks - 1.0) / (m - 1.0), 0.0, 1.0);
    out.rho_eff = std::sqrt(ratio);
    out.eigenvalues = Vector::Constant(pulses, 1.0 - out.rho_eff);
    out.eigenvalues(pulses - 1) = 1.0 - out.rho_eff + m * out.rho_eff;
    return out;
}

} // namespace gcl
