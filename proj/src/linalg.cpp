#include "aeod/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aeod {

namespace {

constexpr double kSymmetryTolerance = 1e-9;
constexpr double kJacobiRelTolerance = 1e-12;
constexpr int kMaxJacobiSweeps = 100;
constexpr double kCholeskyPivotFloor = 1e-12;
constexpr double kRankEpsFactor = 1e-10;

double off_diagonal_frobenius(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

double frobenius(const Matrix& a) {
    double s = 0.0;
    for (double x : a.data()) s += x * x;
    return std::sqrt(s);
}

} // namespace

Matrix covariance(const Matrix& data) {
    const std::size_t n = data.rows();
    const std::size_t m = data.cols();
    if (n < 2)
        throw DataError("covariance: need at least 2 rows, got " + std::to_string(n));

    const Vector mean = column_means(data);
    Matrix cov(m, m);
    Vector centered(m);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = data.row(i);
        for (std::size_t j = 0; j < m; ++j) centered[j] = row[j] - mean[j];
        // Upper triangle only; mirrored below so the result is exactly symmetric.
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = j; k < m; ++k)
                cov(j, k) += centered[j] * centered[k];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j; k < m; ++k) {
            cov(j, k) *= inv_n;
            cov(k, j) = cov(j, k);
        }
    return cov;
}

SymmetricEigen sym_eigen(const Matrix& a) {
    const std::size_t m = a.rows();
    if (m == 0 || a.cols() != m)
        throw ContractViolation("sym_eigen: input must be square and non-empty");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(a(i, j) - a(j, i)) > kSymmetryTolerance)
                throw ContractViolation("sym_eigen: input asymmetric at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");

    // Work on the symmetrized copy so round-off in the caller cannot drift.
    Matrix w(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            w(i, j) = 0.5 * (a(i, j) + a(j, i));

    Matrix v = Matrix::identity(m);
    const double norm = frobenius(w);
    const double target = kJacobiRelTolerance * norm;

    if (norm > 0.0 && m > 1) {
        bool converged = off_diagonal_frobenius(w) <= target;
        for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
            for (std::size_t p = 0; p + 1 < m; ++p) {
                for (std::size_t q = p + 1; q < m; ++q) {
                    const double apq = w(p, q);
                    // Rotations on entries already far below the target change
                    // nothing measurable; skip them.
                    if (std::abs(apq) < target / static_cast<double>(m)) continue;
                    const double app = w(p, p);
                    const double aqq = w(q, q);
                    const double tau = (aqq - app) / (2.0 * apq);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;

                    for (std::size_t k = 0; k < m; ++k) {
                        const double wkp = w(k, p);
                        const double wkq = w(k, q);
                        w(k, p) = c * wkp - s * wkq;
                        w(k, q) = s * wkp + c * wkq;
                    }
                    for (std::size_t k = 0; k < m; ++k) {
                        const double wpk = w(p, k);
                        const double wqk = w(q, k);
                        w(p, k) = c * wpk - s * wqk;
                        w(q, k) = s * wpk + c * wqk;
                    }
                    for (std::size_t k = 0; k < m; ++k) {
                        const double vkp = v(k, p);
                        const double vkq = v(k, q);
                        v(k, p) = c * vkp - s * vkq;
                        v(k, q) = s * vkp + c * vkq;
                    }
                }
            }
            converged = off_diagonal_frobenius(w) <= target;
        }
        if (!converged)
            throw NumericError("sym_eigen: no convergence after " +
                               std::to_string(kMaxJacobiSweeps) + " sweeps, off-diagonal residual " +
                               std::to_string(off_diagonal_frobenius(w)));
    }

    // Sort non-increasing; stable sort keeps original index order on ties.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return w(i, i) > w(j, j); });

    SymmetricEigen eig;
    eig.values.resize(m);
    eig.vectors = Matrix(m, m);
    for (std::size_t out = 0; out < m; ++out) {
        const std::size_t src = order[out];
        eig.values[out] = w(src, src);
        // Sign convention: largest-magnitude component positive (first such
        // component on exact magnitude ties).
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double mag = std::abs(v(k, src));
            if (mag > best) {
                best = mag;
                arg = k;
            }
        }
        const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < m; ++k) eig.vectors(k, out) = sign * v(k, src);
    }
    return eig;
}

Matrix cholesky(const Matrix& a) {
    const std::size_t m = a.rows();
    if (m == 0 || a.cols() != m)
        throw ContractViolation("cholesky: input must be square and non-empty");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(a(i, j) - a(j, i)) > kSymmetryTolerance)
                throw ContractViolation("cholesky: input asymmetric");

    Matrix l(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (diag <= kCholeskyPivotFloor)
            throw NumericError("cholesky: matrix not positive definite (pivot " +
                               std::to_string(diag) + " at column " + std::to_string(j) + ")");
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < m; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

double mahalanobis_sq(std::span<const double> x, std::span<const double> mean,
                      const SymmetricEigen& eig) {
    const std::size_t m = eig.dim();
    if (x.size() != m || mean.size() != m)
        throw ContractViolation("mahalanobis_sq: dimension mismatch");

    const double trace = std::accumulate(eig.values.begin(), eig.values.end(), 0.0);
    const double eps_rank = kRankEpsFactor * trace;
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (eig.values[k] <= eps_rank)
            throw NumericError("mahalanobis_sq: covariance singular in eigendirection " +
                               std::to_string(k));
        double proj = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            proj += eig.vectors(j, k) * (x[j] - mean[j]);
        total += proj * proj / eig.values[k];
    }
    return total;
}

Matrix pca_transform(const Matrix& data, const SymmetricEigen& eig) {
    if (data.cols() != eig.dim())
        throw ContractViolation("pca_transform: dimension mismatch");
    // Row i of the output is P^T x_i, which in row-major layout is data * P.
    return matmul(data, eig.vectors);
}

} // namespace aeod
