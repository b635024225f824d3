#ifndef AEOD_LINALG_HPP
#define AEOD_LINALG_HPP

#include <span>

#include "aeod/matrix.hpp"

namespace aeod {

/// Eigendecomposition of a symmetric matrix.
///
/// Invariants maintained by sym_eigen():
///  - values sorted non-increasing, ties keeping original index order;
///  - vectors orthonormal (||V^T V - I||_inf < 1e-10) with the k-th column
///    the unit eigenvector of values[k];
///  - sign convention: the largest-magnitude component of each eigenvector
///    is positive, so decompositions are deterministic;
///  - V diag(values) V^T reproduces the input to 1e-9 relative.
struct SymmetricEigen {
    Vector values;
    Matrix vectors;

    std::size_t dim() const { return values.size(); }
};

/// Population covariance (divisor n) of a data matrix with one sample per
/// row. Output is exactly symmetric and positive semi-definite.
/// Throws DataError for fewer than 2 rows.
Matrix covariance(const Matrix& data);

/// Symmetric eigendecomposition by cyclic Jacobi rotations. Sweeps run until
/// the off-diagonal Frobenius norm drops below 1e-12 * ||a||_F, up to 100
/// sweeps. Throws ContractViolation if the input is asymmetric beyond 1e-9
/// absolute, NumericError (with the residual) on non-convergence.
SymmetricEigen sym_eigen(const Matrix& a);

/// Cholesky factor L (lower triangular, a = L L^T) of a symmetric
/// positive-definite matrix. A pivot at or below 1e-12 throws NumericError.
Matrix cholesky(const Matrix& a);

/// Squared Mahalanobis distance of x from mean, evaluated in the
/// eigencoordinates of the covariance:
///     sum_k (eta_k . (x - mean))^2 / lambda_k.
/// Every eigenvalue must exceed eps_rank = 1e-10 * trace; otherwise
/// NumericError names the offending index.
double mahalanobis_sq(std::span<const double> x, std::span<const double> mean,
                      const SymmetricEigen& eig);

/// Rotate every row into the eigenbasis: row i of the output is P^T x_i
/// where P holds the eigenvectors as columns. Inverse of left-multiplying
/// by P.
Matrix pca_transform(const Matrix& data, const SymmetricEigen& eig);

} // namespace aeod

#endif
