#ifndef AEOD_MATRIX_HPP
#define AEOD_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "aeod/errors.hpp"

namespace aeod {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. The substrate for datasets, network
/// weights, and covariance matrices.
///
/// Entries supplied through from_data()/from_rows() are checked to be finite;
/// the zero-filled constructor and element writes are unchecked so that hot
/// loops stay cheap.
class Matrix {
public:
    Matrix() = default;

    /// rows x cols, zero-filled.
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

    /// Takes ownership of a row-major entry vector. Throws ContractViolation
    /// on a size mismatch, DataError on non-finite entries.
    static Matrix from_data(std::size_t rows, std::size_t cols, Vector entries);

    /// Convenience literal constructor for tests and small fixtures.
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return entries_.empty(); }

    std::span<double> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

    Vector& data() { return entries_; }
    const Vector& data() const { return entries_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector entries_;
};

Matrix transpose(const Matrix& a);

/// a * b.
Matrix matmul(const Matrix& a, const Matrix& b);

/// a * b^T. Row-major dot products; the cache-friendly kernel used by the
/// network forward pass.
Matrix matmul_nt(const Matrix& a, const Matrix& b);

/// Column-wise means, one per column.
Vector column_means(const Matrix& a);

/// max |a(i,j)| over all entries.
double max_abs(const Matrix& a);

/// max |a(i,j) - b(i,j)|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

inline bool all_finite(std::span<const double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace aeod

#endif
