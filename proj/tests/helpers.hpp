#ifndef AEOD_TEST_HELPERS_HPP
#define AEOD_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>

#include "aeod/matrix.hpp"
#include "aeod/rng.hpp"

namespace aeod::testing {

inline Matrix random_matrix(RandomStream& rng, std::size_t rows, std::size_t cols,
                            double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

inline Matrix random_symmetric(RandomStream& rng, std::size_t dim, double scale = 1.0) {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
            const double v = rng.uniform(-scale, scale);
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

// Symmetric positive definite with eigenvalues bounded away from zero.
inline Matrix random_spd(RandomStream& rng, std::size_t dim, double ridge = 0.5) {
    const Matrix b = random_matrix(rng, dim, dim);
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k) acc += b(k, i) * b(k, j);
            m(i, j) = acc / static_cast<double>(dim);
        }
    for (std::size_t i = 0; i < dim; ++i) m(i, i) += ridge;
    return m;
}

// Central finite differences of a scalar functional over a matrix argument.
template <typename F>
Matrix fd_gradient(const F& f, Matrix x, double h = 1e-5) {
    Matrix grad(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const double saved = x(i, j);
            x(i, j) = saved + h;
            const double up = f(x);
            x(i, j) = saved - h;
            const double down = f(x);
            x(i, j) = saved;
            grad(i, j) = (up - down) / (2.0 * h);
        }
    return grad;
}

// Largest relative disagreement between two gradients, ignoring entries where
// both are tiny.
inline double max_rel_diff(const Matrix& a, const Matrix& b, double floor = 1e-8) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double denom = std::max({std::abs(a(i, j)), std::abs(b(i, j)), floor});
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / denom);
        }
    return worst;
}

inline double mean_of(const Vector& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

} // namespace aeod::testing

#endif
