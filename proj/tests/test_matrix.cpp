#include <limits>

#include "doctest.h"

#include "aeod/errors.hpp"
#include "aeod/matrix.hpp"
#include "aeod/rng.hpp"
#include "helpers.hpp"

using namespace aeod;

TEST_CASE("matrix construction and access") {
    Matrix m(2, 3);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == 0.0);

    m(1, 2) = 4.5;
    CHECK(m(1, 2) == 4.5);
    CHECK(m.data()[1 * 3 + 2] == 4.5);

    const Matrix id = Matrix::identity(3);
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);
    CHECK(id(2, 2) == 1.0);
}

TEST_CASE("from_data validates size and finiteness") {
    CHECK_THROWS_AS(Matrix::from_data(2, 2, {1.0, 2.0, 3.0}), ContractViolation);
    CHECK_THROWS_AS(
        Matrix::from_data(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}),
        DataError);
    CHECK_THROWS_AS(
        Matrix::from_data(1, 2, {std::numeric_limits<double>::infinity(), 0.0}),
        DataError);

    const Matrix ok = Matrix::from_data(2, 2, {1.0, 2.0, 3.0, 4.0});
    CHECK(ok(1, 0) == 3.0);
}

TEST_CASE("row spans alias the storage") {
    Matrix m = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    auto r = m.row(1);
    CHECK(r[0] == 3.0);
    r[1] = 9.0;
    CHECK(m(1, 1) == 9.0);
}

TEST_CASE("transpose and matmul on known values") {
    const Matrix a = Matrix::from_rows({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
    const Matrix at = transpose(a);
    CHECK(at.rows() == 3);
    CHECK(at(0, 1) == 4.0);
    CHECK(at(2, 0) == 3.0);

    const Matrix b = Matrix::from_rows({{7.0, 8.0}, {9.0, 10.0}, {11.0, 12.0}});
    const Matrix ab = matmul(a, b);
    CHECK(ab.rows() == 2);
    CHECK(ab.cols() == 2);
    CHECK(ab(0, 0) == doctest::Approx(58.0));
    CHECK(ab(0, 1) == doctest::Approx(64.0));
    CHECK(ab(1, 0) == doctest::Approx(139.0));
    CHECK(ab(1, 1) == doctest::Approx(154.0));

    CHECK_THROWS_AS(matmul(a, a), ContractViolation);
}

TEST_CASE("matmul_nt equals matmul against the transpose") {
    RandomStream rng(11);
    const Matrix a = testing::random_matrix(rng, 4, 3);
    const Matrix b = testing::random_matrix(rng, 5, 3);
    const Matrix direct = matmul_nt(a, b);
    const Matrix reference = matmul(a, transpose(b));
    CHECK(max_abs_diff(direct, reference) < 1e-14);
}

TEST_CASE("column means and max_abs helpers") {
    const Matrix m = Matrix::from_rows({{1.0, -8.0}, {3.0, 2.0}});
    const Vector means = column_means(m);
    CHECK(means[0] == doctest::Approx(2.0));
    CHECK(means[1] == doctest::Approx(-3.0));
    CHECK(max_abs(m) == doctest::Approx(8.0));

    const Matrix shifted = Matrix::from_rows({{1.0, -8.0}, {3.0, 2.5}});
    CHECK(max_abs_diff(m, shifted) == doctest::Approx(0.5));
}

TEST_CASE("all_finite flags bad spans") {
    const Vector good = {1.0, 2.0};
    Vector bad = {1.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK(all_finite(good));
    CHECK_FALSE(all_finite(bad));
}
