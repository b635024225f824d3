#include "aeod/matrix.hpp"

#include <string>

namespace aeod {

Matrix Matrix::from_data(std::size_t rows, std::size_t cols, Vector entries) {
    if (entries.size() != rows * cols)
        throw ContractViolation("Matrix::from_data: entry count " +
                                std::to_string(entries.size()) + " does not match " +
                                std::to_string(rows) + "x" + std::to_string(cols));
    if (!all_finite(entries))
        throw DataError("Matrix::from_data: non-finite entry");
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.entries_ = std::move(entries);
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Vector entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c)
            throw ContractViolation("Matrix::from_rows: ragged rows");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return from_data(r, c, std::move(entries));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = a(i, j);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ContractViolation("matmul: inner dimensions disagree");
    Matrix out(a.rows(), b.cols());
    // i-k-j order keeps both streams sequential in row-major storage.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* out_row = out.data().data() + i * b.cols();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            const double* b_row = b.data().data() + k * b.cols();
            for (std::size_t j = 0; j < b.cols(); ++j)
                out_row[j] += aik * b_row[j];
        }
    }
    return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw ContractViolation("matmul_nt: inner dimensions disagree");
    Matrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* a_row = a.data().data() + i * a.cols();
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* b_row = b.data().data() + j * b.cols();
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                s += a_row[k] * b_row[k];
            out(i, j) = s;
        }
    }
    return out;
}

Vector column_means(const Matrix& a) {
    Vector mean(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto row = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) mean[j] += row[j];
    }
    if (a.rows() > 0)
        for (double& m : mean) m /= static_cast<double>(a.rows());
    return mean;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b))
        throw ContractViolation("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

} // namespace aeod
