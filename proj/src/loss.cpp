#include "aeod/loss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "aeod/errors.hpp"

namespace aeod {

namespace {

// Floor for lambdahat inside 1/(2 sqrt(lambdahat)); keeps the gradient bounded
// when the output covariance is still rank deficient.
constexpr double kEigGradFloor = 1e-12;

} // namespace

void validate(const LossConfig& config, std::size_t input_dim) {
    if (config.theta1 <= 0.0 || config.theta2 <= 0.0)
        throw ConfigError("loss config: theta1 and theta2 must be positive");
    if (config.beta <= 0.0)
        throw ConfigError("loss config: beta must be positive");
    if (config.intrinsic_dim < 1 || config.intrinsic_dim > input_dim)
        throw ConfigError("loss config: intrinsic_dim must be in [1, input_dim]");
}

std::pair<double, Matrix> mse_loss(const Matrix& inputs, const Matrix& outputs) {
    if (!inputs.same_shape(outputs))
        throw ContractViolation("mse_loss: shape mismatch");
    const std::size_t n = inputs.rows();
    if (n == 0)
        throw ContractViolation("mse_loss: empty batch");

    const double inv_n = 1.0 / static_cast<double>(n);
    double value = 0.0;
    Matrix grad(n, inputs.cols());
    for (std::size_t i = 0; i < inputs.data().size(); ++i) {
        const double diff = outputs.data()[i] - inputs.data()[i];
        value += diff * diff;
        grad.data()[i] = 2.0 * inv_n * diff;
    }
    return {value * inv_n, std::move(grad)};
}

Vector input_sqrt_spectrum(const Matrix& inputs, std::size_t l) {
    if (l < 1 || l > inputs.cols())
        throw ConfigError("eig_penalty: l must be in [1, input_dim]");
    const SymmetricEigen eig = sym_eigen(covariance(inputs));
    Vector sqrt_top(l);
    for (std::size_t k = 0; k < l; ++k) sqrt_top[k] = std::sqrt(std::max(eig.values[k], 0.0));
    return sqrt_top;
}

std::pair<double, Matrix> eig_penalty_from_spectrum(const Vector& input_sqrt,
                                                    const Matrix& outputs, double beta) {
    const std::size_t n = outputs.rows();
    const std::size_t m = outputs.cols();
    const std::size_t l = input_sqrt.size();
    if (l < 1 || l > m)
        throw ConfigError("eig_penalty: l must be in [1, input_dim]");
    if (n <= m)
        throw DataError("eig_penalty: batch of " + std::to_string(n) +
                        " rows too small for a rank-" + std::to_string(m) + " covariance");

    const SymmetricEigen out_eig = sym_eigen(covariance(outputs));

    const Vector out_means = column_means(outputs);
    Matrix centered(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        auto src = outputs.row(i);
        auto dst = centered.row(i);
        for (std::size_t j = 0; j < m; ++j) dst[j] = src[j] - out_means[j];
    }

    double value = 0.0;
    // coeff_k = d penalty / d lambdahat_k, combined with the 2/n from the
    // perturbation formula below.
    Vector coeff(l, 0.0);
    for (std::size_t k = 0; k < l; ++k) {
        const double lam_out = std::max(out_eig.values[k], 0.0);
        const double gap = input_sqrt[k] - std::sqrt(lam_out) - beta;
        value += gap * gap;
        coeff[k] = -gap / std::sqrt(std::max(lam_out, kEigGradFloor)) * 2.0 /
                   static_cast<double>(n);
    }

    // projections(j, k) = eta_k . (y_j - mean); grad_j = sum_k coeff_k proj_jk eta_k.
    Matrix grad(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        auto c = centered.row(i);
        auto g = grad.row(i);
        for (std::size_t k = 0; k < l; ++k) {
            double proj = 0.0;
            for (std::size_t j = 0; j < m; ++j) proj += out_eig.vectors(j, k) * c[j];
            const double scale = coeff[k] * proj;
            for (std::size_t j = 0; j < m; ++j) g[j] += scale * out_eig.vectors(j, k);
        }
    }
    return {value, std::move(grad)};
}

std::pair<double, Matrix> eig_penalty(const Matrix& inputs, const Matrix& outputs,
                                      double beta, std::size_t l) {
    if (!inputs.same_shape(outputs))
        throw ContractViolation("eig_penalty: shape mismatch");
    return eig_penalty_from_spectrum(input_sqrt_spectrum(inputs, l), outputs, beta);
}

LossValue mse_eig_loss(const Matrix& inputs, const Matrix& outputs, const LossConfig& config) {
    validate(config, inputs.cols());

    auto [mse, mse_grad] = mse_loss(inputs, outputs);
    auto [eig, eig_grad] = eig_penalty(inputs, outputs, config.beta, config.intrinsic_dim);

    LossValue out;
    out.mse_part = mse;
    out.eig_part = eig;
    out.total = config.theta1 * mse + config.theta2 * eig;
    out.grad_wrt_outputs = std::move(mse_grad);
    for (std::size_t i = 0; i < out.grad_wrt_outputs.data().size(); ++i)
        out.grad_wrt_outputs.data()[i] = config.theta1 * out.grad_wrt_outputs.data()[i] +
                                         config.theta2 * eig_grad.data()[i];
    return out;
}

double select_beta(std::span<const double> eigvals) {
    if (eigvals.empty())
        throw ConfigError("select_beta: no eigenvalues supplied");
    double max_sqrt = 0.0;
    double min_sqrt = std::numeric_limits<double>::infinity();
    for (double lam : eigvals) {
        if (lam <= 0.0)
            throw ConfigError("select_beta: eigenvalues must be positive");
        const double s = std::sqrt(lam);
        max_sqrt = std::max(max_sqrt, s);
        min_sqrt = std::min(min_sqrt, s);
    }
    const double a = 0.3 * max_sqrt;
    return a <= min_sqrt ? a : min_sqrt;
}

Vector top_l_eigenvalues(const SymmetricEigen& eig, std::size_t l) {
    if (l < 1 || l > eig.dim())
        throw ConfigError("top_l_eigenvalues: l out of range");
    return Vector(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(l));
}

double auto_beta(const Matrix& data, std::size_t l) {
    const SymmetricEigen eig = sym_eigen(covariance(data));
    const Vector top = top_l_eigenvalues(eig, l);
    return select_beta(top);
}

std::string format_spectrum(const Matrix& data) {
    const SymmetricEigen eig = sym_eigen(covariance(data));
    const double total = std::accumulate(eig.values.begin(), eig.values.end(), 0.0);

    std::string out = "rank  eigenvalue    sqrt        cumulative\n";
    double running = 0.0;
    char line[128];
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        const double lam = eig.values[k];
        running += lam;
        const double frac = total > 0.0 ? running / total : 0.0;
        std::snprintf(line, sizeof(line), "%4zu  %-12.6g  %-10.6g  %.4f\n", k + 1, lam,
                      lam > 0.0 ? std::sqrt(lam) : 0.0, frac);
        out += line;
    }
    return out;
}

} // namespace aeod
