#ifndef AEOD_LOSS_HPP
#define AEOD_LOSS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "aeod/linalg.hpp"
#include "aeod/matrix.hpp"

namespace aeod {

/// Configuration of the combined training loss
///   total = theta1 * mse + theta2 * eig_penalty(beta, intrinsic_dim).
struct LossConfig {
    double theta1 = 0.008;
    double theta2 = 1.0;
    double beta = 0.0;
    std::size_t intrinsic_dim = 0;
};

/// Throws ConfigError unless theta1 > 0, theta2 > 0, beta > 0 and
/// 1 <= intrinsic_dim <= input_dim.
void validate(const LossConfig& config, std::size_t input_dim);

/// One loss evaluation on a batch: total = theta1*mse_part + theta2*eig_part,
/// with the gradient of total with respect to the network outputs.
struct LossValue {
    double total = 0.0;
    double mse_part = 0.0;
    double eig_part = 0.0;
    Matrix grad_wrt_outputs;
};

/// Mean squared reconstruction error over rows:
///   value = (1/n) sum_i ||x_i - xhat_i||^2, gradient (2/n)(outputs - inputs).
std::pair<double, Matrix> mse_loss(const Matrix& inputs, const Matrix& outputs);

/// Eigenvalue reconstruction-gap penalty.
///
/// Computes population covariances of inputs and outputs, pairs the top-l
/// eigenvalues of each by descending rank, and returns
///   value = sum_k (sqrt(lambda_k) - sqrt(lambdahat_k) - beta)^2
/// together with its gradient with respect to the outputs. Input-side
/// eigenvalues are constants. The gradient flows through each output
/// eigenvalue by first-order perturbation,
///   d lambdahat_k / d y_j = (2/n) (eta_k . (y_j - mean)) eta_k,
/// and through the square root with lambdahat_k floored at 1e-12 so the start
/// of training (near-constant outputs) stays bounded.
///
/// Requires n > m so the output covariance can be full rank, and l <= m.
std::pair<double, Matrix> eig_penalty(const Matrix& inputs, const Matrix& outputs,
                                      double beta, std::size_t l);

/// Square roots of the top-l eigenvalues of the covariance of inputs.
Vector input_sqrt_spectrum(const Matrix& inputs, std::size_t l);

/// eig_penalty with the input spectrum supplied. The input side carries no
/// gradient, and under full-batch training it never changes, so callers can
/// compute it once.
std::pair<double, Matrix> eig_penalty_from_spectrum(const Vector& input_sqrt,
                                                    const Matrix& outputs, double beta);

/// theta1 * mse + theta2 * eig_penalty with summed gradients.
LossValue mse_eig_loss(const Matrix& inputs, const Matrix& outputs, const LossConfig& config);

/// Reconstruction-gap target from the retained input eigenvalues:
///   a = 0.3 * max sqrt(lambda), b = min sqrt(lambda); beta = a if a <= b else b.
/// Always lands in (0, min sqrt(lambda)]. All supplied eigenvalues must be
/// positive.
double select_beta(std::span<const double> eigvals);

/// The l largest eigenvalues, descending.
Vector top_l_eigenvalues(const SymmetricEigen& eig, std::size_t l);

/// select_beta applied to the top-l eigenvalues of the covariance of data.
/// The data should already be normalized the way training will see it.
double auto_beta(const Matrix& data, std::size_t l);

/// Human-readable eigenvalue spectrum of the covariance of data, one line per
/// eigenvalue with the cumulative variance fraction. A sizing aid for picking
/// the intrinsic dimension; no threshold is applied anywhere.
std::string format_spectrum(const Matrix& data);

} // namespace aeod

#endif
