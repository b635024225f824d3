#include "aeod/network.hpp"

#include <cmath>
#include <string>

#include "aeod/errors.hpp"
#include "aeod/rng.hpp"

namespace aeod {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

bool params_finite(const NetworkParams& p) {
    return all_finite(p.w1.data()) && all_finite(p.b1) && all_finite(p.w2.data()) &&
           all_finite(p.b2);
}

void check_shapes(const NetworkParams& params, std::size_t m, std::size_t l) {
    if (params.w1.rows() != l || params.w1.cols() != m || params.b1.size() != l ||
        params.w2.rows() != m || params.w2.cols() != l || params.b2.size() != m)
        throw ContractViolation("network: parameter shapes inconsistent");
}

} // namespace

AdamState AdamState::zeros_like(const NetworkParams& params) {
    AdamState s;
    s.first_moment.w1 = Matrix(params.w1.rows(), params.w1.cols());
    s.first_moment.b1 = Vector(params.b1.size(), 0.0);
    s.first_moment.w2 = Matrix(params.w2.rows(), params.w2.cols());
    s.first_moment.b2 = Vector(params.b2.size(), 0.0);
    s.second_moment = s.first_moment;
    s.step = 0;
    return s;
}

NetworkParams init_params(const AutoencoderConfig& config) {
    const std::size_t m = config.input_dim;
    const std::size_t l = config.hidden_dim;
    if (l < 1 || l > m)
        throw ConfigError("init_params: hidden_dim must satisfy 1 <= hidden_dim <= input_dim");

    RandomStream rng(config.seed);
    // Both layers have fan_in + fan_out = m + l, so they share one bound.
    const double bound = std::sqrt(6.0 / static_cast<double>(m + l));

    NetworkParams p;
    p.w1 = Matrix(l, m);
    for (double& w : p.w1.data()) w = rng.uniform(-bound, bound);
    p.b1 = Vector(l, 0.0);
    p.b2 = Vector(m, 0.0);
    if (l == m) {
        // Identity backbone: relu(4x) = 4x on [0,1] inputs, the tied decoder
        // below turns it into sigmoid(4x - 2) which tracks x through the
        // sigmoid's linear zone. The network starts near the identity and
        // training only has to reshape per-direction gains.
        for (std::size_t j = 0; j < m; ++j) {
            p.w1(j, j) += 4.0;
            p.b2[j] = -2.0;
        }
    }
    // Tied decoder: x' W2 relu(W1 x) = 0.25 * sum over active units of
    // (W1 x)_i^2 >= 0, so even without the backbone the initial map
    // correlates positively with the identity instead of scattering the
    // batch through a random rotation.
    p.w2 = Matrix(m, l);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < l; ++j) p.w2(i, j) = 0.25 * p.w1(j, i);
    return p;
}

ForwardCache forward(const NetworkParams& params, const Matrix& batch) {
    const std::size_t m = params.w2.rows();
    const std::size_t l = params.w1.rows();
    check_shapes(params, m, l);
    if (batch.cols() != m)
        throw ContractViolation("forward: batch has " + std::to_string(batch.cols()) +
                                " columns, network expects " + std::to_string(m));

    ForwardCache cache;
    cache.inputs = batch;

    cache.hidden_pre = matmul_nt(batch, params.w1);  // n x l
    for (std::size_t i = 0; i < cache.hidden_pre.rows(); ++i) {
        auto row = cache.hidden_pre.row(i);
        for (std::size_t j = 0; j < l; ++j) row[j] += params.b1[j];
    }

    cache.hidden = cache.hidden_pre;
    for (double& h : cache.hidden.data())
        if (h < 0.0) h = 0.0;

    cache.outputs = matmul_nt(cache.hidden, params.w2);  // n x m
    for (std::size_t i = 0; i < cache.outputs.rows(); ++i) {
        auto row = cache.outputs.row(i);
        for (std::size_t j = 0; j < m; ++j) row[j] = sigmoid(row[j] + params.b2[j]);
    }
    return cache;
}

Matrix reconstruct(const NetworkParams& params, const Matrix& batch) {
    return forward(params, batch).outputs;
}

NetworkParams backward(const NetworkParams& params, const ForwardCache& cache,
                       const Matrix& grad_wrt_outputs) {
    const std::size_t m = params.w2.rows();
    const std::size_t l = params.w1.rows();
    const std::size_t n = cache.inputs.rows();
    check_shapes(params, m, l);
    if (cache.inputs.cols() != m || cache.hidden.rows() != n || cache.hidden.cols() != l ||
        cache.outputs.rows() != n || cache.outputs.cols() != m)
        throw ContractViolation("backward: cache does not match network shape");
    if (!grad_wrt_outputs.same_shape(cache.outputs))
        throw ContractViolation("backward: output gradient shape mismatch");

    NetworkParams grads;
    grads.w1 = Matrix(l, m);
    grads.b1 = Vector(l, 0.0);
    grads.w2 = Matrix(m, l);
    grads.b2 = Vector(m, 0.0);

    // Through the sigmoid: dL/dz2 = dL/dout * out * (1 - out).
    Matrix delta_out(n, m);
    for (std::size_t i = 0; i < n * m; ++i) {
        const double o = cache.outputs.data()[i];
        delta_out.data()[i] = grad_wrt_outputs.data()[i] * o * (1.0 - o);
    }

    for (std::size_t i = 0; i < n; ++i) {
        auto d = delta_out.row(i);
        auto h = cache.hidden.row(i);
        for (std::size_t r = 0; r < m; ++r) {
            grads.b2[r] += d[r];
            auto w2_row = grads.w2.row(r);
            for (std::size_t c = 0; c < l; ++c) w2_row[c] += d[r] * h[c];
        }
    }

    // dL/dhidden = delta_out * w2, masked by the ReLU (subgradient 0 at 0).
    Matrix delta_hidden = matmul(delta_out, params.w2);  // n x l
    for (std::size_t i = 0; i < n * l; ++i)
        if (cache.hidden_pre.data()[i] <= 0.0) delta_hidden.data()[i] = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        auto d = delta_hidden.row(i);
        auto x = cache.inputs.row(i);
        for (std::size_t r = 0; r < l; ++r) {
            grads.b1[r] += d[r];
            auto w1_row = grads.w1.row(r);
            for (std::size_t c = 0; c < m; ++c) w1_row[c] += d[r] * x[c];
        }
    }
    return grads;
}

namespace {

void adam_update_span(std::span<double> param, std::span<const double> grad,
                      std::span<double> m1, std::span<double> m2, double lr,
                      double bias1, double bias2) {
    for (std::size_t i = 0; i < param.size(); ++i) {
        const double g = grad[i];
        m1[i] = kAdamBeta1 * m1[i] + (1.0 - kAdamBeta1) * g;
        m2[i] = kAdamBeta2 * m2[i] + (1.0 - kAdamBeta2) * g * g;
        const double m_hat = m1[i] / bias1;
        const double v_hat = m2[i] / bias2;
        param[i] -= lr * m_hat / (std::sqrt(v_hat) + kAdamEpsilon);
    }
}

} // namespace

void adam_step(NetworkParams& params, const NetworkParams& grads, AdamState& state,
               double learning_rate) {
    if (learning_rate <= 0.0)
        throw ConfigError("adam_step: learning rate must be positive");
    if (!params.w1.same_shape(grads.w1) || !params.w2.same_shape(grads.w2) ||
        params.b1.size() != grads.b1.size() || params.b2.size() != grads.b2.size())
        throw ContractViolation("adam_step: gradient shapes disagree with parameters");
    if (!params_finite(grads))
        throw NumericError("adam_step: non-finite gradient");

    state.step += 1;
    const double bias1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(state.step));
    const double bias2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(state.step));

    adam_update_span(params.w1.data(), grads.w1.data(), state.first_moment.w1.data(),
                     state.second_moment.w1.data(), learning_rate, bias1, bias2);
    adam_update_span(params.b1, grads.b1, state.first_moment.b1, state.second_moment.b1,
                     learning_rate, bias1, bias2);
    adam_update_span(params.w2.data(), grads.w2.data(), state.first_moment.w2.data(),
                     state.second_moment.w2.data(), learning_rate, bias1, bias2);
    adam_update_span(params.b2, grads.b2, state.first_moment.b2, state.second_moment.b2,
                     learning_rate, bias1, bias2);
}

} // namespace aeod
