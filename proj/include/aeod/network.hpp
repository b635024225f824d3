#ifndef AEOD_NETWORK_HPP
#define AEOD_NETWORK_HPP

#include <cstdint>

#include "aeod/matrix.hpp"

namespace aeod {

/// Shape and seed of the autoencoder: input -> hidden (ReLU) -> output
/// (sigmoid), with the hidden width set to the intrinsic dimension of the
/// data.
struct AutoencoderConfig {
    std::size_t input_dim = 0;
    std::size_t hidden_dim = 0;
    std::uint64_t seed = 0;
};

/// Weights and biases of the two layers. w1 is hidden_dim x input_dim,
/// w2 is input_dim x hidden_dim.
struct NetworkParams {
    Matrix w1;
    Vector b1;
    Matrix w2;
    Vector b2;
};

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEpsilon = 1e-8;

/// Adam moment accumulators, shaped like the parameters they track.
struct AdamState {
    NetworkParams first_moment;
    NetworkParams second_moment;
    std::size_t step = 0;

    static AdamState zeros_like(const NetworkParams& params);
};

/// Intermediate values of one forward pass, retained for backward().
struct ForwardCache {
    Matrix inputs;      // n x m batch the pass was run on
    Matrix hidden_pre;  // n x l, pre-ReLU
    Matrix hidden;      // n x l, post-ReLU
    Matrix outputs;     // n x m, post-sigmoid reconstructions
};

/// Seeded initialization, deterministic given the config seed. The encoder
/// draws Glorot-uniform jitter and the decoder is tied to a quarter of the
/// encoder transpose, so the initial end-to-end map is positively aligned
/// with the identity for every input. When hidden_dim == input_dim the
/// encoder adds a 4x identity backbone and the output biases center the
/// sigmoid, so the network starts near the identity map on [0,1] inputs;
/// without that start, spectrum-shaping losses settle on reconstructions with
/// the right variance profile but no per-direction correspondence to the
/// input, and the reconstruction term is too weak to rotate them out of it.
NetworkParams init_params(const AutoencoderConfig& config);

/// Reconstruct a batch (one sample per row):
///     sigmoid(w2 * relu(w1 * x + b1) + b2).
/// Outputs lie strictly in (0, 1). Pure function of (params, batch).
ForwardCache forward(const NetworkParams& params, const Matrix& batch);

/// Reconstructions only, when no backward pass will follow.
Matrix reconstruct(const NetworkParams& params, const Matrix& batch);

/// Chain-rule gradients of a scalar loss with respect to every parameter,
/// given the loss gradient with respect to the outputs. The ReLU subgradient
/// at exactly 0 is taken as 0. Throws ContractViolation if the cache does not
/// match the parameters' shapes.
NetworkParams backward(const NetworkParams& params, const ForwardCache& cache,
                       const Matrix& grad_wrt_outputs);

/// One Adam update with bias correction; increments state.step.
/// Throws NumericError on non-finite gradients.
void adam_step(NetworkParams& params, const NetworkParams& grads, AdamState& state,
               double learning_rate);

} // namespace aeod

#endif
