#ifndef AEOD_DETECT_HPP
#define AEOD_DETECT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aeod/data.hpp"
#include "aeod/loss.hpp"
#include "aeod/matrix.hpp"
#include "aeod/network.hpp"

namespace aeod {

/// Training-loop configuration. batch_size = 0 selects the default policy:
/// full batch for datasets up to kAutoBatchThreshold rows, kAutoBatchSize
/// otherwise. loss = nullopt trains on plain MSE.
struct TrainConfig {
    std::size_t epochs = 1000;
    std::size_t batch_size = 0;
    double learning_rate = 1e-3;
    std::optional<LossConfig> loss;
    std::uint64_t seed = 0;
    std::size_t record_every = 50;
};

inline constexpr std::size_t kAutoBatchThreshold = 4096;
inline constexpr std::size_t kAutoBatchSize = 512;

/// One sampled point of the training curve. Epochs are 1-based; the first and
/// final epochs are always recorded.
struct LossRecord {
    std::size_t epoch = 0;
    double total = 0.0;
    double mse_part = 0.0;
    double eig_part = 0.0;
};

/// A trained autoencoder together with the normalization that produced its
/// training data, so raw datasets can be scored directly. loss records the
/// training objective (nullopt = plain MSE).
struct TrainedModel {
    NetworkParams params;
    AutoencoderConfig config;
    NormParams norm_params;
    std::optional<LossConfig> loss;
    std::vector<LossRecord> loss_history;
};

/// Per-direction comparison of inputs and reconstructions in the input
/// covariance eigenbasis: coordinate means (nu, nu_hat), coordinate variances
/// (lambda, lambda_hat), correlation rho and the regression slope of the
/// reconstructed coordinate on the input coordinate.
struct DirectionalStats {
    Vector nu;
    Vector nu_hat;
    Vector lambda;
    Vector lambda_hat;
    Vector rho;
    Vector slope;

    std::size_t dims() const { return nu.size(); }
};

/// Runs the training loop: per epoch, a seeded shuffle, then per batch a
/// forward pass, the configured loss, backprop, and one Adam step. Under the
/// EIG loss a trailing batch with too few rows for a full-rank covariance is
/// merged into its predecessor. Aborts with the epoch index if the loss
/// diverges (non-finite or above 1e6).
TrainedModel train(const Dataset& ds, const AutoencoderConfig& net_cfg,
                   const TrainConfig& train_cfg);

/// The spectral penalty admits degenerate optima whose output covariance has
/// the target eigenvalues while the outputs no longer track the inputs; such
/// runs end with a reconstruction term far above the data variance. This
/// wrapper retrains with salted initialization seeds when the final
/// reconstruction term exceeds kCollapseTraceFactor times the trace of the
/// training covariance, keeping the lowest-total-loss model if every attempt
/// stays degenerate. Pure-MSE configs pass through to train() unchanged.
TrainedModel train_with_restarts(const Dataset& ds, const AutoencoderConfig& net_cfg,
                                 const TrainConfig& train_cfg, std::size_t attempts = 3);

inline constexpr double kCollapseTraceFactor = 2.0;
inline constexpr std::uint64_t kInitSeedSalt = 2654435761ULL;

/// Per-row squared reconstruction error. A raw dataset is first normalized
/// with the model's stored bounds; a normalized one is scored as-is.
Vector score(const TrainedModel& model, const Dataset& ds);

/// Per-row squared Euclidean distance between paired rows.
Vector score_rows(const Matrix& inputs, const Matrix& recons);

/// Flags the top floor(delta*n) scores, ties broken by row index.
std::vector<int> flag_outliers(const Vector& scores, double delta);

/// Directional statistics from explicit input/reconstruction pairs over the
/// leading l input principal directions.
DirectionalStats directional_stats_from(const Matrix& inputs, const Matrix& recons,
                                        std::size_t l);

/// directional_stats_from on a normalized dataset and its model
/// reconstructions; requires n >= 10*m for stable variances.
DirectionalStats directional_stats(const TrainedModel& model, const Dataset& ds);

/// Squared Mahalanobis distance of each row against the dataset's own mean
/// and covariance, optionally restricted to a column subset.
Vector mahalanobis_scores(const Dataset& ds, const std::vector<std::size_t>& feature_subset = {});

/// Scores CSV `row_index,score[,label]`; labels written when non-empty.
void save_scores_csv(const Vector& scores, const std::vector<int>& labels,
                     const std::string& path);

/// Loss-history CSV `epoch,total,mse_part,eig_part`.
void save_loss_history_csv(const std::vector<LossRecord>& history, const std::string& path);

} // namespace aeod

#endif
