#include "aeod/detect.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <utility>

#include "aeod/errors.hpp"
#include "aeod/linalg.hpp"
#include "aeod/rng.hpp"

namespace aeod {

namespace {

constexpr double kDivergenceCeiling = 1e6;

std::size_t resolve_batch_size(std::size_t requested, std::size_t n) {
    if (requested == 0) return n <= kAutoBatchThreshold ? n : kAutoBatchSize;
    return std::min(requested, n);
}

Matrix gather_rows(const Matrix& src, const std::vector<std::size_t>& order,
                   std::size_t first, std::size_t count) {
    Matrix out(count, src.cols());
    for (std::size_t i = 0; i < count; ++i) {
        auto dst = out.row(i);
        auto s = src.row(order[first + i]);
        std::copy(s.begin(), s.end(), dst.begin());
    }
    return out;
}

} // namespace

TrainedModel train(const Dataset& ds, const AutoencoderConfig& net_cfg,
                   const TrainConfig& train_cfg) {
    if (!ds.normalized)
        throw ContractViolation("train: dataset must be normalized first");
    const std::size_t n = ds.samples.rows();
    const std::size_t m = ds.samples.cols();
    if (net_cfg.input_dim != m)
        throw ConfigError("train: network input_dim does not match dataset");
    if (train_cfg.epochs < 1) throw ConfigError("train: epochs must be at least 1");
    if (train_cfg.learning_rate <= 0.0)
        throw ConfigError("train: learning rate must be positive");
    if (train_cfg.record_every < 1)
        throw ConfigError("train: record_every must be at least 1");

    const bool use_eig = train_cfg.loss.has_value();
    if (use_eig) {
        validate(*train_cfg.loss, m);
        if (train_cfg.loss->intrinsic_dim != net_cfg.hidden_dim)
            throw ConfigError("train: loss intrinsic_dim must equal network hidden_dim");
    }

    const std::size_t batch = resolve_batch_size(train_cfg.batch_size, n);
    if (use_eig && batch <= m)
        throw ConfigError("train: batch size must exceed the input dimension "
                          "for the eigenvalue penalty");

    NetworkParams params = init_params(net_cfg);
    AdamState adam = AdamState::zeros_like(params);
    RandomStream shuffle_rng(train_cfg.seed);

    // Full-batch training sees the same rows every step, so the input-side
    // spectrum (which carries no gradient) can be computed once.
    std::optional<Vector> cached_spectrum;
    if (use_eig && batch == n)
        cached_spectrum = input_sqrt_spectrum(ds.samples, train_cfg.loss->intrinsic_dim);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    TrainedModel model;
    model.config = net_cfg;
    model.norm_params = ds.norm_params;
    model.loss = train_cfg.loss;

    for (std::size_t epoch = 1; epoch <= train_cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);

        // Batch boundaries; a trailing batch too small for a full-rank
        // covariance is folded into its predecessor under the EIG loss.
        std::vector<std::pair<std::size_t, std::size_t>> spans;
        for (std::size_t start = 0; start < n; start += batch)
            spans.emplace_back(start, std::min(batch, n - start));
        if (use_eig && spans.size() > 1 && spans.back().second <= m) {
            spans[spans.size() - 2].second += spans.back().second;
            spans.pop_back();
        }

        double sum_total = 0.0, sum_mse = 0.0, sum_eig = 0.0;
        for (const auto& [start, count] : spans) {
            const Matrix batch_inputs = gather_rows(ds.samples, order, start, count);
            const ForwardCache cache = forward(params, batch_inputs);

            double total, mse_part, eig_part;
            Matrix grad_out;
            if (use_eig && cached_spectrum) {
                const LossConfig& lc = *train_cfg.loss;
                auto [mse, mse_grad] = mse_loss(batch_inputs, cache.outputs);
                auto [eig, eig_grad] =
                    eig_penalty_from_spectrum(*cached_spectrum, cache.outputs, lc.beta);
                mse_part = mse;
                eig_part = eig;
                total = lc.theta1 * mse + lc.theta2 * eig;
                grad_out = std::move(mse_grad);
                for (std::size_t i = 0; i < grad_out.data().size(); ++i)
                    grad_out.data()[i] = lc.theta1 * grad_out.data()[i] +
                                         lc.theta2 * eig_grad.data()[i];
            } else if (use_eig) {
                LossValue lv = mse_eig_loss(batch_inputs, cache.outputs, *train_cfg.loss);
                total = lv.total;
                mse_part = lv.mse_part;
                eig_part = lv.eig_part;
                grad_out = std::move(lv.grad_wrt_outputs);
            } else {
                auto [value, grad] = mse_loss(batch_inputs, cache.outputs);
                total = value;
                mse_part = value;
                eig_part = 0.0;
                grad_out = std::move(grad);
            }

            if (!std::isfinite(total) || total > kDivergenceCeiling)
                throw NumericError("train: loss diverged at epoch " + std::to_string(epoch));

            const NetworkParams grads = backward(params, cache, grad_out);
            adam_step(params, grads, adam, train_cfg.learning_rate);

            sum_total += total;
            sum_mse += mse_part;
            sum_eig += eig_part;
        }

        if (epoch == 1 || epoch == train_cfg.epochs || epoch % train_cfg.record_every == 0) {
            const auto n_batches = static_cast<double>(spans.size());
            model.loss_history.push_back({epoch, sum_total / n_batches, sum_mse / n_batches,
                                          sum_eig / n_batches});
        }
    }

    model.params = std::move(params);
    return model;
}

TrainedModel train_with_restarts(const Dataset& ds, const AutoencoderConfig& net_cfg,
                                 const TrainConfig& train_cfg, std::size_t attempts) {
    if (!train_cfg.loss.has_value() || attempts <= 1) return train(ds, net_cfg, train_cfg);

    const Matrix cov = covariance(ds.samples);
    double trace = 0.0;
    for (std::size_t j = 0; j < cov.rows(); ++j) trace += cov(j, j);
    const double ceiling = kCollapseTraceFactor * trace;

    std::optional<TrainedModel> best;
    for (std::size_t k = 0; k < attempts; ++k) {
        AutoencoderConfig cfg = net_cfg;
        cfg.seed = net_cfg.seed + k * kInitSeedSalt;
        TrainedModel model;
        try {
            model = train(ds, cfg, train_cfg);
        } catch (const NumericError&) {
            if (k + 1 == attempts && !best.has_value()) throw;
            continue;
        }
        if (model.loss_history.back().mse_part <= ceiling) return model;
        if (!best.has_value() ||
            model.loss_history.back().total < best->loss_history.back().total)
            best = std::move(model);
    }
    if (!best.has_value())
        throw NumericError("train_with_restarts: every attempt diverged");
    return *best;
}

Vector score_rows(const Matrix& inputs, const Matrix& recons) {
    if (!inputs.same_shape(recons))
        throw ContractViolation("score_rows: shape mismatch");
    Vector scores(inputs.rows(), 0.0);
    for (std::size_t i = 0; i < inputs.rows(); ++i) {
        auto x = inputs.row(i);
        auto y = recons.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < inputs.cols(); ++j) {
            const double d = x[j] - y[j];
            acc += d * d;
        }
        scores[i] = acc;
    }
    return scores;
}

Vector score(const TrainedModel& model, const Dataset& ds) {
    const std::size_t m = model.config.input_dim;
    if (ds.samples.cols() != m)
        throw ContractViolation("score: dataset width does not match model");

    Matrix inputs = ds.samples;
    if (!ds.normalized) {
        if (model.norm_params.min.size() != m || model.norm_params.max.size() != m)
            throw ContractViolation("score: model carries no normalization bounds");
        for (std::size_t j = 0; j < m; ++j) {
            const double lo = model.norm_params.min[j];
            const double span = model.norm_params.max[j] - lo;
            if (!(span > 0.0))
                throw ContractViolation("score: degenerate normalization bounds");
            for (std::size_t i = 0; i < inputs.rows(); ++i)
                inputs(i, j) = (inputs(i, j) - lo) / span;
        }
    }
    return score_rows(inputs, reconstruct(model.params, inputs));
}

std::vector<int> flag_outliers(const Vector& scores, double delta) {
    if (delta <= 0.0 || delta >= 1.0)
        throw ConfigError("flag_outliers: delta must be in (0, 1)");
    const std::size_t n = scores.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });

    std::vector<int> flags(n, 0);
    const auto n_flag = static_cast<std::size_t>(delta * static_cast<double>(n));
    for (std::size_t k = 0; k < n_flag; ++k) flags[order[k]] = 1;
    return flags;
}

DirectionalStats directional_stats_from(const Matrix& inputs, const Matrix& recons,
                                        std::size_t l) {
    if (!inputs.same_shape(recons))
        throw ContractViolation("directional_stats: shape mismatch");
    const std::size_t n = inputs.rows();
    const std::size_t m = inputs.cols();
    if (l < 1 || l > m)
        throw ConfigError("directional_stats: direction count out of range");

    const SymmetricEigen eig = sym_eigen(covariance(inputs));
    const double trace = std::accumulate(eig.values.begin(), eig.values.end(), 0.0);
    const double rank_eps = 1e-10 * trace;

    const Matrix y = pca_transform(inputs, eig);
    const Matrix y_hat = pca_transform(recons, eig);
    const double inv_n = 1.0 / static_cast<double>(n);

    DirectionalStats st;
    st.nu.resize(l);
    st.nu_hat.resize(l);
    st.lambda.resize(l);
    st.lambda_hat.resize(l);
    st.rho.resize(l);
    st.slope.resize(l);

    for (std::size_t k = 0; k < l; ++k) {
        double mu = 0.0, mu_hat = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mu += y(i, k);
            mu_hat += y_hat(i, k);
        }
        mu *= inv_n;
        mu_hat *= inv_n;

        double var = 0.0, var_hat = 0.0, cov = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = y(i, k) - mu;
            const double d_hat = y_hat(i, k) - mu_hat;
            var += d * d;
            var_hat += d_hat * d_hat;
            cov += d * d_hat;
        }
        var *= inv_n;
        var_hat *= inv_n;
        cov *= inv_n;

        if (var <= rank_eps)
            throw NumericError("directional_stats: direction " + std::to_string(k + 1) +
                               " is rank deficient");

        st.nu[k] = mu;
        st.nu_hat[k] = mu_hat;
        st.lambda[k] = var;
        st.lambda_hat[k] = var_hat;
        st.slope[k] = cov / var;
        st.rho[k] = var_hat > 0.0 ? cov / std::sqrt(var * var_hat) : 0.0;
    }
    return st;
}

DirectionalStats directional_stats(const TrainedModel& model, const Dataset& ds) {
    if (!ds.normalized)
        throw ContractViolation("directional_stats: dataset must be normalized");
    if (ds.samples.rows() < 10 * ds.samples.cols())
        throw DataError("directional_stats: need at least 10 rows per dimension");
    const Matrix recons = reconstruct(model.params, ds.samples);
    return directional_stats_from(ds.samples, recons, model.config.hidden_dim);
}

Vector mahalanobis_scores(const Dataset& ds, const std::vector<std::size_t>& feature_subset) {
    const std::size_t n = ds.samples.rows();
    const std::size_t m = ds.samples.cols();

    std::vector<std::size_t> cols = feature_subset;
    if (cols.empty()) {
        cols.resize(m);
        std::iota(cols.begin(), cols.end(), 0);
    }
    for (std::size_t c : cols)
        if (c >= m) throw ConfigError("mahalanobis_scores: feature index out of range");

    Matrix sub(n, cols.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) sub(i, k) = ds.samples(i, cols[k]);

    const Vector mean = column_means(sub);
    const SymmetricEigen eig = sym_eigen(covariance(sub));

    Vector scores(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) scores[i] = mahalanobis_sq(sub.row(i), mean, eig);
    return scores;
}

void save_scores_csv(const Vector& scores, const std::vector<int>& labels,
                     const std::string& path) {
    if (!labels.empty() && labels.size() != scores.size())
        throw ContractViolation("save_scores_csv: labels do not match scores");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);

    out << (labels.empty() ? "row_index,score" : "row_index,score,label") << '\n';
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out << i << ',' << format_double(scores[i]);
        if (!labels.empty()) out << ',' << labels[i];
        out << '\n';
    }
    if (!out) throw DataError("write failed for " + path);
}

void save_loss_history_csv(const std::vector<LossRecord>& history, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);

    out << "epoch,total,mse_part,eig_part\n";
    for (const LossRecord& r : history)
        out << r.epoch << ',' << format_double(r.total) << ',' << format_double(r.mse_part)
            << ',' << format_double(r.eig_part) << '\n';
    if (!out) throw DataError("write failed for " + path);
}

} // namespace aeod
