#include "aeod/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <tuple>
#include <utility>

#include "json.hpp"

#include "aeod/detect.hpp"
#include "aeod/errors.hpp"
#include "aeod/linalg.hpp"
#include "aeod/loss.hpp"
#include "aeod/svg.hpp"

namespace aeod {

namespace {

using nlohmann::json;

constexpr std::size_t kPairCountingLimit = 10000;

std::pair<std::size_t, std::size_t> count_classes(const Vector& scores,
                                                  const std::vector<int>& labels) {
    if (scores.size() != labels.size())
        throw ContractViolation("auc: scores and labels differ in length");
    std::size_t pos = 0, neg = 0;
    for (int lab : labels) {
        if (lab == 1)
            ++pos;
        else if (lab == 0)
            ++neg;
        else
            throw ContractViolation("auc: labels must be 0 or 1");
    }
    if (pos == 0 || neg == 0)
        throw DataError("auc: undefined without both a positive and a negative");
    return {pos, neg};
}

} // namespace

double auc_by_pairs(const Vector& scores, const std::vector<int>& labels) {
    const auto [pos, neg] = count_classes(scores, labels);
    double wins = 0.0, ties = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                ties += 1.0;
        }
    }
    return (wins + 0.5 * ties) / (static_cast<double>(pos) * static_cast<double>(neg));
}

double auc_by_ranks(const Vector& scores, const std::vector<int>& labels) {
    const auto [pos, neg] = count_classes(scores, labels);
    const std::size_t n = scores.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&scores](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks over tie groups, then the Mann-Whitney rank-sum form.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
        i = j;
    }
    const double p = static_cast<double>(pos);
    const double u = rank_sum_pos - p * (p + 1.0) / 2.0;
    return u / (p * static_cast<double>(neg));
}

double auc(const Vector& scores, const std::vector<int>& labels) {
    return scores.size() <= kPairCountingLimit ? auc_by_pairs(scores, labels)
                                               : auc_by_ranks(scores, labels);
}

double pearson(const Vector& a, const Vector& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw ContractViolation("pearson: need two equal-length vectors");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa <= 0.0 || sbb <= 0.0)
        throw NumericError("pearson: zero variance");
    return sab / std::sqrt(saa * sbb);
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::vector<double> default_ratios() {
    std::vector<double> r(10);
    for (int k = 0; k < 10; ++k) r[k] = std::round((0.01 + 0.01 * k) * 1e9) / 1e9;
    return r;
}

const std::vector<std::string> kSuites = {"lowdim", "manifold", "highdim", "csv"};

void require_known_suite(const std::string& suite) {
    if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
        throw ConfigError("unknown suite '" + suite + "'");
}

std::vector<std::string> allowed_keys(const std::string& suite) {
    std::vector<std::string> keys = {"suite",         "ratios",     "seeds",
                                     "epochs",        "batch_size", "learning_rate",
                                     "theta1",        "theta2",     "beta",
                                     "record_every"};
    if (suite == "lowdim" || suite == "highdim") keys.push_back("n");
    if (suite == "highdim") keys.push_back("dims");
    if (suite == "manifold") {
        keys.push_back("n_train");
        keys.push_back("n_test");
    }
    if (suite == "csv") {
        keys.push_back("train_csv");
        keys.push_back("test_csv");
        keys.push_back("intrinsic_dim");
    }
    return keys;
}

} // namespace

SuiteConfig default_suite_config(const std::string& suite) {
    require_known_suite(suite);
    SuiteConfig cfg;
    cfg.suite = suite;
    cfg.ratios = default_ratios();
    // Epoch defaults are calibrated per suite: the 2D problems settle in a
    // few thousand full-batch updates, the manifold fit needs tens of
    // thousands before the curve is traced tightly, and the high-dimensional
    // suite runs mini-batched from a near-identity start and converges in
    // far fewer epochs.
    if (suite == "lowdim") {
        cfg.n = 2000;
        cfg.epochs = 5000;
    }
    if (suite == "manifold") cfg.epochs = 20000;
    if (suite == "highdim") {
        cfg.n = 5000;
        cfg.epochs = 500;
    }
    return cfg;
}

SuiteConfig suite_config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    std::string suite;
    json inner;
    if (doc.contains("config")) {
        static const std::vector<std::string> wrapper_keys = {
            "experiment_id", "suite", "config", "betas", "info", "wall_seconds"};
        for (const auto& [key, value] : doc.items()) {
            (void)value;
            if (std::find(wrapper_keys.begin(), wrapper_keys.end(), key) == wrapper_keys.end())
                throw ConfigError("config: unknown key '" + key + "'");
        }
        if (!doc.contains("suite") || !doc["suite"].is_string())
            throw ConfigError("config: manifest lacks a suite name");
        suite = doc["suite"].get<std::string>();
        inner = doc["config"];
        if (!inner.is_object()) throw ConfigError("config: 'config' must be an object");
        if (inner.contains("suite") && inner["suite"].get<std::string>() != suite)
            throw ConfigError("config: wrapper and inner suite disagree");
    } else {
        inner = doc;
        if (!inner.contains("suite") || !inner["suite"].is_string())
            throw ConfigError("config: missing 'suite'");
        suite = inner["suite"].get<std::string>();
    }
    require_known_suite(suite);

    const std::vector<std::string> keys = allowed_keys(suite);
    for (const auto& [key, value] : inner.items()) {
        (void)value;
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError("config: unknown key '" + key + "' for suite " + suite);
    }

    SuiteConfig cfg = default_suite_config(suite);

    if (inner.contains("ratios")) {
        if (!inner["ratios"].is_array() || inner["ratios"].empty())
            throw ConfigError("config: ratios must be a non-empty array");
        cfg.ratios.clear();
        for (const auto& r : inner["ratios"]) {
            if (!r.is_number()) throw ConfigError("config: ratios must be numbers");
            cfg.ratios.push_back(r.get<double>());
        }
    }
    for (double r : cfg.ratios)
        if (r <= 0.0 || r >= 0.5)
            throw ConfigError("config: each ratio must be in (0, 0.5)");

    if (inner.contains("seeds")) {
        if (!inner["seeds"].is_array() || inner["seeds"].empty())
            throw ConfigError("config: seeds must be a non-empty array");
        cfg.seeds.clear();
        for (const auto& s : inner["seeds"]) {
            if (!s.is_number_unsigned()) throw ConfigError("config: seeds must be unsigned");
            cfg.seeds.push_back(s.get<std::uint64_t>());
        }
    }

    auto get_count = [&inner](const char* key, std::size_t current, std::size_t lo) {
        if (!inner.contains(key)) return current;
        if (!inner[key].is_number_unsigned())
            throw ConfigError(std::string("config: ") + key + " must be a non-negative integer");
        const auto v = inner[key].get<std::size_t>();
        if (v < lo)
            throw ConfigError(std::string("config: ") + key + " must be at least " +
                              std::to_string(lo));
        return v;
    };
    auto get_positive = [&inner](const char* key, double current) {
        if (!inner.contains(key)) return current;
        if (!inner[key].is_number() || inner[key].get<double>() <= 0.0)
            throw ConfigError(std::string("config: ") + key + " must be positive");
        return inner[key].get<double>();
    };

    cfg.epochs = get_count("epochs", cfg.epochs, 1);
    cfg.batch_size = get_count("batch_size", cfg.batch_size, 0);
    cfg.record_every = get_count("record_every", cfg.record_every, 1);
    cfg.learning_rate = get_positive("learning_rate", cfg.learning_rate);
    cfg.theta1 = get_positive("theta1", cfg.theta1);
    cfg.theta2 = get_positive("theta2", cfg.theta2);

    if (inner.contains("beta")) {
        if (inner["beta"].is_string()) {
            if (inner["beta"].get<std::string>() != "auto")
                throw ConfigError("config: beta must be 'auto' or a positive number");
            cfg.beta = 0.0;
        } else if (inner["beta"].is_number() && inner["beta"].get<double>() > 0.0) {
            cfg.beta = inner["beta"].get<double>();
        } else {
            throw ConfigError("config: beta must be 'auto' or a positive number");
        }
    }

    if (suite == "lowdim") cfg.n = get_count("n", cfg.n, 10);
    if (suite == "highdim") {
        cfg.n = get_count("n", cfg.n, 10);
        if (inner.contains("dims")) {
            if (!inner["dims"].is_array() || inner["dims"].empty())
                throw ConfigError("config: dims must be a non-empty array");
            cfg.dims.clear();
            for (const auto& d : inner["dims"]) {
                if (!d.is_number_unsigned() || d.get<std::size_t>() < 2)
                    throw ConfigError("config: dims entries must be integers >= 2");
                cfg.dims.push_back(d.get<std::size_t>());
            }
        }
    }
    if (suite == "manifold") {
        cfg.n_train = get_count("n_train", cfg.n_train, 10);
        cfg.n_test = get_count("n_test", cfg.n_test, 10);
    }
    if (suite == "csv") {
        if (inner.contains("train_csv")) cfg.train_csv = inner["train_csv"].get<std::string>();
        if (inner.contains("test_csv")) cfg.test_csv = inner["test_csv"].get<std::string>();
        cfg.intrinsic_dim = get_count("intrinsic_dim", cfg.intrinsic_dim, 1);
    }
    return cfg;
}

std::string suite_config_to_json(const SuiteConfig& config) {
    require_known_suite(config.suite);
    json doc;
    doc["suite"] = config.suite;
    doc["ratios"] = config.ratios;
    doc["seeds"] = config.seeds;
    doc["epochs"] = config.epochs;
    doc["batch_size"] = config.batch_size;
    doc["learning_rate"] = config.learning_rate;
    doc["theta1"] = config.theta1;
    doc["theta2"] = config.theta2;
    if (config.beta > 0.0)
        doc["beta"] = config.beta;
    else
        doc["beta"] = "auto";
    doc["record_every"] = config.record_every;
    if (config.suite == "lowdim" || config.suite == "highdim") doc["n"] = config.n;
    if (config.suite == "highdim") doc["dims"] = config.dims;
    if (config.suite == "manifold") {
        doc["n_train"] = config.n_train;
        doc["n_test"] = config.n_test;
    }
    if (config.suite == "csv") {
        doc["train_csv"] = config.train_csv;
        doc["test_csv"] = config.test_csv;
        doc["intrinsic_dim"] = config.intrinsic_dim;
    }
    return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Suite machinery

namespace {

// Cells are created up front in report order and filled per seed.
class CellTable {
public:
    CellTable(std::vector<std::string> datasets, std::vector<double> ratios,
              std::vector<std::string> methods, std::size_t n_seeds) {
        for (const auto& d : datasets)
            for (double r : ratios)
                for (const auto& m : methods) {
                    index_[{d, r, m}] = cells_.size();
                    AucCell cell;
                    cell.dataset = d;
                    cell.ratio = r;
                    cell.method = m;
                    cell.per_seed.assign(n_seeds, 0.0);
                    cells_.push_back(std::move(cell));
                }
    }

    void set(const std::string& dataset, double ratio, const std::string& method,
             std::size_t seed_idx, double value) {
        auto it = index_.find({dataset, ratio, method});
        if (it == index_.end()) throw ContractViolation("suite: unregistered AUC cell");
        cells_[it->second].per_seed[seed_idx] = value;
    }

    std::vector<AucCell> finalize() {
        for (AucCell& c : cells_) {
            double sum = 0.0;
            for (double v : c.per_seed) sum += v;
            c.auc_mean = sum / static_cast<double>(c.per_seed.size());
        }
        return std::move(cells_);
    }

private:
    std::map<std::tuple<std::string, double, std::string>, std::size_t> index_;
    std::vector<AucCell> cells_;
};

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double pick_scatter_ratio(const std::vector<double>& ratios) {
    for (double r : ratios)
        if (std::abs(r - 0.05) < 1e-9) return r;
    return ratios.front();
}

TrainedModel train_method(const Dataset& norm_ds, std::size_t l, bool use_eig,
                          const SuiteConfig& cfg, std::uint64_t seed, double beta) {
    AutoencoderConfig net;
    net.input_dim = norm_ds.dim();
    net.hidden_dim = l;
    net.seed = seed;

    TrainConfig tc;
    tc.epochs = cfg.epochs;
    tc.batch_size = cfg.batch_size;
    tc.learning_rate = cfg.learning_rate;
    tc.seed = seed;
    tc.record_every = cfg.record_every;
    if (use_eig) {
        LossConfig lc;
        lc.theta1 = cfg.theta1;
        lc.theta2 = cfg.theta2;
        lc.beta = beta;
        lc.intrinsic_dim = l;
        tc.loss = lc;
    }
    return train_with_restarts(norm_ds, net, tc);
}

std::string build_manifest(const SuiteConfig& cfg, const json& betas, const json& info,
                           double wall_seconds) {
    json doc;
    doc["experiment_id"] = cfg.suite;
    doc["suite"] = cfg.suite;
    doc["config"] = json::parse(suite_config_to_json(cfg));
    doc["betas"] = betas;
    if (!info.is_null() && !info.empty()) doc["info"] = info;
    doc["wall_seconds"] = wall_seconds;
    return doc.dump(2);
}

Matrix first_two_pcs(const Matrix& samples) {
    if (samples.cols() <= 2) return samples;
    const SymmetricEigen eig = sym_eigen(covariance(samples));
    const Matrix proj = pca_transform(samples, eig);
    Matrix out(proj.rows(), 2);
    for (std::size_t i = 0; i < proj.rows(); ++i) {
        out(i, 0) = proj(i, 0);
        out(i, 1) = proj(i, 1);
    }
    return out;
}

} // namespace

const std::vector<std::string>& lowdim_family_names() {
    static const std::vector<std::string> names = {"diag", "corr", "noisy"};
    return names;
}

Dataset lowdim_family_dataset(const std::string& family, std::size_t n, std::uint64_t seed) {
    const Vector mean = {0.0, 0.0};
    if (family == "diag")
        return gen_gaussian(n, mean, Matrix::from_rows({{1.0, 0.0}, {0.0, 0.3}}), seed);
    if (family == "corr")
        return gen_gaussian(n, mean, Matrix::from_rows({{1.0, 0.8}, {0.8, 1.0}}), seed);
    if (family == "noisy")
        return gen_noisy_gaussian(n, mean, Matrix::from_rows({{1.0, 0.0}, {0.0, 0.3}}), 0.05,
                                  4.0, seed);
    throw ConfigError("unknown low-dimensional family '" + family + "'");
}

ExperimentReport run_lowdim_suite(const SuiteConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    if (config.suite != "lowdim") throw ContractViolation("run_lowdim_suite: wrong suite");

    const std::vector<std::string> methods = {"mse", "mse_eig"};
    CellTable table(lowdim_family_names(), config.ratios, methods, config.seeds.size());
    json betas = json::object();
    std::vector<ScatterPlot> scatters;
    const double scatter_ratio = pick_scatter_ratio(config.ratios);

    for (const std::string& family : lowdim_family_names()) {
        for (std::size_t si = 0; si < config.seeds.size(); ++si) {
            const std::uint64_t seed = config.seeds[si];
            const Dataset ds = normalize_minmax(lowdim_family_dataset(family, config.n, seed));
            const double beta =
                config.beta > 0.0 ? config.beta : auto_beta(ds.samples, 2);
            betas[family + "/seed" + std::to_string(seed)] = beta;

            const TrainedModel model_mse = train_method(ds, 2, false, config, seed, beta);
            const TrainedModel model_eig = train_method(ds, 2, true, config, seed, beta);
            const Vector s_mse = score(model_mse, ds);
            const Vector s_eig = score(model_eig, ds);

            for (double ratio : config.ratios) {
                const std::vector<int> labels = label_hlp(ds, ratio).labels;
                table.set(family, ratio, "mse", si, auc(s_mse, labels));
                table.set(family, ratio, "mse_eig", si, auc(s_eig, labels));
            }
            if (si == 0)
                scatters.push_back({"lowdim_" + family, ds.samples,
                                    flag_outliers(s_eig, scatter_ratio)});
        }
    }

    ExperimentReport report;
    report.experiment_id = config.suite;
    report.seeds = config.seeds;
    report.cells = table.finalize();
    report.scatters = std::move(scatters);
    report.manifest_json = build_manifest(config, betas, json(), elapsed_seconds(t0));
    return report;
}

ExperimentReport run_manifold_suite(const SuiteConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    if (config.suite != "manifold") throw ContractViolation("run_manifold_suite: wrong suite");

    const std::vector<std::string> subs = {"ip_only", "hlp_only", "combined"};
    const std::vector<std::string> methods = {"mse", "mse_eig", "mahalanobis"};
    const std::vector<std::size_t> hlp_cols = {0, 2};
    CellTable table(subs, config.ratios, methods, config.seeds.size());
    json betas = json::object();
    std::vector<ScatterPlot> scatters;
    const double scatter_ratio = pick_scatter_ratio(config.ratios);

    for (std::size_t si = 0; si < config.seeds.size(); ++si) {
        const std::uint64_t seed = config.seeds[si];

        // The training half does not depend on the IP ratio, so train once
        // per seed and regenerate only the test set per ratio.
        const auto [train_raw, test_first] =
            gen_manifold3d(config.n_train, config.n_test, config.ratios.front(), seed);
        const Dataset train_norm = normalize_minmax(train_raw);
        const double beta =
            config.beta > 0.0 ? config.beta : auto_beta(train_norm.samples, 2);
        betas["seed" + std::to_string(seed)] = beta;

        const TrainedModel model_mse = train_method(train_norm, 2, false, config, seed, beta);
        const TrainedModel model_eig = train_method(train_norm, 2, true, config, seed, beta);

        // (b) HLP only: no IP anywhere; evaluate on the manifold training set.
        const Vector b_mse = score(model_mse, train_norm);
        const Vector b_eig = score(model_eig, train_norm);
        const Vector b_mahal = mahalanobis_scores(train_raw);
        for (double ratio : config.ratios) {
            const std::vector<int> labels = label_hlp(train_raw, ratio, hlp_cols).labels;
            table.set("hlp_only", ratio, "mse", si, auc(b_mse, labels));
            table.set("hlp_only", ratio, "mse_eig", si, auc(b_eig, labels));
            table.set("hlp_only", ratio, "mahalanobis", si, auc(b_mahal, labels));
        }

        for (double ratio : config.ratios) {
            const Dataset test =
                gen_manifold3d(config.n_train, config.n_test, ratio, seed).second;
            const Vector a_mse = score(model_mse, test);
            const Vector a_eig = score(model_eig, test);
            const Vector a_mahal = mahalanobis_scores(test);

            table.set("ip_only", ratio, "mse", si, auc(a_mse, test.labels));
            table.set("ip_only", ratio, "mse_eig", si, auc(a_eig, test.labels));
            table.set("ip_only", ratio, "mahalanobis", si, auc(a_mahal, test.labels));

            std::vector<int> combined = label_hlp(test, ratio, hlp_cols).labels;
            for (std::size_t i = 0; i < combined.size(); ++i)
                if (test.labels[i] == 1) combined[i] = 1;
            table.set("combined", ratio, "mse", si, auc(a_mse, combined));
            table.set("combined", ratio, "mse_eig", si, auc(a_eig, combined));
            table.set("combined", ratio, "mahalanobis", si, auc(a_mahal, combined));

            if (si == 0 && ratio == scatter_ratio) {
                Matrix plane(test.size(), 2);
                for (std::size_t i = 0; i < test.size(); ++i) {
                    plane(i, 0) = test.samples(i, 0);
                    plane(i, 1) = test.samples(i, 1);
                }
                const double flag_share =
                    std::min(0.45, 2.0 * ratio);
                scatters.push_back(
                    {"manifold_test", std::move(plane), flag_outliers(a_eig, flag_share)});
            }
        }
    }

    ExperimentReport report;
    report.experiment_id = config.suite;
    report.seeds = config.seeds;
    report.cells = table.finalize();
    report.scatters = std::move(scatters);
    report.manifest_json = build_manifest(config, betas, json(), elapsed_seconds(t0));
    return report;
}

ExperimentReport run_highdim_suite(const SuiteConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    if (config.suite != "highdim") throw ContractViolation("run_highdim_suite: wrong suite");

    std::vector<std::string> ids;
    for (std::size_t dim : config.dims) ids.push_back("m" + std::to_string(dim));
    const std::vector<std::string> methods = {"mse", "mse_eig"};
    CellTable table(ids, config.ratios, methods, config.seeds.size());
    json betas = json::object();
    std::vector<ScatterPlot> scatters;
    const double scatter_ratio = pick_scatter_ratio(config.ratios);

    for (std::size_t di = 0; di < config.dims.size(); ++di) {
        const std::size_t dim = config.dims[di];
        const std::string& id = ids[di];
        for (std::size_t si = 0; si < config.seeds.size(); ++si) {
            const std::uint64_t seed = config.seeds[si];
            const Dataset ds =
                normalize_minmax(gen_highdim_gaussian(config.n, dim, seed));
            const double beta =
                config.beta > 0.0 ? config.beta : auto_beta(ds.samples, dim);
            betas[id + "/seed" + std::to_string(seed)] = beta;

            const TrainedModel model_mse = train_method(ds, dim, false, config, seed, beta);
            const TrainedModel model_eig = train_method(ds, dim, true, config, seed, beta);
            const Vector s_mse = score(model_mse, ds);
            const Vector s_eig = score(model_eig, ds);

            for (double ratio : config.ratios) {
                const std::vector<int> labels = label_hlp(ds, ratio).labels;
                table.set(id, ratio, "mse", si, auc(s_mse, labels));
                table.set(id, ratio, "mse_eig", si, auc(s_eig, labels));
            }
            if (si == 0)
                scatters.push_back({"highdim_" + id, first_two_pcs(ds.samples),
                                    flag_outliers(s_eig, scatter_ratio)});
        }
    }

    ExperimentReport report;
    report.experiment_id = config.suite;
    report.seeds = config.seeds;
    report.cells = table.finalize();
    report.scatters = std::move(scatters);
    report.manifest_json = build_manifest(config, betas, json(), elapsed_seconds(t0));
    return report;
}

ExperimentReport run_csv_suite(const SuiteConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    if (config.suite != "csv") throw ContractViolation("run_csv_suite: wrong suite");
    if (config.train_csv.empty() || config.test_csv.empty())
        throw ConfigError("csv suite: train_csv and test_csv are required");
    if (config.intrinsic_dim < 1)
        throw ConfigError("csv suite: intrinsic_dim is required");

    const Dataset train_raw = load_csv(config.train_csv);
    const Dataset test_raw = load_csv(config.test_csv);
    if (train_raw.dim() != test_raw.dim())
        throw DataError("csv suite: train and test column counts differ");
    const std::size_t l = config.intrinsic_dim;
    if (l > train_raw.dim())
        throw ConfigError("csv suite: intrinsic_dim exceeds the column count");

    const Dataset train_norm = normalize_minmax(train_raw);
    const std::vector<std::string> methods = {"mse", "mse_eig"};
    CellTable table({"csv"}, config.ratios, methods, config.seeds.size());
    json betas = json::object();
    std::vector<ScatterPlot> scatters;
    const double scatter_ratio = pick_scatter_ratio(config.ratios);

    for (std::size_t si = 0; si < config.seeds.size(); ++si) {
        const std::uint64_t seed = config.seeds[si];
        const double beta =
            config.beta > 0.0 ? config.beta : auto_beta(train_norm.samples, l);
        betas["seed" + std::to_string(seed)] = beta;

        const TrainedModel model_mse = train_method(train_norm, l, false, config, seed, beta);
        const TrainedModel model_eig = train_method(train_norm, l, true, config, seed, beta);
        const Vector s_mse = score(model_mse, test_raw);
        const Vector s_eig = score(model_eig, test_raw);

        for (double ratio : config.ratios) {
            const std::vector<int> labels = label_hlp(test_raw, ratio).labels;
            table.set("csv", ratio, "mse", si, auc(s_mse, labels));
            table.set("csv", ratio, "mse_eig", si, auc(s_eig, labels));
        }
        if (si == 0)
            scatters.push_back({"csv_test", first_two_pcs(test_raw.samples),
                                flag_outliers(s_eig, scatter_ratio)});
    }

    json info;
    info["n_train"] = train_raw.size();
    info["n_test"] = test_raw.size();
    info["columns"] = train_raw.column_names;

    ExperimentReport report;
    report.experiment_id = config.suite;
    report.seeds = config.seeds;
    report.cells = table.finalize();
    report.scatters = std::move(scatters);
    report.manifest_json = build_manifest(config, betas, info, elapsed_seconds(t0));
    return report;
}

ExperimentReport run_suite(const SuiteConfig& config) {
    require_known_suite(config.suite);
    if (config.suite == "lowdim") return run_lowdim_suite(config);
    if (config.suite == "manifold") return run_manifold_suite(config);
    if (config.suite == "highdim") return run_highdim_suite(config);
    return run_csv_suite(config);
}

void emit_report(const ExperimentReport& report, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create directory " + dir);

    {
        std::ofstream out(dir + "/auc.csv");
        if (!out) throw DataError("cannot write " + dir + "/auc.csv");
        out << "experiment_id,dataset,ratio,method,auc\n";
        for (const AucCell& c : report.cells)
            out << report.experiment_id << ',' << c.dataset << ',' << format_double(c.ratio)
                << ',' << c.method << ',' << format_double(c.auc_mean) << '\n';
        if (!out) throw DataError("write failed for auc.csv");
    }
    {
        std::ofstream out(dir + "/auc_seeds.csv");
        if (!out) throw DataError("cannot write " + dir + "/auc_seeds.csv");
        out << "experiment_id,dataset,ratio,method,seed,auc\n";
        for (const AucCell& c : report.cells)
            for (std::size_t si = 0; si < c.per_seed.size(); ++si)
                out << report.experiment_id << ',' << c.dataset << ','
                    << format_double(c.ratio) << ',' << c.method << ',' << report.seeds[si]
                    << ',' << format_double(c.per_seed[si]) << '\n';
        if (!out) throw DataError("write failed for auc_seeds.csv");
    }
    {
        std::ofstream out(dir + "/manifest.json");
        if (!out) throw DataError("cannot write " + dir + "/manifest.json");
        out << report.manifest_json << '\n';
    }
    for (const ScatterPlot& s : report.scatters) {
        SvgSeries normal, flagged;
        normal.label = "normal";
        normal.color = "#4878a8";
        normal.radius = 2.0;
        flagged.label = "flagged";
        flagged.color = "#d62728";
        flagged.radius = 2.6;
        for (std::size_t i = 0; i < s.points.rows(); ++i) {
            SvgSeries& target = (i < s.flags.size() && s.flags[i] == 1) ? flagged : normal;
            target.x.push_back(s.points(i, 0));
            target.y.push_back(s.points(i, 1));
        }
        write_svg_plot(dir + "/scatter_" + s.id + ".svg", s.id, "component 1", "component 2",
                       {normal, flagged});
    }
}

BinnedCurve binned_reconstruction(const Vector& inputs, const Vector& outputs,
                                  std::size_t bins) {
    if (inputs.size() != outputs.size() || inputs.empty())
        throw ContractViolation("binned_reconstruction: length mismatch");
    if (bins < 1) throw ConfigError("binned_reconstruction: need at least one bin");

    const auto [lo_it, hi_it] = std::minmax_element(inputs.begin(), inputs.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / static_cast<double>(bins);

    BinnedCurve curve;
    curve.centers.resize(bins);
    curve.mean_in.assign(bins, 0.0);
    curve.mean_out.assign(bins, 0.0);
    curve.mean_abs_gap.assign(bins, 0.0);
    curve.counts.assign(bins, 0);
    for (std::size_t b = 0; b < bins; ++b)
        curve.centers[b] = lo + (static_cast<double>(b) + 0.5) * width;

    for (std::size_t i = 0; i < inputs.size(); ++i) {
        std::size_t b = width > 0.0
                            ? static_cast<std::size_t>((inputs[i] - lo) / width)
                            : 0;
        if (b >= bins) b = bins - 1;
        curve.mean_in[b] += inputs[i];
        curve.mean_out[b] += outputs[i];
        curve.mean_abs_gap[b] += std::abs(outputs[i] - inputs[i]);
        curve.counts[b] += 1;
    }
    for (std::size_t b = 0; b < bins; ++b) {
        if (curve.counts[b] == 0) continue;
        const double inv = 1.0 / static_cast<double>(curve.counts[b]);
        curve.mean_in[b] *= inv;
        curve.mean_out[b] *= inv;
        curve.mean_abs_gap[b] *= inv;
    }
    return curve;
}

} // namespace aeod
