#ifndef AEOD_EVAL_HPP
#define AEOD_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aeod/data.hpp"
#include "aeod/matrix.hpp"

namespace aeod {

/// Probability that a random positive outscores a random negative, ties at
/// half weight. Dispatches to exact pair counting for n <= 10^4 and to the
/// O(n log n) rank-sum form above that; the two agree exactly.
double auc(const Vector& scores, const std::vector<int>& labels);
double auc_by_pairs(const Vector& scores, const std::vector<int>& labels);
double auc_by_ranks(const Vector& scores, const std::vector<int>& labels);

/// Pearson correlation coefficient.
double pearson(const Vector& a, const Vector& b);

/// Parameters for one experiment suite. Fields beyond the common block apply
/// to the suite named in `suite`; beta = 0 selects the data-driven rule.
struct SuiteConfig {
    std::string suite;
    std::vector<double> ratios;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::size_t epochs = 1000;
    std::size_t batch_size = 0;
    double learning_rate = 1e-3;
    double theta1 = 0.008;
    double theta2 = 1.0;
    double beta = 0.0;
    std::size_t record_every = 50;

    std::size_t n = 0;                       // lowdim, highdim
    std::size_t n_train = 3000;              // manifold
    std::size_t n_test = 3000;               // manifold
    std::vector<std::size_t> dims = {50, 100};  // highdim
    std::string train_csv;                   // csv
    std::string test_csv;                    // csv
    std::size_t intrinsic_dim = 0;           // csv
};

/// Suite defaults (ratios 0.01..0.10, 5 seeds, desk-scale sizes).
SuiteConfig default_suite_config(const std::string& suite);

/// Strict parse: the document is either a bare config object or a manifest
/// wrapper {"suite", "config", ...}; unknown keys are rejected. beta accepts
/// "auto" or a positive number.
SuiteConfig suite_config_from_json(const std::string& text);

/// Canonical JSON for the resolved config (sorted keys, suite-relevant
/// fields only). Re-parsing yields an identical configuration.
std::string suite_config_to_json(const SuiteConfig& config);

/// One AUC measurement: seed-resolved values plus their mean.
struct AucCell {
    std::string dataset;
    double ratio = 0.0;
    std::string method;
    double auc_mean = 0.0;
    Vector per_seed;
};

/// A representative 2D projection with flagged outliers, one per dataset.
struct ScatterPlot {
    std::string id;
    Matrix points;
    std::vector<int> flags;
};

struct ExperimentReport {
    std::string experiment_id;
    std::vector<std::uint64_t> seeds;
    std::vector<AucCell> cells;
    std::vector<ScatterPlot> scatters;
    std::string manifest_json;
};

/// The three 2D families of the low-dimensional suite: "diag" (independent
/// coordinates), "corr" (strong correlation), "noisy" (diagonal covariance
/// plus bounded-uniform contamination). Shared with the verification tests.
Dataset lowdim_family_dataset(const std::string& family, std::size_t n, std::uint64_t seed);
const std::vector<std::string>& lowdim_family_names();

ExperimentReport run_lowdim_suite(const SuiteConfig& config);
ExperimentReport run_manifold_suite(const SuiteConfig& config);
ExperimentReport run_highdim_suite(const SuiteConfig& config);
ExperimentReport run_csv_suite(const SuiteConfig& config);

/// Dispatch on config.suite.
ExperimentReport run_suite(const SuiteConfig& config);

/// Writes auc.csv (seed means), auc_seeds.csv (per-seed rows), manifest.json
/// and scatter_<id>.svg files into dir (created if missing).
void emit_report(const ExperimentReport& report, const std::string& dir);

/// Equal-width binning of paired values over [min, max] of inputs; used for
/// per-dimension reconstruction curves. Bins without points report count 0.
struct BinnedCurve {
    Vector centers;
    Vector mean_in;
    Vector mean_out;
    Vector mean_abs_gap;
    std::vector<std::size_t> counts;
};
BinnedCurve binned_reconstruction(const Vector& inputs, const Vector& outputs,
                                  std::size_t bins);

} // namespace aeod

#endif
