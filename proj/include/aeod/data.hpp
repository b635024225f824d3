#ifndef AEOD_DATA_HPP
#define AEOD_DATA_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aeod/matrix.hpp"

namespace aeod {

/// Per-column min-max bounds captured during normalization.
struct NormParams {
    Vector min;
    Vector max;
};

/// A tabular dataset: samples, optional binary outlier labels (1 = positive),
/// and normalization state. Labels and column_names, when present, match the
/// sample shape.
struct Dataset {
    Matrix samples;
    std::vector<int> labels;
    std::vector<std::string> column_names;
    bool normalized = false;
    NormParams norm_params;

    bool has_labels() const { return !labels.empty(); }
    std::size_t size() const { return samples.rows(); }
    std::size_t dim() const { return samples.cols(); }
};

/// n draws from N(mean, cov) via Cholesky coloring of seeded standard
/// normals. Deterministic per seed.
Dataset gen_gaussian(std::size_t n, const Vector& mean, const Matrix& cov, std::uint64_t seed);

/// Gaussian base sample with the first floor(noise_fraction*n) rows replaced
/// by mean + noise_scale*u, u uniform on [-1,1]^m. noise_fraction = 0
/// reproduces gen_gaussian exactly.
Dataset gen_noisy_gaussian(std::size_t n, const Vector& mean, const Matrix& cov,
                           double noise_fraction, double noise_scale, std::uint64_t seed);

/// Minimum off-manifold gap |Parameter2 - Parameter1^2| for displaced rows,
/// as a fraction of the Parameter2 column standard deviation.
inline constexpr double kIpGapFraction = 1.0;

/// The 3D quadratic-manifold pair: Parameter1 and Parameter3 independent
/// standard normals, Parameter2 = Parameter1^2. The test set is a fresh
/// manifold sample whose first floor(ip_ratio*n_test) rows are pushed off the
/// manifold by redrawing Parameter2 as an independent squared standard
/// normal, rejected until the gap to Parameter1^2 lands between
/// kIpGapFraction and twice kIpGapFraction of the column spread; those rows
/// are labeled 1. The redraw keeps every column's marginal distribution and
/// all cross-covariances close to the manifold rows' (the cap bounds how far
/// the accepted redraws can drift from them), so the displaced rows stay
/// nearly invisible to covariance-based distances while their
/// Parameter1-Parameter2 relation is broken beyond doubt.
std::pair<Dataset, Dataset> gen_manifold3d(std::size_t n_train, std::size_t n_test,
                                           double ip_ratio, std::uint64_t seed);

/// Zero-mean Gaussian with diagonal covariance; the m variances are drawn
/// log-uniformly in [0.25, 4] from the seed before any samples.
Dataset gen_highdim_gaussian(std::size_t n, std::size_t m, std::uint64_t seed);

/// Per-column (x - min)/(max - min). Stores the bounds, keeps labels.
/// A constant column is an error.
Dataset normalize_minmax(const Dataset& ds);

/// Inverse of normalize_minmax using the stored bounds.
Dataset denormalize(const Dataset& ds);

/// Labels the top floor(delta2*n) rows by Mahalanobis distance as positives,
/// ties broken by row index. Distance is computed on feature_subset (all
/// columns when empty) against that submatrix's own mean and covariance.
Dataset label_hlp(const Dataset& ds, double delta2,
                  const std::vector<std::size_t>& feature_subset = {});

/// CSV with header `name1,...,namem[,label]`, decimal floats, LF endings.
/// Values round-trip exactly. Parse failures report the line number.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& ds, const std::string& path);

/// Provenance sidecar for a generated CSV: {"generator", "params", "seed"}.
/// params_json must be a serialized JSON object.
void write_generator_manifest(const std::string& path, const std::string& generator,
                              const std::string& params_json, std::uint64_t seed);

/// Round-trip-exact decimal rendering of a double (shortest form).
std::string format_double(double x);

} // namespace aeod

#endif
