#include "aeod/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <system_error>

#include "json.hpp"

#include "aeod/errors.hpp"
#include "aeod/linalg.hpp"
#include "aeod/rng.hpp"

namespace aeod {

namespace {

std::vector<std::string> default_names(std::size_t m) {
    std::vector<std::string> names(m);
    for (std::size_t j = 0; j < m; ++j) names[j] = "c" + std::to_string(j + 1);
    return names;
}

// mean + L z, one row per call sequence; draws m normals per row.
Matrix colored_gaussian(std::size_t n, const Vector& mean, const Matrix& chol,
                        RandomStream& rng) {
    const std::size_t m = mean.size();
    Matrix out(n, m);
    Vector z(m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) z[j] = rng.normal();
        auto row = out.row(i);
        for (std::size_t j = 0; j < m; ++j) {
            double acc = mean[j];
            for (std::size_t k = 0; k <= j; ++k) acc += chol(j, k) * z[k];
            row[j] = acc;
        }
    }
    return out;
}

double column_stddev(const Matrix& a, std::size_t col) {
    const std::size_t n = a.rows();
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += a(i, col);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a(i, col) - mean;
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(n));
}

} // namespace

Dataset gen_gaussian(std::size_t n, const Vector& mean, const Matrix& cov, std::uint64_t seed) {
    if (n < 1) throw ConfigError("gen_gaussian: n must be at least 1");
    const std::size_t m = mean.size();
    if (cov.rows() != m || cov.cols() != m)
        throw ContractViolation("gen_gaussian: covariance shape does not match mean");

    const Matrix chol = cholesky(cov);
    RandomStream rng(seed);

    Dataset ds;
    ds.samples = colored_gaussian(n, mean, chol, rng);
    ds.column_names = default_names(m);
    return ds;
}

Dataset gen_noisy_gaussian(std::size_t n, const Vector& mean, const Matrix& cov,
                           double noise_fraction, double noise_scale, std::uint64_t seed) {
    if (noise_fraction < 0.0 || noise_fraction > 0.2)
        throw ConfigError("gen_noisy_gaussian: noise_fraction must be in [0, 0.2]");

    Dataset ds = gen_gaussian(n, mean, cov, seed);
    const std::size_t m = mean.size();
    const auto n_noise = static_cast<std::size_t>(noise_fraction * static_cast<double>(n));

    // The base sample consumed n*m normals; contamination continues the same
    // stream so noise_fraction = 0 leaves the dataset untouched.
    RandomStream rng(seed);
    for (std::size_t i = 0; i < n * m; ++i) rng.normal();
    for (std::size_t i = 0; i < n_noise; ++i) {
        auto row = ds.samples.row(i);
        for (std::size_t j = 0; j < m; ++j)
            row[j] = mean[j] + noise_scale * rng.uniform(-1.0, 1.0);
    }
    return ds;
}

std::pair<Dataset, Dataset> gen_manifold3d(std::size_t n_train, std::size_t n_test,
                                           double ip_ratio, std::uint64_t seed) {
    if (ip_ratio <= 0.0 || ip_ratio >= 0.5)
        throw ConfigError("gen_manifold3d: ip_ratio must be in (0, 0.5)");
    if (n_train < 2 || n_test < 2)
        throw ConfigError("gen_manifold3d: need at least 2 train and test rows");

    RandomStream rng(seed);
    const std::vector<std::string> names = {"Parameter1", "Parameter2", "Parameter3"};

    auto manifold_sample = [&rng](std::size_t n) {
        Matrix s(n, 3);
        for (std::size_t i = 0; i < n; ++i) {
            const double p1 = rng.normal();
            const double p3 = rng.normal();
            auto row = s.row(i);
            row[0] = p1;
            row[1] = p1 * p1;
            row[2] = p3;
        }
        return s;
    };

    Dataset train;
    train.samples = manifold_sample(n_train);
    train.column_names = names;

    Dataset test;
    test.samples = manifold_sample(n_test);
    test.column_names = names;
    test.labels.assign(n_test, 0);

    // Off-manifold rows keep the marginal distribution of Parameter2 (an
    // independent squared normal draw) so their column variances and
    // cross-covariances match the manifold rows and covariance-based
    // distances cannot single them out; only the Parameter1-Parameter2
    // relation breaks. The rejection floor keeps the break itself
    // unambiguous relative to the column spread.
    const double sigma2 = column_stddev(test.samples, 1);
    const double gap_floor = kIpGapFraction * sigma2;
    const double gap_cap = 2.0 * gap_floor;
    const auto n_ip = static_cast<std::size_t>(ip_ratio * static_cast<double>(n_test));
    for (std::size_t i = 0; i < n_ip; ++i) {
        const double on_curve = test.samples(i, 0) * test.samples(i, 0);
        double p2 = 0.0;
        double gap = 0.0;
        do {
            const double q = rng.normal();
            p2 = q * q;
            gap = std::abs(p2 - on_curve);
        } while (gap < gap_floor || gap > gap_cap);
        test.samples(i, 1) = p2;
        test.labels[i] = 1;
    }
    return {std::move(train), std::move(test)};
}

Dataset gen_highdim_gaussian(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 2) throw ConfigError("gen_highdim_gaussian: m must be at least 2");
    if (n < 1) throw ConfigError("gen_highdim_gaussian: n must be at least 1");

    RandomStream rng(seed);
    Vector stddevs(m);
    const double log_lo = std::log(0.25);
    const double log_hi = std::log(4.0);
    for (std::size_t j = 0; j < m; ++j)
        stddevs[j] = std::sqrt(std::exp(rng.uniform(log_lo, log_hi)));

    Dataset ds;
    ds.samples = Matrix(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = ds.samples.row(i);
        for (std::size_t j = 0; j < m; ++j) row[j] = stddevs[j] * rng.normal();
    }
    ds.column_names = default_names(m);
    return ds;
}

Dataset normalize_minmax(const Dataset& ds) {
    const std::size_t n = ds.samples.rows();
    const std::size_t m = ds.samples.cols();
    if (n == 0) throw DataError("normalize_minmax: empty dataset");

    Dataset out = ds;
    out.norm_params.min.assign(m, 0.0);
    out.norm_params.max.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double lo = ds.samples(0, j);
        double hi = lo;
        for (std::size_t i = 1; i < n; ++i) {
            lo = std::min(lo, ds.samples(i, j));
            hi = std::max(hi, ds.samples(i, j));
        }
        if (!(hi > lo)) {
            const std::string name =
                j < ds.column_names.size() ? ds.column_names[j] : std::to_string(j + 1);
            throw DataError("normalize_minmax: column " + name + " is constant");
        }
        out.norm_params.min[j] = lo;
        out.norm_params.max[j] = hi;
        const double inv = 1.0 / (hi - lo);
        for (std::size_t i = 0; i < n; ++i)
            out.samples(i, j) = (ds.samples(i, j) - lo) * inv;
    }
    out.normalized = true;
    return out;
}

Dataset denormalize(const Dataset& ds) {
    if (!ds.normalized)
        throw ContractViolation("denormalize: dataset is not normalized");
    const std::size_t m = ds.samples.cols();
    if (ds.norm_params.min.size() != m || ds.norm_params.max.size() != m)
        throw ContractViolation("denormalize: normalization bounds missing");

    Dataset out = ds;
    for (std::size_t j = 0; j < m; ++j) {
        const double lo = ds.norm_params.min[j];
        const double span = ds.norm_params.max[j] - lo;
        for (std::size_t i = 0; i < ds.samples.rows(); ++i)
            out.samples(i, j) = ds.samples(i, j) * span + lo;
    }
    out.normalized = false;
    out.norm_params = NormParams{};
    return out;
}

Dataset label_hlp(const Dataset& ds, double delta2,
                  const std::vector<std::size_t>& feature_subset) {
    if (delta2 <= 0.0 || delta2 >= 0.5)
        throw ConfigError("label_hlp: delta2 must be in (0, 0.5)");
    const std::size_t n = ds.samples.rows();
    const std::size_t m = ds.samples.cols();

    std::vector<std::size_t> cols = feature_subset;
    if (cols.empty()) {
        cols.resize(m);
        std::iota(cols.begin(), cols.end(), 0);
    }
    for (std::size_t c : cols)
        if (c >= m) throw ConfigError("label_hlp: feature index out of range");

    Matrix sub(n, cols.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) sub(i, k) = ds.samples(i, cols[k]);

    const Vector mean = column_means(sub);
    const SymmetricEigen eig = sym_eigen(covariance(sub));

    std::vector<std::pair<double, std::size_t>> ranked(n);
    for (std::size_t i = 0; i < n; ++i)
        ranked[i] = {mahalanobis_sq(sub.row(i), mean, eig), i};
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    Dataset out = ds;
    out.labels.assign(n, 0);
    const auto n_pos = static_cast<std::size_t>(delta2 * static_cast<double>(n));
    for (std::size_t k = 0; k < n_pos; ++k) out.labels[ranked[k].second] = 1;
    return out;
}

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc())
        throw ContractViolation("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw DataError("csv line " + std::to_string(line_no) + ": cannot parse '" + cell +
                        "' as a number");
    return value;
}

} // namespace

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> header = split_line(line);
    for (const auto& name : header)
        if (name.empty()) throw DataError("csv line 1: empty column name");

    bool has_labels = header.back() == "label";
    const std::size_t m = has_labels ? header.size() - 1 : header.size();
    if (m == 0) throw DataError("csv line 1: no feature columns");

    Dataset ds;
    ds.column_names.assign(header.begin(), header.begin() + static_cast<std::ptrdiff_t>(m));

    Vector values;
    std::size_t n = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw DataError("csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " cells, found " +
                            std::to_string(cells.size()));
        for (std::size_t j = 0; j < m; ++j) values.push_back(parse_cell(cells[j], line_no));
        if (has_labels) {
            const double lab = parse_cell(cells[m], line_no);
            if (lab != 0.0 && lab != 1.0)
                throw DataError("csv line " + std::to_string(line_no) +
                                ": label must be 0 or 1");
            ds.labels.push_back(static_cast<int>(lab));
        }
        ++n;
    }
    if (n == 0) throw DataError(path + ": no data rows");
    ds.samples = Matrix::from_data(n, m, std::move(values));
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    const std::size_t m = ds.samples.cols();
    if (ds.column_names.size() != m)
        throw ContractViolation("save_csv: column_names do not match sample width");
    if (ds.has_labels() && ds.labels.size() != ds.samples.rows())
        throw ContractViolation("save_csv: labels do not match sample count");

    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);

    for (std::size_t j = 0; j < m; ++j) {
        if (j > 0) out << ',';
        out << ds.column_names[j];
    }
    if (ds.has_labels()) out << ",label";
    out << '\n';

    for (std::size_t i = 0; i < ds.samples.rows(); ++i) {
        auto row = ds.samples.row(i);
        for (std::size_t j = 0; j < m; ++j) {
            if (j > 0) out << ',';
            out << format_double(row[j]);
        }
        if (ds.has_labels()) out << ',' << ds.labels[i];
        out << '\n';
    }
    if (!out) throw DataError("write failed for " + path);
}

void write_generator_manifest(const std::string& path, const std::string& generator,
                              const std::string& params_json, std::uint64_t seed) {
    nlohmann::json params;
    try {
        params = nlohmann::json::parse(params_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw ContractViolation(std::string("generator manifest params: ") + e.what());
    }
    nlohmann::json doc;
    doc["generator"] = generator;
    doc["params"] = params;
    doc["seed"] = seed;

    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << doc.dump(2) << '\n';
}

} // namespace aeod
