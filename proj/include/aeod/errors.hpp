#ifndef AEOD_ERRORS_HPP
#define AEOD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aeod {

/// Bad configuration: invalid hyperparameters, flags, or option combinations.
/// CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad or degenerate data: unparsable files, too few rows, constant columns.
/// CLI exit code 3.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure: divergence, non-convergence, singular covariance,
/// non-positive-definite factorization. CLI exit code 4.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An operation was called outside its contract (shape mismatch, asymmetric
/// input to a symmetric solver, stale cache). Treated as a configuration
/// problem at the CLI boundary (exit code 2).
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace aeod

#endif
