#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cohirf {

/// Dense data matrix, rows are samples.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Flat cluster labeling: labels[i] is the cluster id of sample i.
using Partition = std::vector<int>;

/// Raised when input data contains non-finite entries or otherwise cannot
/// be interpreted as a valid sample matrix.
class invalid_data_error : public std::runtime_error {
public:
    explicit invalid_data_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by dataset loaders; the message carries the row/column location.
class load_error : public std::runtime_error {
public:
    explicit load_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a hierarchy fails an internal consistency check
/// (orphan leaves, leaves reachable from two roots, ...).
class hierarchy_error : public std::logic_error {
public:
    explicit hierarchy_error(const std::string& what) : std::logic_error(what) {}
};

inline void require_finite(const Matrix& x, const char* who) {
    if (!x.allFinite()) {
        throw invalid_data_error(std::string(who) + ": data contains non-finite entries");
    }
}

}  // namespace cohirf
