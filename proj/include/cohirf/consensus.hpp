#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cohirf/types.hpp"

namespace cohirf {

/// Cluster assignment matrix P: entries(i, r) is the canonical K-Means label
/// (1-based, first-appearance ordered per column) of sample i in repetition r.
struct AssignmentMatrix {
    Eigen::MatrixXi entries;

    int n_rows() const { return static_cast<int>(entries.rows()); }
    int repetitions() const { return static_cast<int>(entries.cols()); }
};

/// Grouping of samples by identical assignment rows.
struct ConsensusGrouping {
    /// codes[i]: group id of sample i, contiguous from 0 in order of first
    /// appearance of each distinct row.
    std::vector<int> codes;
    int n_new = 0;
    /// members[c]: sample indices of group c, ascending.
    std::vector<std::vector<int>> members;
};

/// q distinct feature indices in [0, p), sorted, uniform without replacement.
std::vector<int> sample_features(int p, int q, std::mt19937_64& rng);

/// Relabel by order of first appearance scanning top-down: the first row's
/// label becomes 1, the next unseen label becomes 2, and so on.
std::vector<int> canonicalize_labels(const std::vector<int>& column);

/// Group samples whose assignment rows are identical across all repetitions.
ConsensusGrouping encode_rows(const AssignmentMatrix& p);

/// Parameters of one consensus step shared by the R repetitions.
struct RepetitionParams {
    int q = 0;               // features per subsample (ignored when full_features)
    int repetitions = 1;     // R
    int clusters = 2;        // C
    bool full_features = false;
    int kmeans_max_iter = 300;
    double kmeans_tol = 1e-4;
};

/// Run R feature-subsampled K-Means repetitions on x and collect canonical
/// labels column by column. Repetition r draws its feature subset and K-Means
/// seed from (master_seed, step, r), so the result is independent of
/// execution order.
AssignmentMatrix build_assignments(const Matrix& x, const RepetitionParams& params,
                                   std::uint64_t master_seed, int step);

}  // namespace cohirf
