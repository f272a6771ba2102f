#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cohirf/medoid.hpp"
#include "cohirf/types.hpp"

namespace cohirf {

/// Hyperparameters of one CoHiRF fit.
struct CohirfConfig {
    /// Features drawn per repetition; must satisfy 2 <= q <= p unless
    /// full_features is set.
    int q = 0;
    int repetitions = 4;  // R
    int clusters = 3;     // C, internal K-Means cluster count
    MedoidMode medoid_mode = MedoidMode::abs_inner();
    /// Mini-batch size B: each step runs the consensus on a uniform subset of
    /// min(B, n_curr) current samples, the rest pass through unchanged.
    std::optional<int> sample_batch;
    /// Skip feature sampling and cluster on all p columns.
    bool full_features = false;
    std::uint64_t seed = 0;
    int kmeans_max_iter = 300;
    double kmeans_tol = 1e-4;
    /// Hard cap on agglomeration steps; hitting it flags the result.
    int max_steps = 100;
};

/// Medoid-lineage forest. Node ids 0..n-1 are the sample leaves; each
/// agglomeration step appends one node per consensus group whose children
/// are that group's nodes from the previous step.
struct HierarchyNode {
    int id = -1;
    int step = 0;          // 0 for leaves
    int medoid_sample = -1;  // original sample id of the representative
    int member_count = 1;  // leaves underneath
    int parent = -1;
    std::vector<int> children;
};

struct HierarchyTree {
    std::vector<HierarchyNode> nodes;
    std::vector<int> roots;  // the surviving nodes of the final step
    int n_samples = 0;
};

struct CohirfResult {
    /// Final labels of the n original samples, values in [0, n_clusters).
    Partition labels;
    int n_clusters = 0;
    HierarchyTree hierarchy;
    int steps_run = 0;
    /// [n^(0), n^(1), ..., n^(e*)]; non-increasing, last two equal on normal
    /// termination.
    std::vector<int> per_step_counts;
    /// Set when the max_steps guard fired before the counts stabilized.
    bool step_cap_hit = false;
};

/// Iterative consensus clustering: repeat (feature-sample -> K-Means x R ->
/// row consensus -> medoid per group) on the surviving representatives until
/// the group count stops shrinking, then map every original sample to the
/// root its lineage reaches. Honors config.sample_batch when present.
CohirfResult cohirf_fit(const Matrix& x, const CohirfConfig& config);

/// Mini-batch variant; requires config.sample_batch. With B >= n this is
/// identical to cohirf_fit per seed.
CohirfResult cohirf_sampled_fit(const Matrix& x, const CohirfConfig& config);

/// Recompute the flat partition from the hierarchy alone: each sample's label
/// is the index of its root ancestor. Throws hierarchy_error on orphaned or
/// multiply-owned leaves.
Partition reconstruct_final_clusters(const HierarchyTree& hierarchy);

}  // namespace cohirf
