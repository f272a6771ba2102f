#pragma once

#include <cstdint>
#include <vector>

#include "cohirf/types.hpp"

namespace cohirf {

struct KMeansResult {
    /// labels[i] in [0, C), assignment of row i to its nearest centroid.
    std::vector<int> labels;
    /// C x d centroid matrix.
    Matrix centroids;
    /// Sum of squared Euclidean distances to the assigned centroid.
    double inertia = 0.0;
    int iterations_run = 0;
    /// Set when fewer than C distinct rows forced duplicate initial centers.
    bool duplicate_init = false;
    /// Inertia of the assignment at each Lloyd iteration plus the final one;
    /// non-increasing by construction.
    std::vector<double> inertia_trace;
};

struct InitCentroids {
    Matrix centroids;  // C x d
    bool duplicates = false;
};

/// k-means++ seeding: first center uniform, each subsequent center drawn with
/// probability proportional to the squared distance to the nearest chosen
/// center. Falls back to duplicate rows (flagged) when the data has fewer
/// than C distinct rows.
InitCentroids kmeans_init(const Matrix& x, int clusters, std::uint64_t seed);

/// Lloyd's algorithm with squared-Euclidean assignment. Stops when the
/// largest centroid movement drops to tol or after max_iter iterations.
/// A centroid that loses all its points is reseeded at the point farthest
/// from its assigned centroid. Deterministic per seed.
KMeansResult kmeans_fit(const Matrix& x, int clusters, int max_iter, double tol,
                        std::uint64_t seed);

}  // namespace cohirf
