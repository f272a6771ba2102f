#pragma once

#include <cstdint>
#include <utility>

#include "cohirf/types.hpp"

namespace cohirf {

enum class SyntheticKind { hypercube_vertices, separated_gaussians };

struct SyntheticSpec {
    int n = 0;
    int p = 0;
    int k = 1;       // true cluster count
    double delta = 100.0;  // hypercube edge length / pairwise center distance
    SyntheticKind kind = SyntheticKind::hypercube_vertices;
    std::uint64_t seed = 0;
};

struct SyntheticDataset {
    Matrix x;
    Partition labels;
    Matrix centers;  // k x p
};

/// k distinct cluster centers drawn uniformly from the vertices {0, delta}^p,
/// unit-variance Gaussian clouds, cluster sizes as even as possible.
SyntheticDataset gen_hypercube(const SyntheticSpec& spec);

/// k centers forming a regular simplex with all pairwise distances equal to
/// delta, randomly rotated into R^p, unit-variance Gaussian clouds.
SyntheticDataset gen_separated_gaussians(const SyntheticSpec& spec);

/// Dispatch on spec.kind.
SyntheticDataset gen_synthetic(const SyntheticSpec& spec);

}  // namespace cohirf
