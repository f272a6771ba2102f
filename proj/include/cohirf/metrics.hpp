#pragma once

#include <cstdint>
#include <vector>

#include "cohirf/types.hpp"

namespace cohirf {

/// Cross-tabulation of two partitions over the same n samples.
struct ContingencyTable {
    std::vector<std::vector<std::int64_t>> counts;  // clusters of a x clusters of b
    std::vector<std::int64_t> row_sums;
    std::vector<std::int64_t> col_sums;
    std::int64_t total = 0;
};

ContingencyTable contingency_table(const Partition& a, const Partition& b);

/// Fraction of sample pairs on which the two partitions agree
/// (co-clustered in both or separated in both). In [0, 1].
double rand_index(const Partition& a, const Partition& b);

/// Hubert-Arabie adjusted Rand index, in [-0.5, 1]; 0 when the chance
/// correction is degenerate (both partitions trivial).
double adjusted_rand_index(const Partition& a, const Partition& b);

}  // namespace cohirf
