#pragma once

#include <random>

#include "cohirf/types.hpp"

namespace cohirf {

/// Representative-selection criterion for a consensus group.
struct MedoidMode {
    enum class Kind {
        abs_inner_argmin,         // argmin_i sum_j |<x_i, x_j>|
        abs_inner_argmin_capped,  // same objective, summed over <= cap sampled rows
        rbf_argmax,               // argmax_i sum_j exp(-gamma * |x_i - x_j|^2)
        centroid,                 // member nearest to the group mean
    };

    Kind kind = Kind::abs_inner_argmin;
    int cap = 1000;
    /// RBF bandwidth; 0 picks 1/p, overridden by gamma_median.
    double gamma = 0.0;
    /// Use 1/median(pairwise squared distance) as the RBF bandwidth.
    bool gamma_median = false;
    /// Include the j = i term of the objective sums.
    bool include_self = false;
    /// Flip the abs-inner criterion to argmax (most mutually aligned member).
    bool maximize = false;

    static MedoidMode abs_inner() { return {}; }
    static MedoidMode abs_inner_max() {
        MedoidMode m;
        m.maximize = true;
        return m;
    }
    static MedoidMode capped(int cap = 1000) {
        MedoidMode m;
        m.kind = Kind::abs_inner_argmin_capped;
        m.cap = cap;
        return m;
    }
    static MedoidMode rbf(double gamma = 0.0) {
        MedoidMode m;
        m.kind = Kind::rbf_argmax;
        m.gamma = gamma;
        return m;
    }
    static MedoidMode rbf_median() {
        MedoidMode m;
        m.kind = Kind::rbf_argmax;
        m.gamma_median = true;
        return m;
    }
    static MedoidMode centroid_mode() {
        MedoidMode m;
        m.kind = Kind::centroid;
        return m;
    }
};

/// Index of the representative row of `rows` (m x p) under `mode`.
/// Ties break to the lowest index; rng is consumed only by the capped mode.
int select_medoid(const Matrix& rows, const MedoidMode& mode, std::mt19937_64& rng);

}  // namespace cohirf
