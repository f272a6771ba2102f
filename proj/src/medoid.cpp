#include "cohirf/medoid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cohirf/rng.hpp"

namespace cohirf {

namespace {

constexpr int kBlock = 256;  // row block for the Gram products

// scores[i] = sum over j in subset (j != i unless include_self) of |<x_i, x_j>|
Eigen::VectorXd abs_inner_scores(const Matrix& rows, const std::vector<int>& subset,
                                 bool include_self) {
    const int m = static_cast<int>(rows.rows());
    Matrix sub(static_cast<int>(subset.size()), rows.cols());
    for (std::size_t j = 0; j < subset.size(); ++j) sub.row(static_cast<int>(j)) = rows.row(subset[j]);

    // pos_in_subset[i] >= 0 marks rows whose self-term shows up in the sum
    std::vector<int> pos_in_subset(m, -1);
    for (std::size_t j = 0; j < subset.size(); ++j) pos_in_subset[subset[j]] = static_cast<int>(j);

    Eigen::VectorXd scores(m);
    for (int start = 0; start < m; start += kBlock) {
        int len = std::min(kBlock, m - start);
        Matrix g = rows.middleRows(start, len) * sub.transpose();  // len x |subset|
        for (int i = 0; i < len; ++i) {
            double s = g.row(i).cwiseAbs().sum();
            int self = pos_in_subset[start + i];
            if (!include_self && self >= 0) s -= std::abs(g(i, self));
            scores(start + i) = s;
        }
    }
    return scores;
}

Eigen::VectorXd rbf_scores(const Matrix& rows, double gamma, bool include_self) {
    const int m = static_cast<int>(rows.rows());
    const Eigen::VectorXd sq = rows.rowwise().squaredNorm();
    Eigen::VectorXd scores = Eigen::VectorXd::Zero(m);
    for (int start = 0; start < m; start += kBlock) {
        int len = std::min(kBlock, m - start);
        Matrix g = rows.middleRows(start, len) * rows.transpose();  // len x m
        for (int i = 0; i < len; ++i) {
            // the self term is exp(0) = 1 exactly; running it through the
            // Gram form would add rounding noise and, worse, wipe out a tiny
            // neighbour mass through 1 + s - 1 cancellation
            double s = 0.0;
            for (int j = 0; j < m; ++j) {
                if (j == start + i) continue;
                double d2 = std::max(sq(start + i) + sq(j) - 2.0 * g(i, j), 0.0);
                s += std::exp(-gamma * d2);
            }
            if (include_self) s += 1.0;
            scores(start + i) = s;
        }
    }
    return scores;
}

double median_sq_distance(const Matrix& rows) {
    const int m = static_cast<int>(rows.rows());
    std::vector<double> d2;
    d2.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            d2.push_back((rows.row(i) - rows.row(j)).squaredNorm());
        }
    }
    auto mid = d2.begin() + static_cast<std::ptrdiff_t>(d2.size() / 2);
    std::nth_element(d2.begin(), mid, d2.end());
    return *mid;
}

int extreme_index(const Eigen::VectorXd& scores, bool maximize) {
    int best = 0;
    for (int i = 1; i < scores.size(); ++i) {
        if (maximize ? scores(i) > scores(best) : scores(i) < scores(best)) best = i;
    }
    return best;  // ties keep the lowest index
}

}  // namespace

int select_medoid(const Matrix& rows, const MedoidMode& mode, std::mt19937_64& rng) {
    const int m = static_cast<int>(rows.rows());
    if (m < 1) throw std::invalid_argument("select_medoid: empty group");
    require_finite(rows, "select_medoid");
    if (m == 1) return 0;

    // A pair scores identically under every pairwise objective, so the
    // blocked products must not be allowed to break the tie with rounding
    // noise; only a self-term can separate the two.
    const bool capped_below =
        mode.kind == MedoidMode::Kind::abs_inner_argmin_capped && mode.cap < m;
    if (m == 2 && !capped_below) {
        if (mode.include_self && mode.kind != MedoidMode::Kind::rbf_argmax &&
            mode.kind != MedoidMode::Kind::centroid) {
            double cross = std::abs(rows.row(0).dot(rows.row(1)));
            double s0 = cross + rows.row(0).squaredNorm();
            double s1 = cross + rows.row(1).squaredNorm();
            return (mode.maximize ? s1 > s0 : s1 < s0) ? 1 : 0;
        }
        return 0;
    }

    switch (mode.kind) {
        case MedoidMode::Kind::abs_inner_argmin:
        case MedoidMode::Kind::abs_inner_argmin_capped: {
            if (mode.kind == MedoidMode::Kind::abs_inner_argmin_capped && mode.cap < 1) {
                throw std::invalid_argument("select_medoid: cap must be >= 1");
            }
            std::vector<int> subset;
            if (mode.kind == MedoidMode::Kind::abs_inner_argmin_capped && mode.cap < m) {
                subset = sample_without_replacement(m, mode.cap, rng);
            } else {
                subset.resize(m);
                for (int i = 0; i < m; ++i) subset[i] = i;
            }
            return extreme_index(abs_inner_scores(rows, subset, mode.include_self),
                                 mode.maximize);
        }
        case MedoidMode::Kind::rbf_argmax: {
            double gamma = mode.gamma;
            if (mode.gamma_median) {
                double med = median_sq_distance(rows);
                gamma = med > 0.0 ? 1.0 / med : 1.0;
            } else if (gamma <= 0.0) {
                gamma = 1.0 / static_cast<double>(rows.cols());
            }
            return extreme_index(rbf_scores(rows, gamma, mode.include_self), true);
        }
        case MedoidMode::Kind::centroid: {
            Eigen::RowVectorXd mean = rows.colwise().mean();
            Eigen::VectorXd d2 = (rows.rowwise() - mean).rowwise().squaredNorm();
            return extreme_index(d2, false);
        }
    }
    throw std::invalid_argument("select_medoid: unknown mode");
}

}  // namespace cohirf
