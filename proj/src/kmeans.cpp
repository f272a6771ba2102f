#include "cohirf/kmeans.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "cohirf/rng.hpp"

namespace cohirf {

namespace {

void check_shape(const Matrix& x, int clusters, const char* who) {
    if (x.rows() < 1 || x.cols() < 1) {
        throw std::invalid_argument(std::string(who) + ": empty data matrix");
    }
    if (clusters < 1 || clusters > x.rows()) {
        throw std::invalid_argument(std::string(who) + ": clusters must be in [1, n], got " +
                                    std::to_string(clusters) + " for n = " +
                                    std::to_string(x.rows()));
    }
}

// Assign each row to its nearest centroid (squared Euclidean, ties to the
// lowest index). Returns the inertia of the assignment.
double assign_labels(const Matrix& x, const Matrix& centroids, std::vector<int>& labels) {
    const Eigen::VectorXd xsq = x.rowwise().squaredNorm();
    const Eigen::VectorXd csq = centroids.rowwise().squaredNorm();
    const Matrix cross = x * centroids.transpose();  // n x C
    const int n = static_cast<int>(x.rows());
    const int c = static_cast<int>(centroids.rows());
    labels.resize(n);
    double inertia = 0.0;
    for (int i = 0; i < n; ++i) {
        int best = 0;
        double best_d = xsq(i) - 2.0 * cross(i, 0) + csq(0);
        for (int k = 1; k < c; ++k) {
            double d = xsq(i) - 2.0 * cross(i, k) + csq(k);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        labels[i] = best;
        inertia += std::max(best_d, 0.0);  // clamp float cancellation noise
    }
    return inertia;
}

}  // namespace

InitCentroids kmeans_init(const Matrix& x, int clusters, std::uint64_t seed) {
    check_shape(x, clusters, "kmeans_init");
    const int n = static_cast<int>(x.rows());
    std::mt19937_64 rng(seed);

    InitCentroids out;
    out.centroids.resize(clusters, x.cols());

    std::uniform_int_distribution<int> first(0, n - 1);
    out.centroids.row(0) = x.row(first(rng));

    // d2[i]: squared distance to the nearest chosen center so far
    Eigen::VectorXd d2 = (x.rowwise() - out.centroids.row(0)).rowwise().squaredNorm();
    for (int k = 1; k < clusters; ++k) {
        double total = d2.sum();
        int pick;
        if (total <= 0.0) {
            // fewer distinct rows than clusters: fall back to uniform draws
            out.duplicates = true;
            pick = first(rng);
        } else {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng);
            double acc = 0.0;
            pick = -1;
            int last_positive = 0;
            for (int i = 0; i < n; ++i) {
                if (d2(i) > 0.0) last_positive = i;
                acc += d2(i);
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) pick = last_positive;  // summation-order rounding slack
        }
        out.centroids.row(k) = x.row(pick);
        d2 = d2.cwiseMin((x.rowwise() - out.centroids.row(k)).rowwise().squaredNorm());
    }
    return out;
}

KMeansResult kmeans_fit(const Matrix& x, int clusters, int max_iter, double tol,
                        std::uint64_t seed) {
    check_shape(x, clusters, "kmeans_fit");
    if (tol < 0.0) throw std::invalid_argument("kmeans_fit: tol must be >= 0");
    if (max_iter < 0) throw std::invalid_argument("kmeans_fit: max_iter must be >= 0");
    require_finite(x, "kmeans_fit");

    const int n = static_cast<int>(x.rows());
    const int d = static_cast<int>(x.cols());

    InitCentroids init = kmeans_init(x, clusters, seed);
    KMeansResult res;
    res.duplicate_init = init.duplicates;
    res.centroids = std::move(init.centroids);

    for (int it = 0; it < max_iter; ++it) {
        double inertia = assign_labels(x, res.centroids, res.labels);
        res.inertia_trace.push_back(inertia);

        Matrix next = Matrix::Zero(clusters, d);
        std::vector<int> counts(clusters, 0);
        for (int i = 0; i < n; ++i) {
            next.row(res.labels[i]) += x.row(i);
            ++counts[res.labels[i]];
        }

        // distance of each point to its assigned centroid, for reseeding
        Eigen::VectorXd own_d2;
        for (int k = 0; k < clusters; ++k) {
            if (counts[k] > 0) {
                next.row(k) /= static_cast<double>(counts[k]);
                continue;
            }
            // empty cluster: reseed at the point farthest from its centroid
            if (own_d2.size() == 0) {
                own_d2.resize(n);
                for (int i = 0; i < n; ++i) {
                    own_d2(i) = (x.row(i) - res.centroids.row(res.labels[i])).squaredNorm();
                }
            }
            int far = 0;
            own_d2.maxCoeff(&far);
            next.row(k) = x.row(far);
            own_d2(far) = -1.0;  // a second empty cluster takes the next-farthest
        }

        double shift = (next - res.centroids).rowwise().norm().maxCoeff();
        res.centroids = std::move(next);
        res.iterations_run = it + 1;
        if (shift <= tol) break;
    }

    res.inertia = assign_labels(x, res.centroids, res.labels);
    res.inertia_trace.push_back(res.inertia);
    return res;
}

}  // namespace cohirf
