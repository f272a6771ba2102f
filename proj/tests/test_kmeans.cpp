#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"

#include "cohirf/kmeans.hpp"
#include "support/oracles.hpp"

using cohirf::Matrix;
using cohirf::kmeans_fit;
using cohirf::kmeans_init;

namespace {

Matrix random_matrix(int n, int d, std::mt19937_64& rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    Matrix x(n, d);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) x(i, j) = unit(rng);
    }
    return x;
}

}  // namespace

TEST_CASE("single cluster reduces to the column means") {
    Matrix x(4, 3);
    x << 1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0, 2;
    auto res = kmeans_fit(x, 1, 50, 0.0, 42);
    for (int label : res.labels) CHECK(label == 0);
    Eigen::RowVectorXd mean = x.colwise().mean();
    CHECK((res.centroids.row(0) - mean).norm() == doctest::Approx(0.0).epsilon(1e-12));
    double scatter = (x.rowwise() - mean).rowwise().squaredNorm().sum();
    CHECK(res.inertia == doctest::Approx(scatter).epsilon(1e-12));
}

TEST_CASE("two separated pairs split into the minimal-inertia partition") {
    Matrix x(4, 1);
    x << 0.0, 0.1, 10.0, 10.1;
    for (std::uint64_t seed : {0, 1, 2, 3, 4}) {
        auto res = kmeans_fit(x, 2, 100, 1e-6, seed);
        auto best = oracle::best_partition_exhaustive(x, 2);
        CHECK(oracle::same_partition(res.labels, best));
        CHECK(res.labels[0] == res.labels[1]);
        CHECK(res.labels[2] == res.labels[3]);
        CHECK(res.labels[0] != res.labels[2]);
    }
}

TEST_CASE("C equal to n gives zero inertia and one point per cluster") {
    std::mt19937_64 rng(7);
    Matrix x = random_matrix(5, 3, rng);
    auto res = kmeans_fit(x, 5, 50, 0.0, 9);
    CHECK(res.inertia == doctest::Approx(0.0).epsilon(1e-15));
    std::set<int> seen(res.labels.begin(), res.labels.end());
    CHECK(seen.size() == 5);
}

TEST_CASE("init picks the distinct rows when they number exactly C") {
    Matrix x(6, 2);
    x << 0, 0, 5, 5, 9, 1, 0, 0, 5, 5, 9, 1;  // 3 distinct rows, twice each
    auto init = kmeans_init(x, 3, 13);
    CHECK(!init.duplicates);
    std::set<std::pair<double, double>> got;
    for (int k = 0; k < 3; ++k) got.emplace(init.centroids(k, 0), init.centroids(k, 1));
    std::set<std::pair<double, double>> want = {{0, 0}, {5, 5}, {9, 1}};
    CHECK(got == want);
}

TEST_CASE("the ++ rule forces the far point as second center") {
    Matrix x(3, 1);
    x << 0.0, 0.0, 100.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto init = kmeans_init(x, 2, seed);
        std::set<double> centers = {init.centroids(0, 0), init.centroids(1, 0)};
        CHECK(centers == std::set<double>{0.0, 100.0});
    }
}

TEST_CASE("fewer distinct rows than C falls back with a flag") {
    Matrix x(3, 2);
    x << 4, 4, 4, 4, 4, 4;
    auto init = kmeans_init(x, 2, 3);
    CHECK(init.duplicates);
    auto res = kmeans_fit(x, 2, 50, 0.0, 3);
    CHECK(res.duplicate_init);
    CHECK(res.inertia == doctest::Approx(0.0));
    for (int label : res.labels) CHECK(label < 2);
}

TEST_CASE("identical seeds give bit-identical results") {
    std::mt19937_64 rng(21);
    Matrix x = random_matrix(40, 6, rng);
    auto a = kmeans_fit(x, 4, 100, 1e-4, 77);
    auto b = kmeans_fit(x, 4, 100, 1e-4, 77);
    CHECK(a.labels == b.labels);
    CHECK(a.centroids.cwiseEqual(b.centroids).all());
    CHECK(a.inertia == b.inertia);
    CHECK(a.iterations_run == b.iterations_run);
    auto c = kmeans_init(x, 4, 123);
    auto d = kmeans_init(x, 4, 123);
    CHECK(c.centroids.cwiseEqual(d.centroids).all());
}

TEST_CASE("inertia trace never increases") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix x = random_matrix(60, 4, rng);
        auto res = kmeans_fit(x, 3, 100, 0.0, trial);
        for (std::size_t t = 1; t < res.inertia_trace.size(); ++t) {
            CHECK(res.inertia_trace[t] <= res.inertia_trace[t - 1] + 1e-9);
        }
        CHECK(res.iterations_run <= 100);
    }
}

TEST_CASE("no single-point reassignment improves the final inertia") {
    std::mt19937_64 rng(41);
    Matrix x = random_matrix(50, 3, rng);
    auto res = kmeans_fit(x, 4, 200, 0.0, 5);
    for (int i = 0; i < 50; ++i) {
        double own = (x.row(i) - res.centroids.row(res.labels[i])).squaredNorm();
        for (int k = 0; k < 4; ++k) {
            CHECK(own <= (x.row(i) - res.centroids.row(k)).squaredNorm() + 1e-9);
        }
    }
}

TEST_CASE("tol zero converges to a Lloyd fixed point") {
    std::mt19937_64 rng(51);
    Matrix x = random_matrix(30, 2, rng);
    auto res = kmeans_fit(x, 3, 500, 0.0, 8);
    REQUIRE(res.iterations_run < 500);
    // one more update step moves nothing
    Matrix next = Matrix::Zero(3, 2);
    std::vector<int> counts(3, 0);
    for (int i = 0; i < 30; ++i) {
        next.row(res.labels[i]) += x.row(i);
        ++counts[res.labels[i]];
    }
    for (int k = 0; k < 3; ++k) {
        if (counts[k] > 0) next.row(k) /= counts[k];
    }
    CHECK((next - res.centroids).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("invalid arguments are rejected") {
    Matrix x(3, 1);
    x << 1, 2, 3;
    CHECK_THROWS_AS(kmeans_fit(x, 4, 10, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(kmeans_fit(x, 0, 10, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(kmeans_fit(x, 2, 10, -1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(kmeans_init(x, 4, 0), std::invalid_argument);
    Matrix bad(2, 1);
    bad << 1.0, std::nan("");
    CHECK_THROWS_AS(kmeans_fit(bad, 1, 10, 0.0, 0), cohirf::invalid_data_error);
}
