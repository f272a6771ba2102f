#include "cohirf/datagen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "cohirf/rng.hpp"

namespace cohirf {

namespace {

void check_common(const SyntheticSpec& spec, const char* who) {
    if (spec.k < 1 || spec.n < spec.k) {
        throw std::invalid_argument(std::string(who) + ": need n >= k >= 1, got n = " +
                                    std::to_string(spec.n) + ", k = " + std::to_string(spec.k));
    }
    if (spec.p < 1) throw std::invalid_argument(std::string(who) + ": p must be >= 1");
    if (!(spec.delta > 0.0)) throw std::invalid_argument(std::string(who) + ": delta must be > 0");
}

// cluster sizes as even as possible, cluster i owning a contiguous block
Partition block_labels(int n, int k) {
    Partition labels(n);
    int base = n / k;
    int extra = n % k;
    int pos = 0;
    for (int c = 0; c < k; ++c) {
        int size = base + (c < extra ? 1 : 0);
        for (int s = 0; s < size; ++s) labels[pos++] = c;
    }
    return labels;
}

void add_gaussian_samples(SyntheticDataset& out, const SyntheticSpec& spec,
                          std::mt19937_64& rng) {
    out.labels = block_labels(spec.n, spec.k);
    out.x.resize(spec.n, spec.p);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < spec.n; ++i) {
        for (int j = 0; j < spec.p; ++j) {
            out.x(i, j) = out.centers(out.labels[i], j) + unit(rng);
        }
    }
}

}  // namespace

SyntheticDataset gen_hypercube(const SyntheticSpec& spec) {
    check_common(spec, "gen_hypercube");
    if (spec.p < 63 && static_cast<long long>(spec.k) > (1LL << spec.p)) {
        throw std::invalid_argument("gen_hypercube: k exceeds the 2^p available vertices");
    }
    auto rng = make_engine(spec.seed, streams::datagen);

    SyntheticDataset out;
    out.centers.resize(spec.k, spec.p);
    std::unordered_set<std::string> seen;
    std::bernoulli_distribution coin(0.5);
    std::string key(static_cast<std::size_t>(spec.p), '0');
    long long attempts = 0;
    for (int c = 0; c < spec.k;) {
        if (++attempts > 1000000LL) {
            throw std::invalid_argument("gen_hypercube: could not draw distinct vertices");
        }
        for (int j = 0; j < spec.p; ++j) key[static_cast<std::size_t>(j)] = coin(rng) ? '1' : '0';
        if (!seen.insert(key).second) continue;  // vertex already taken, redraw
        for (int j = 0; j < spec.p; ++j) {
            out.centers(c, j) = key[static_cast<std::size_t>(j)] == '1' ? spec.delta : 0.0;
        }
        ++c;
    }
    add_gaussian_samples(out, spec, rng);
    return out;
}

SyntheticDataset gen_separated_gaussians(const SyntheticSpec& spec) {
    check_common(spec, "gen_separated_gaussians");
    if (spec.p < spec.k - 1) {
        throw std::invalid_argument("gen_separated_gaussians: a " + std::to_string(spec.k) +
                                    "-point simplex needs p >= " + std::to_string(spec.k - 1));
    }
    auto rng = make_engine(spec.seed, streams::datagen);

    SyntheticDataset out;
    if (spec.k == 1) {
        out.centers = Matrix::Zero(1, spec.p);
        add_gaussian_samples(out, spec, rng);
        return out;
    }

    // regular simplex with edge delta: scale e_i - 1/k, then drop the zero
    // direction along (1,...,1) via SVD to get k x (k-1) coordinates
    const int k = spec.k;
    Matrix simplex = Matrix::Identity(k, k);
    simplex.array() -= 1.0 / k;
    simplex *= spec.delta / std::sqrt(2.0);
    Eigen::JacobiSVD<Matrix> svd(simplex, Eigen::ComputeThinU);
    Matrix coords = svd.matrixU().leftCols(k - 1) *
                    svd.singularValues().head(k - 1).asDiagonal();

    // random orthonormal frame embeds the simplex into R^p
    Matrix frame(spec.p, k - 1);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < spec.p; ++i) {
        for (int j = 0; j < k - 1; ++j) frame(i, j) = unit(rng);
    }
    Eigen::HouseholderQR<Matrix> qr(frame);
    Matrix q = qr.householderQ() * Matrix::Identity(spec.p, k - 1);

    out.centers = coords * q.transpose();
    add_gaussian_samples(out, spec, rng);
    return out;
}

SyntheticDataset gen_synthetic(const SyntheticSpec& spec) {
    return spec.kind == SyntheticKind::hypercube_vertices ? gen_hypercube(spec)
                                                          : gen_separated_gaussians(spec);
}

}  // namespace cohirf
