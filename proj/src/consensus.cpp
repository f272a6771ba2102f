#include "cohirf/consensus.hpp"

#include <cstring>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "cohirf/kmeans.hpp"
#include "cohirf/rng.hpp"

namespace cohirf {

std::vector<int> sample_features(int p, int q, std::mt19937_64& rng) {
    if (q < 1 || q > p) {
        throw std::invalid_argument("sample_features: q must be in [1, p], got q = " +
                                    std::to_string(q) + ", p = " + std::to_string(p));
    }
    return sample_without_replacement(p, q, rng);
}

std::vector<int> canonicalize_labels(const std::vector<int>& column) {
    std::unordered_map<int, int> order;
    std::vector<int> out(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        auto [it, inserted] = order.emplace(column[i], static_cast<int>(order.size()) + 1);
        out[i] = it->second;
    }
    return out;
}

ConsensusGrouping encode_rows(const AssignmentMatrix& p) {
    const int n = p.n_rows();
    const int r = p.repetitions();
    ConsensusGrouping g;
    g.codes.resize(n);

    // key = raw bytes of the row tuple; full-tuple keys cannot collide
    std::unordered_map<std::string, int> seen;
    seen.reserve(static_cast<std::size_t>(n));
    std::string key(static_cast<std::size_t>(r) * sizeof(int), '\0');
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < r; ++j) {
            int v = p.entries(i, j);
            std::memcpy(key.data() + static_cast<std::size_t>(j) * sizeof(int), &v, sizeof(int));
        }
        auto [it, inserted] = seen.emplace(key, static_cast<int>(seen.size()));
        g.codes[i] = it->second;
        if (inserted) g.members.emplace_back();
        g.members[it->second].push_back(i);
    }
    g.n_new = static_cast<int>(seen.size());
    return g;
}

AssignmentMatrix build_assignments(const Matrix& x, const RepetitionParams& params,
                                   std::uint64_t master_seed, int step) {
    const int n = static_cast<int>(x.rows());
    const int p = static_cast<int>(x.cols());
    if (params.repetitions < 1) {
        throw std::invalid_argument("build_assignments: repetitions must be >= 1");
    }
    const int clusters = std::min(params.clusters, n);

    AssignmentMatrix out;
    out.entries.resize(n, params.repetitions);
    for (int r = 0; r < params.repetitions; ++r) {
        Matrix sub;
        const Matrix* view = &x;
        if (!params.full_features) {
            auto rng = make_engine(master_seed, streams::feature_sample,
                                   static_cast<std::uint64_t>(step), static_cast<std::uint64_t>(r));
            std::vector<int> cols = sample_features(p, params.q, rng);
            sub.resize(n, static_cast<int>(cols.size()));
            for (std::size_t j = 0; j < cols.size(); ++j) sub.col(static_cast<int>(j)) = x.col(cols[j]);
            view = &sub;
        }
        std::uint64_t km_seed = derive_seed(master_seed, streams::kmeans,
                                            static_cast<std::uint64_t>(step),
                                            static_cast<std::uint64_t>(r));
        KMeansResult km = kmeans_fit(*view, clusters, params.kmeans_max_iter,
                                     params.kmeans_tol, km_seed);
        std::vector<int> canon = canonicalize_labels(km.labels);
        for (int i = 0; i < n; ++i) out.entries(i, r) = canon[i];
    }
    return out;
}

}  // namespace cohirf
