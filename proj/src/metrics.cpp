#include "cohirf/metrics.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace cohirf {

namespace {

std::int64_t pairs2(std::int64_t x) { return x * (x - 1) / 2; }

void check_lengths(const Partition& a, const Partition& b, const char* who) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(who) + ": partitions differ in length (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    if (a.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty partitions");
    }
}

// Dense ids in order of first appearance; labels may be arbitrary integers.
std::vector<int> dense_ids(const Partition& labels, int& n_ids) {
    std::unordered_map<int, int> seen;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = seen.emplace(labels[i], static_cast<int>(seen.size()));
        out[i] = it->second;
    }
    n_ids = static_cast<int>(seen.size());
    return out;
}

struct PairSums {
    std::int64_t same_both = 0;   // sum_ij C(n_ij, 2)
    std::int64_t same_a = 0;      // sum_i C(a_i, 2)
    std::int64_t same_b = 0;      // sum_j C(b_j, 2)
    std::int64_t total_pairs = 0; // C(n, 2)
};

PairSums pair_sums(const ContingencyTable& t) {
    PairSums s;
    for (const auto& row : t.counts) {
        for (std::int64_t c : row) s.same_both += pairs2(c);
    }
    for (std::int64_t r : t.row_sums) s.same_a += pairs2(r);
    for (std::int64_t c : t.col_sums) s.same_b += pairs2(c);
    s.total_pairs = pairs2(t.total);
    return s;
}

}  // namespace

ContingencyTable contingency_table(const Partition& a, const Partition& b) {
    check_lengths(a, b, "contingency_table");
    int na = 0;
    int nb = 0;
    std::vector<int> ra = dense_ids(a, na);
    std::vector<int> rb = dense_ids(b, nb);

    ContingencyTable t;
    t.counts.assign(na, std::vector<std::int64_t>(nb, 0));
    t.row_sums.assign(na, 0);
    t.col_sums.assign(nb, 0);
    t.total = static_cast<std::int64_t>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++t.counts[ra[i]][rb[i]];
        ++t.row_sums[ra[i]];
        ++t.col_sums[rb[i]];
    }
    return t;
}

double rand_index(const Partition& a, const Partition& b) {
    check_lengths(a, b, "rand_index");
    if (a.size() < 2) throw std::invalid_argument("rand_index: need at least 2 samples");
    PairSums s = pair_sums(contingency_table(a, b));
    // agreements = co-clustered in both + separated in both
    std::int64_t agree = s.total_pairs - s.same_a - s.same_b + 2 * s.same_both;
    return static_cast<double>(agree) / static_cast<double>(s.total_pairs);
}

double adjusted_rand_index(const Partition& a, const Partition& b) {
    check_lengths(a, b, "adjusted_rand_index");
    if (a.size() < 2) {
        throw std::invalid_argument("adjusted_rand_index: need at least 2 samples");
    }
    PairSums s = pair_sums(contingency_table(a, b));
    // Hubert-Arabie, cleared of the 1/C(n,2) divisions:
    //   ARI = 2 (T*S - SA*SB) / (T*(SA+SB) - 2*SA*SB)
    // SA*SB can reach ~2.5e19 at n = 1e5, past int64; widen the products.
    using wide = __int128;
    wide num = 2 * (wide(s.total_pairs) * s.same_both - wide(s.same_a) * s.same_b);
    wide den = wide(s.total_pairs) * (s.same_a + s.same_b) - 2 * wide(s.same_a) * s.same_b;
    if (den == 0) return 0.0;  // both partitions trivial
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace cohirf
