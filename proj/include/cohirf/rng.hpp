#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace cohirf {

/// Named RNG streams. Every random draw in the pipeline uses an engine
/// seeded from (master seed, stream, coordinates), so results do not depend
/// on execution order and independent parts can run in parallel.
namespace streams {
inline constexpr std::uint64_t feature_sample = 0xF5A1;
inline constexpr std::uint64_t kmeans = 0x5EED;
inline constexpr std::uint64_t medoid = 0x3ED0;
inline constexpr std::uint64_t batch = 0xBA7C;
inline constexpr std::uint64_t search_trial = 0x721A;
inline constexpr std::uint64_t datagen = 0xDA7A;
inline constexpr std::uint64_t bench = 0x6E4C;
}  // namespace streams

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Derive an independent seed from a master seed, a stream tag and up to two
/// coordinates (step index, repetition index, trial number, ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = splitmix64(master ^ 0x5851F42D4C957F2Dull);
    s = splitmix64(s ^ stream);
    s = splitmix64(s ^ a);
    return splitmix64(s ^ b);
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream,
                                   std::uint64_t a = 0, std::uint64_t b = 0) {
    return std::mt19937_64(derive_seed(master, stream, a, b));
}

/// k distinct indices drawn uniformly without replacement from [0, n),
/// returned sorted. Partial Fisher-Yates, deterministic per engine state.
inline std::vector<int> sample_without_replacement(int n, int k, std::mt19937_64& rng) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(ids[i], ids[pick(rng)]);
    }
    ids.resize(k);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace cohirf
