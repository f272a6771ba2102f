// End-to-end acceptance checks. Each check prints exactly one PASS/FAIL line;
// the process exits nonzero if any fail. Usage:
//   acceptance <path-to-cohirf-binary> <path-to-iris-csv>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cohirf/cli.hpp"
#include "cohirf/consensus.hpp"
#include "cohirf/datagen.hpp"
#include "cohirf/engine.hpp"
#include "cohirf/kmeans.hpp"
#include "cohirf/medoid.hpp"
#include "cohirf/metrics.hpp"
#include "cohirf/rng.hpp"
#include "support/oracles.hpp"

using cohirf::CohirfConfig;
using cohirf::Matrix;

namespace {

// pinned tolerances
constexpr double kAriOracleTol = 1e-12;   // contingency vs pair enumeration
constexpr double kScaleRatioLo = 0.8;     // per-doubling time ratio window
constexpr double kScaleRatioHi = 3.0;
constexpr double kIrisMinAri = 0.55;      // loose real-data ballpark
constexpr int kIrisTrials = 100;
constexpr int kSweepSearchTrials = 25;

std::string g_cli_path;
std::string g_iris_path;
std::string g_tmp_dir;

struct Failure {
    std::string detail;
};

void fail(const std::string& detail) { throw Failure{detail}; }

void expect(bool ok, const std::string& detail) {
    if (!ok) fail(detail);
}

cohirf::SyntheticDataset make_data(cohirf::SyntheticKind kind, int n, int p, int k,
                                   double delta, std::uint64_t seed) {
    cohirf::SyntheticSpec spec;
    spec.n = n;
    spec.p = p;
    spec.k = k;
    spec.delta = delta;
    spec.kind = kind;
    spec.seed = seed;
    return cohirf::gen_synthetic(spec);
}

CohirfConfig config_of(int q, int r, int c, std::uint64_t seed) {
    CohirfConfig cfg;
    cfg.q = q;
    cfg.repetitions = r;
    cfg.clusters = c;
    cfg.seed = seed;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) fail("cannot read back " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int run_cli(const std::string& args) {
    std::string cmd = "\"" + g_cli_path + "\" " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return rc;
}

// 1. On the hypercube grids (n, p in {100, 347, 1202}, delta 100, 5 planted
//    clusters) at least one small configuration must reach ARI exactly 1.0
//    with exactly 5 clusters on every grid point for 5 seeds.
void check_perfect_partition() {
    const int sizes[3] = {100, 347, 1202};
    const int qs[2] = {10, 20};
    const int rs[2] = {3, 4};
    const int cs[2] = {3, 5};
    // smoke-tested winner first so the common case stays fast
    std::vector<std::array<int, 3>> configs = {{20, 4, 5}};
    for (int q : qs) {
        for (int r : rs) {
            for (int c : cs) {
                if (!(q == 20 && r == 4 && c == 5)) configs.push_back({q, r, c});
            }
        }
    }
    std::string attempts;
    for (const auto& cfg3 : configs) {
        bool all_ok = true;
        for (int n : sizes) {
            for (int p : sizes) {
                for (std::uint64_t seed = 1; seed <= 5 && all_ok; ++seed) {
                    auto data = make_data(cohirf::SyntheticKind::hypercube_vertices, n, p, 5,
                                          100.0, seed);
                    auto res = cohirf::cohirf_fit(
                        data.x, config_of(cfg3[0], cfg3[1], cfg3[2], seed + 100));
                    double ari = cohirf::adjusted_rand_index(res.labels, data.labels);
                    if (ari != 1.0 || res.n_clusters != 5) all_ok = false;
                }
                if (!all_ok) break;
            }
            if (!all_ok) break;
        }
        if (all_ok) {
            std::printf("        (config q=%d R=%d C=%d solves the whole grid)\n", cfg3[0],
                        cfg3[1], cfg3[2]);
            return;
        }
        attempts += " (" + std::to_string(cfg3[0]) + "," + std::to_string(cfg3[1]) + "," +
                    std::to_string(cfg3[2]) + ")";
    }
    fail("no config reached ARI 1.0 with 5 clusters on all grid points; tried" + attempts);
}

// 2. encode_rows never yields more groups than min(n_curr, C^R),
//    on 1000 randomized assignment matrices.
void check_consensus_bound() {
    std::mt19937_64 rng(0xACCE55);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + static_cast<int>(rng() % 500);
        int c = 1 + static_cast<int>(rng() % 10);
        int r = 1 + static_cast<int>(rng() % 10);
        cohirf::AssignmentMatrix pmat;
        pmat.entries.resize(n, r);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < r; ++j) {
                pmat.entries(i, j) = 1 + static_cast<int>(rng() % c);
            }
        }
        auto grouping = cohirf::encode_rows(pmat);
        long long ceiling = 1;
        for (int j = 0; j < r && ceiling <= n; ++j) ceiling *= c;
        long long bound = std::min<long long>(n, ceiling);
        expect(grouping.n_new <= bound,
               "trial " + std::to_string(trial) + ": " + std::to_string(grouping.n_new) +
                   " groups from n=" + std::to_string(n) + " C=" + std::to_string(c) +
                   " R=" + std::to_string(r));
        expect(grouping.n_new >= 1, "empty grouping");
    }
}

// 3. Every fit on 100 randomized datasets and mixed configurations terminates
//    with non-increasing per-step counts, equal final counts, and no cap hit.
void check_termination() {
    std::mt19937_64 rng(0x7E57);
    std::normal_distribution<double> unit;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 499);
        int p = 2 + static_cast<int>(rng() % 199);
        Matrix x;
        if (trial % 2 == 0) {
            x.resize(n, p);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < p; ++j) x(i, j) = unit(rng);
            }
        } else {
            int k = 1 + static_cast<int>(rng() % 5);
            k = std::min(k, n);
            auto kind = (trial % 4 == 1) ? cohirf::SyntheticKind::hypercube_vertices
                                         : cohirf::SyntheticKind::separated_gaussians;
            if (kind == cohirf::SyntheticKind::hypercube_vertices) {
                k = std::min(k, 1 << std::min(p, 4));  // k distinct vertices must exist
            }
            if (kind == cohirf::SyntheticKind::separated_gaussians && p < k - 1) k = p + 1;
            x = make_data(kind, n, p, k, 20.0 + static_cast<double>(rng() % 100), rng()).x;
        }
        CohirfConfig cfg;
        cfg.q = 2 + static_cast<int>(rng() % static_cast<unsigned>(std::min(29, p - 1)));
        cfg.repetitions = 1 + static_cast<int>(rng() % 6);
        cfg.clusters = 2 + static_cast<int>(rng() % 7);
        cfg.seed = rng();
        switch (trial % 4) {
            case 1: cfg.medoid_mode = cohirf::MedoidMode::rbf(); break;
            case 2: cfg.medoid_mode = cohirf::MedoidMode::capped(64); break;
            case 3: cfg.medoid_mode = cohirf::MedoidMode::centroid_mode(); break;
            default: break;
        }
        if (trial % 5 == 0) cfg.sample_batch = 2 + static_cast<int>(rng() % 256);
        if (trial % 7 == 0) {
            cfg.full_features = true;
            cfg.q = 0;
        }
        auto res = cohirf::cohirf_fit(x, cfg);
        expect(!res.step_cap_hit, "trial " + std::to_string(trial) + " hit the step cap");
        const auto& counts = res.per_step_counts;
        expect(counts.size() >= 2, "too few count entries");
        for (std::size_t e = 1; e < counts.size(); ++e) {
            expect(counts[e] <= counts[e - 1],
                   "trial " + std::to_string(trial) + ": counts increased at step " +
                       std::to_string(e));
        }
        expect(counts[counts.size() - 1] == counts[counts.size() - 2],
               "trial " + std::to_string(trial) + ": final counts differ");
    }
}

// 4. The contingency-table ARI equals the O(n^2) pair-enumeration ARI within
//    1e-12 on 200 random pairs; self-ARI is 1; a single-cluster partition
//    scores 0 against anything.
void check_ari_oracle() {
    std::mt19937_64 rng(0xA51);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 29);
        cohirf::Partition a(n), b(n);
        int ka = 1 + static_cast<int>(rng() % n);
        int kb = 1 + static_cast<int>(rng() % n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng() % static_cast<unsigned>(ka));
            b[i] = static_cast<int>(rng() % static_cast<unsigned>(kb));
        }
        double fast = cohirf::adjusted_rand_index(a, b);
        double slow = oracle::ari_pairs(a, b);
        expect(std::abs(fast - slow) <= kAriOracleTol,
               "trial " + std::to_string(trial) + ": " + std::to_string(fast) + " vs " +
                   std::to_string(slow));

        // self-identity on a partition with both a repeated and a split pair
        if (n >= 3) {
            cohirf::Partition c(n);
            for (int i = 0; i < n; ++i) c[i] = i % 2 == 0 ? 0 : 1 + (i % 3);
            expect(cohirf::adjusted_rand_index(c, c) == 1.0, "self ARI != 1");
        }

        cohirf::Partition trivial(n, 0);
        expect(cohirf::adjusted_rand_index(trivial, b) == 0.0, "trivial ARI != 0");
    }
}

// 5. select_medoid agrees with the brute-force objective scan on 100 random
//    clusters for the abs-inner and RBF rules; a cap >= m is exactly uncapped.
void check_medoid_oracle() {
    std::mt19937_64 rng(0x3ED01D);
    std::normal_distribution<double> unit;
    for (int trial = 0; trial < 100; ++trial) {
        int m = 1 + static_cast<int>(rng() % 200);
        int p = 1 + static_cast<int>(rng() % 50);
        Matrix rows(m, p);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < p; ++j) rows(i, j) = unit(rng);
        }
        auto eng = cohirf::make_engine(trial, cohirf::streams::medoid);
        int fast = cohirf::select_medoid(rows, cohirf::MedoidMode::abs_inner(), eng);
        expect(fast == oracle::medoid_index(rows, cohirf::MedoidMode::abs_inner()),
               "abs-inner mismatch on trial " + std::to_string(trial));

        double gamma = trial % 3 == 0 ? 0.0 : 0.25 + 0.01 * trial;  // 0 resolves to 1/p
        auto rbf_mode = cohirf::MedoidMode::rbf(gamma);
        int fast_rbf = cohirf::select_medoid(rows, rbf_mode, eng);
        expect(fast_rbf == oracle::medoid_index(rows, rbf_mode),
               "rbf mismatch on trial " + std::to_string(trial));

        int cap = m + static_cast<int>(rng() % 100);
        auto eng2 = cohirf::make_engine(trial, cohirf::streams::medoid, 1);
        int capped = cohirf::select_medoid(rows, cohirf::MedoidMode::capped(cap), eng2);
        expect(capped == fast, "capped(cap >= m) mismatch on trial " + std::to_string(trial));
    }
}

// 6. The mini-batch variant with B >= n reproduces the base labels per seed,
//    and the all-features single-repetition first step is the raw K-Means
//    partition under the same derived seed.
void check_variant_consistency() {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto data = make_data(cohirf::SyntheticKind::separated_gaussians, 150, 40, 3, 60.0, seed);
        auto base_cfg = config_of(8, 3, 3, seed * 13);
        auto base = cohirf::cohirf_fit(data.x, base_cfg);
        for (int batch : {150, 1000}) {
            auto cfg = base_cfg;
            cfg.sample_batch = batch;
            auto sampled = cohirf::cohirf_sampled_fit(data.x, cfg);
            expect(sampled.labels == base.labels,
                   "B=" + std::to_string(batch) + " labels differ at seed " +
                       std::to_string(seed));
            expect(sampled.per_step_counts == base.per_step_counts,
                   "B=" + std::to_string(batch) + " counts differ at seed " +
                       std::to_string(seed));
        }
    }

    std::mt19937_64 rng(0xF0LL);
    std::normal_distribution<double> unit;
    Matrix x(120, 10);
    for (int i = 0; i < 120; ++i) {
        for (int j = 0; j < 10; ++j) x(i, j) = unit(rng);
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        CohirfConfig cfg = config_of(0, 1, 4, seed);
        cfg.full_features = true;
        auto res = cohirf::cohirf_fit(x, cfg);
        std::vector<int> first_step(120);
        for (int i = 0; i < 120; ++i) first_step[i] = res.hierarchy.nodes[i].parent;
        auto km = cohirf::kmeans_fit(x, 4, cfg.kmeans_max_iter, cfg.kmeans_tol,
                                     cohirf::derive_seed(seed, cohirf::streams::kmeans, 1, 0));
        expect(oracle::same_partition(first_step, km.labels),
               "full/R=1 first step is not the K-Means partition at seed " +
                   std::to_string(seed));
    }
}

// 7. At n = 1000 the median fit time grows at most ~linearly in p:
//    each doubling of p changes the time by a factor in [0.8, 3.0].
void check_scaling() {
    const std::vector<int> ps = {250, 500, 1000, 2000};
    std::vector<double> medians;
    for (int p : ps) {
        auto data = make_data(cohirf::SyntheticKind::hypercube_vertices, 1000, p, 5, 100.0,
                              static_cast<std::uint64_t>(p));
        auto cfg = config_of(30, 4, 5, 7);
        (void)cohirf::cohirf_fit(data.x, cfg);  // warm caches before timing
        std::vector<double> times;
        for (int run = 0; run < 5; ++run) {
            auto t0 = std::chrono::steady_clock::now();
            (void)cohirf::cohirf_fit(data.x, cfg);
            times.push_back(std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count());
        }
        std::sort(times.begin(), times.end());
        medians.push_back(times[2]);
    }
    std::printf("        (medians: p=250 %.4fs, p=500 %.4fs, p=1000 %.4fs, p=2000 %.4fs)\n",
                medians[0], medians[1], medians[2], medians[3]);
    for (std::size_t i = 1; i < medians.size(); ++i) {
        double ratio = medians[i] / medians[i - 1];
        expect(ratio >= kScaleRatioLo && ratio <= kScaleRatioHi,
               "time ratio p=" + std::to_string(ps[i]) + "/p=" + std::to_string(ps[i - 1]) +
                   " is " + std::to_string(ratio));
    }
}

// 8. Tune on the hardest sweep point (delta 70) with a 25-trial search, then
//    sweep delta in {70, 100, 150, 200}: the per-delta mean ARI over 5 seeds
//    is non-decreasing and exactly 1.0 at delta 200.
void check_separation_sweep() {
    cohirf::cli::DatasetSource src;
    {
        cohirf::SyntheticSpec spec;
        spec.n = 500;
        spec.p = 1000;
        spec.k = 5;
        spec.delta = 70.0;
        spec.kind = cohirf::SyntheticKind::separated_gaussians;
        spec.seed = 1;
        src.synthetic = spec;
    }
    cohirf::cli::SearchOptions opts;
    opts.trials = kSweepSearchTrials;
    opts.seed = 11;
    opts.jobs = 2;
    auto search = cohirf::cli::run_search(src, opts);
    const auto& best = search.trials[static_cast<std::size_t>(search.best_trial)].config;
    std::printf("        (best of %d trials: q=%d R=%d C=%d, ARI %.3f at delta 70)\n",
                kSweepSearchTrials, best.q, best.repetitions, best.clusters,
                search.trials[static_cast<std::size_t>(search.best_trial)].ari);

    cohirf::cli::BenchSeparationOptions sweep;
    sweep.deltas = {70.0, 100.0, 150.0, 200.0};
    sweep.n = 500;
    sweep.p = 1000;
    sweep.k = 5;
    sweep.seeds = 5;
    sweep.seed = 21;
    sweep.q = best.q;
    sweep.r = best.repetitions;
    sweep.c = best.clusters;
    sweep.jobs = 2;
    auto rows = cohirf::cli::run_bench_separation(sweep);
    expect(rows.size() == 20, "expected 20 sweep rows");
    std::vector<double> mean(4, 0.0);
    for (const auto& row : rows) {
        for (std::size_t d = 0; d < sweep.deltas.size(); ++d) {
            if (row.delta == sweep.deltas[d]) mean[d] += row.ari / 5.0;
        }
        expect(row.status == "ok", "sweep row skipped");
    }
    std::printf("        (mean ARI: 70 -> %.3f, 100 -> %.3f, 150 -> %.3f, 200 -> %.3f)\n",
                mean[0], mean[1], mean[2], mean[3]);
    for (std::size_t d = 1; d < mean.size(); ++d) {
        expect(mean[d] >= mean[d - 1] - 1e-12,
               "mean ARI decreased from delta " + std::to_string(sweep.deltas[d - 1]) + " to " +
                   std::to_string(sweep.deltas[d]));
    }
    expect(mean[3] == 1.0, "mean ARI at delta 200 is " + std::to_string(mean[3]));
}

// 9. Reruns of the shipped binary with one seed give byte-identical label
//    files, for fit and for search under different --jobs.
void check_cli_determinism() {
    const std::string a = g_tmp_dir + "/fit_a.csv";
    const std::string b = g_tmp_dir + "/fit_b.csv";
    const std::string fit_args =
        "fit --synthetic gaussians --n 300 --p 100 --k 3 --delta 60 "
        "--q 8 --r 3 --c 3 --seed 5 --labels-out ";
    expect(run_cli(fit_args + "\"" + a + "\"") == 0, "first fit run failed");
    expect(run_cli(fit_args + "\"" + b + "\"") == 0, "second fit run failed");
    expect(slurp(a) == slurp(b), "fit label files differ between identical runs");

    const std::string s1 = g_tmp_dir + "/search_j1.csv";
    const std::string s2 = g_tmp_dir + "/search_j2.csv";
    const std::string search_args =
        "search --synthetic gaussians --n 120 --p 40 --k 2 --delta 80 "
        "--seed 7 --trials 8 --labels-out ";
    expect(run_cli(search_args + "\"" + s1 + "\" --jobs 1") == 0, "serial search failed");
    expect(run_cli(search_args + "\"" + s2 + "\" --jobs 2") == 0, "parallel search failed");
    expect(slurp(s1) == slurp(s2), "search label files differ between --jobs 1 and --jobs 2");
}

// 10. A 100-trial search on the iris CSV clears the loose real-data bar.
void check_iris_ballpark() {
    cohirf::cli::DatasetSource src;
    src.csv_path = g_iris_path;
    src.label_column = "species";
    cohirf::cli::SearchOptions opts;
    opts.trials = kIrisTrials;
    opts.seed = 42;
    opts.jobs = 2;
    auto out = cohirf::cli::run_search(src, opts);
    double best = out.trials[static_cast<std::size_t>(out.best_trial)].ari;
    std::printf("        (best iris ARI over %d trials: %.4f)\n", kIrisTrials, best);
    expect(best >= kIrisMinAri,
           "best ARI " + std::to_string(best) + " under " + std::to_string(kIrisMinAri));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <cohirf-binary> <iris-csv>\n");
        return 2;
    }
    g_cli_path = argv[1];
    g_iris_path = argv[2];
    g_tmp_dir = "acceptance_artifacts";
    std::filesystem::create_directories(g_tmp_dir);

    struct Criterion {
        const char* name;
        std::function<void()> fn;
    };
    const std::vector<Criterion> criteria = {
        {"perfect partition on the hypercube grid", check_perfect_partition},
        {"consensus group-count bound", check_consensus_bound},
        {"termination with monotone counts", check_termination},
        {"ARI matches pair enumeration", check_ari_oracle},
        {"medoid selection matches brute force", check_medoid_oracle},
        {"variant consistency", check_variant_consistency},
        {"near-linear scaling in p", check_scaling},
        {"separation sweep shape", check_separation_sweep},
        {"CLI determinism across reruns and jobs", check_cli_determinism},
        {"iris search ballpark", check_iris_ballpark},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = true;
        try {
            criteria[i].fn();
        } catch (const Failure& f) {
            ok = false;
            detail = f.detail;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("unexpected exception: ") + e.what();
        }
        std::printf("%s %2zu: %s%s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
