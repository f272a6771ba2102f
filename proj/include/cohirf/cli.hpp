#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohirf/datagen.hpp"
#include "cohirf/engine.hpp"
#include "cohirf/io.hpp"
#include "cohirf/types.hpp"

namespace cohirf::cli {

/// Where a command's samples come from: a CSV file or a synthetic generator.
struct DatasetSource {
    std::optional<std::string> csv_path;
    std::optional<std::string> schema_path;
    std::optional<std::string> label_column;
    bool standardize = true;

    std::optional<SyntheticSpec> synthetic;

    /// Human-readable descriptor for reports ("csv:iris.csv", "synthetic:hypercube").
    std::string describe() const;
};

struct LoadedDataset {
    Matrix x;
    std::optional<Partition> labels;
};

LoadedDataset load_dataset(const DatasetSource& source);

/// Per-fit report mirroring the dataset / model / ARI / time layout.
struct RunReport {
    std::string dataset;
    CohirfConfig config;
    std::string variant = "base";
    int n = 0;
    int p = 0;
    int n_clusters = 0;
    int steps_run = 0;
    std::vector<int> per_step_counts;
    bool step_cap_hit = false;
    std::optional<double> ari;  // present iff the dataset had labels
    std::optional<double> ri;
    double fit_time_s = 0.0;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

struct FitArtifacts {
    std::optional<std::string> labels_path;
    std::optional<std::string> hierarchy_path;
    HierarchyFormat hierarchy_format = HierarchyFormat::dot;
    std::optional<std::string> report_path;
    std::optional<std::string> data_path;  // dump of a synthetic dataset
};

struct FitOutcome {
    RunReport report;
    CohirfResult result;
};

/// Fit once and write the requested artifacts. Nothing is written when the
/// fit itself fails.
FitOutcome run_fit(const DatasetSource& source, const CohirfConfig& config,
                   const FitArtifacts& artifacts = {});

struct SearchOptions {
    int trials = 100;
    std::uint64_t seed = 0;
    int jobs = 1;
    MedoidMode medoid_mode = MedoidMode::abs_inner();
    std::optional<int> sample_batch;
    bool full_features = false;
    int kmeans_max_iter = 300;
    double kmeans_tol = 1e-4;
};

struct TrialRecord {
    int trial = 0;
    CohirfConfig config;
    double ari = 0.0;
    double time_s = 0.0;
    int n_clusters = 0;
};

struct SearchOutcome {
    std::vector<TrialRecord> trials;
    int best_trial = 0;
    RunReport best_report;
    Partition best_labels;
};

/// Uniform random search over q in [2, min(30, p-1)], R in [2, 10],
/// C in [2, 10], maximizing ARI against the dataset labels. Trial t derives
/// its own seeds from (seed, t), so --jobs parallelism cannot change results.
SearchOutcome run_search(const DatasetSource& source, const SearchOptions& options);

std::string trials_to_csv(const std::vector<TrialRecord>& trials);

struct BenchRow {
    std::string kind;
    int n = 0;
    int p = 0;
    int k = 5;
    double delta = 100.0;
    std::string variant;
    std::uint64_t seed = 0;
    int q = 0;
    int r = 0;
    int c = 0;
    double ari = 0.0;
    double time_s = 0.0;
    int n_clusters = 0;
    std::string status = "ok";  // "skipped" when over budget
};

inline constexpr const char* kBenchCsvHeader =
    "kind,n,p,k,delta,variant,seed,q,r,c,ari,time_s,n_clusters,status";

std::string bench_rows_to_csv(const std::vector<BenchRow>& rows, bool header);

struct BenchScaleOptions {
    std::vector<int> n_grid = {100, 347, 1202};
    std::vector<int> p_grid = {100, 347, 1202};
    std::vector<std::string> variants = {"base"};
    int seeds = 1;
    std::uint64_t seed = 0;
    int q = 20;
    int r = 4;
    int c = 5;
    double delta = 100.0;
    int k = 5;
    bool allow_large = false;
    int jobs = 1;
};

/// Hypercube timing grid: one row per (n, p, variant, seed).
std::vector<BenchRow> run_bench_scale(const BenchScaleOptions& options);

struct BenchSeparationOptions {
    std::vector<double> deltas = {70, 100, 150, 200};
    SyntheticKind kind = SyntheticKind::separated_gaussians;
    int n = 500;
    int p = 1000;
    int k = 5;
    std::vector<std::string> variants = {"base"};
    int seeds = 5;
    std::uint64_t seed = 0;
    int q = 0;  // 0: min(30, p-1)
    int r = 4;
    int c = 5;
    bool allow_large = false;
    int jobs = 1;
};

/// Inter-cluster distance sweep: one row per (delta, variant, seed).
std::vector<BenchRow> run_bench_separation(const BenchSeparationOptions& options);

/// Build a config for a named variant ("base", "capped", "sampled", "rbf",
/// "full") on top of shared q/R/C/seed settings.
CohirfConfig variant_config(const std::string& variant, int q, int r, int c,
                            std::uint64_t seed, int p);

/// Full command-line entry point (fit / search / bench-scale / bench-separation).
int run(int argc, const char* const* argv);

}  // namespace cohirf::cli
