#include "cohirf/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohirf/metrics.hpp"
#include "cohirf/rng.hpp"

namespace cohirf::cli {

namespace {

using ordered_json = nlohmann::ordered_json;
using clock = std::chrono::steady_clock;

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string medoid_kind_name(const MedoidMode& mode) {
    switch (mode.kind) {
        case MedoidMode::Kind::abs_inner_argmin:
            return mode.maximize ? "abs_inner_argmax" : "abs_inner_argmin";
        case MedoidMode::Kind::abs_inner_argmin_capped:
            return "abs_inner_capped";
        case MedoidMode::Kind::rbf_argmax:
            return "rbf_argmax";
        case MedoidMode::Kind::centroid:
            return "centroid";
    }
    return "?";
}

MedoidMode medoid_mode_from_name(const std::string& name) {
    if (name == "abs_inner") return MedoidMode::abs_inner();
    if (name == "abs_inner_max") return MedoidMode::abs_inner_max();
    if (name == "capped") return MedoidMode::capped();
    if (name == "rbf") return MedoidMode::rbf();
    if (name == "rbf_median") return MedoidMode::rbf_median();
    if (name == "centroid") return MedoidMode::centroid_mode();
    throw std::invalid_argument("unknown medoid mode '" + name + "'");
}

// variant label implied by a config, for reports and bench rows
std::string variant_name(const CohirfConfig& config) {
    std::vector<std::string> parts;
    if (config.sample_batch) parts.push_back("sampled");
    if (config.full_features) parts.push_back("full");
    if (config.medoid_mode.kind == MedoidMode::Kind::abs_inner_argmin_capped) {
        parts.push_back("capped");
    } else if (config.medoid_mode.kind == MedoidMode::Kind::rbf_argmax) {
        parts.push_back("rbf");
    } else if (config.medoid_mode.kind == MedoidMode::Kind::centroid) {
        parts.push_back("centroid");
    }
    if (parts.empty()) return "base";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
    return out;
}

// q = 0 means "pick the default": min(30, p-1), at least 2. With p not yet
// known (0) the resolution waits until fit time.
CohirfConfig resolve_config(CohirfConfig config, int p) {
    if (!config.full_features && config.q == 0 && p >= 1) {
        if (p == 1) {
            config.full_features = true;
        } else {
            config.q = std::max(2, std::min(30, p - 1));
        }
    }
    return config;
}

void parallel_for(int jobs, int count, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = next++; i < count; i = next++) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

FitOutcome fit_loaded(const std::string& descriptor, const Matrix& x,
                      const std::optional<Partition>& labels, const CohirfConfig& config) {
    CohirfConfig cfg = resolve_config(config, static_cast<int>(x.cols()));
    auto t0 = clock::now();
    CohirfResult result = cohirf_fit(x, cfg);
    double secs = std::chrono::duration<double>(clock::now() - t0).count();

    RunReport report;
    report.dataset = descriptor;
    report.config = cfg;
    report.variant = variant_name(cfg);
    report.n = static_cast<int>(x.rows());
    report.p = static_cast<int>(x.cols());
    report.n_clusters = result.n_clusters;
    report.steps_run = result.steps_run;
    report.per_step_counts = result.per_step_counts;
    report.step_cap_hit = result.step_cap_hit;
    if (labels && labels->size() >= 2) {
        report.ari = adjusted_rand_index(result.labels, *labels);
        report.ri = rand_index(result.labels, *labels);
    }
    report.fit_time_s = secs;
    report.seed = cfg.seed;
    return {std::move(report), std::move(result)};
}

const char* kind_name(SyntheticKind kind) {
    return kind == SyntheticKind::hypercube_vertices ? "hypercube" : "gaussians";
}

SyntheticKind kind_from_name(const std::string& name) {
    if (name == "hypercube") return SyntheticKind::hypercube_vertices;
    if (name == "gaussians") return SyntheticKind::separated_gaussians;
    throw std::invalid_argument("unknown synthetic kind '" + name + "'");
}

}  // namespace

std::string DatasetSource::describe() const {
    if (csv_path) return "csv:" + *csv_path;
    if (synthetic) {
        const SyntheticSpec& s = *synthetic;
        std::ostringstream out;
        out << "synthetic:" << kind_name(s.kind) << "(n=" << s.n << ",p=" << s.p
            << ",k=" << s.k << ",delta=" << fmt_num(s.delta) << ",seed=" << s.seed << ")";
        return out.str();
    }
    return "unset";
}

LoadedDataset load_dataset(const DatasetSource& source) {
    if (source.csv_path && source.synthetic) {
        throw std::invalid_argument("dataset source: pass a CSV path or a synthetic spec, not both");
    }
    if (source.csv_path) {
        DatasetSchema schema;
        if (source.schema_path) schema = load_schema(*source.schema_path);
        Dataset d = load_csv(*source.csv_path, schema, source.label_column);
        LoadedDataset out;
        out.x = source.standardize ? cohirf::standardize(d.x, d.continuous_mask) : std::move(d.x);
        out.labels = std::move(d.labels);
        return out;
    }
    if (source.synthetic) {
        SyntheticDataset d = gen_synthetic(*source.synthetic);
        return {std::move(d.x), std::move(d.labels)};
    }
    throw std::invalid_argument("dataset source: nothing to load");
}

std::string RunReport::to_json() const {
    ordered_json j;
    j["dataset"] = dataset;
    j["variant"] = variant;
    j["n"] = n;
    j["p"] = p;
    ordered_json cfg;
    cfg["q"] = config.q;
    cfg["repetitions"] = config.repetitions;
    cfg["clusters"] = config.clusters;
    cfg["medoid_mode"] = medoid_kind_name(config.medoid_mode);
    if (config.medoid_mode.kind == MedoidMode::Kind::abs_inner_argmin_capped) {
        cfg["medoid_cap"] = config.medoid_mode.cap;
    }
    if (config.medoid_mode.kind == MedoidMode::Kind::rbf_argmax) {
        cfg["medoid_gamma"] = config.medoid_mode.gamma_median
                                  ? ordered_json("median")
                                  : ordered_json(config.medoid_mode.gamma);
    }
    cfg["medoid_include_self"] = config.medoid_mode.include_self;
    if (config.sample_batch) {
        cfg["sample_batch"] = *config.sample_batch;
    } else {
        cfg["sample_batch"] = nullptr;
    }
    cfg["full_features"] = config.full_features;
    cfg["kmeans_max_iter"] = config.kmeans_max_iter;
    cfg["kmeans_tol"] = config.kmeans_tol;
    cfg["max_steps"] = config.max_steps;
    j["config"] = std::move(cfg);
    j["n_clusters"] = n_clusters;
    j["steps_run"] = steps_run;
    j["per_step_counts"] = per_step_counts;
    j["step_cap_hit"] = step_cap_hit;
    if (ari) j["ari"] = *ari;
    if (ri) j["ri"] = *ri;
    j["fit_time_s"] = fit_time_s;
    j["seed"] = seed;
    return j.dump(2) + "\n";
}

FitOutcome run_fit(const DatasetSource& source, const CohirfConfig& config,
                   const FitArtifacts& artifacts) {
    LoadedDataset data = load_dataset(source);
    FitOutcome outcome = fit_loaded(source.describe(), data.x, data.labels, config);
    if (artifacts.data_path) write_dataset_csv(*artifacts.data_path, data.x, data.labels);
    if (artifacts.labels_path) write_labels_csv(*artifacts.labels_path, outcome.result.labels);
    if (artifacts.hierarchy_path) {
        write_text_file(*artifacts.hierarchy_path,
                        export_hierarchy(outcome.result.hierarchy, artifacts.hierarchy_format));
    }
    if (artifacts.report_path) write_text_file(*artifacts.report_path, outcome.report.to_json());
    return outcome;
}

SearchOutcome run_search(const DatasetSource& source, const SearchOptions& options) {
    if (options.trials < 1) throw std::invalid_argument("search: trials must be >= 1");
    LoadedDataset data = load_dataset(source);
    if (!data.labels) {
        throw std::invalid_argument("search: the ARI objective needs a labeled dataset");
    }
    const int p = static_cast<int>(data.x.cols());
    if (p < 2 && !options.full_features) {
        throw std::invalid_argument("search: need at least 2 features");
    }
    const int q_hi = std::max(2, std::min(30, p - 1));

    SearchOutcome out;
    out.trials.resize(static_cast<std::size_t>(options.trials));
    parallel_for(options.jobs, options.trials, [&](int t) {
        auto box = make_engine(options.seed, streams::search_trial,
                               static_cast<std::uint64_t>(t));
        std::uniform_int_distribution<int> qd(2, q_hi);
        std::uniform_int_distribution<int> rd(2, 10);
        std::uniform_int_distribution<int> cd(2, 10);
        CohirfConfig cfg;
        cfg.q = qd(box);
        cfg.repetitions = rd(box);
        cfg.clusters = cd(box);
        cfg.medoid_mode = options.medoid_mode;
        cfg.sample_batch = options.sample_batch;
        cfg.full_features = options.full_features;
        cfg.kmeans_max_iter = options.kmeans_max_iter;
        cfg.kmeans_tol = options.kmeans_tol;
        cfg.seed = derive_seed(options.seed, streams::search_trial,
                               static_cast<std::uint64_t>(t), 1);

        auto t0 = clock::now();
        CohirfResult result = cohirf_fit(data.x, cfg);
        double secs = std::chrono::duration<double>(clock::now() - t0).count();

        TrialRecord& rec = out.trials[static_cast<std::size_t>(t)];
        rec.trial = t;
        rec.config = cfg;
        rec.ari = adjusted_rand_index(result.labels, *data.labels);
        rec.time_s = secs;
        rec.n_clusters = result.n_clusters;
    });

    out.best_trial = 0;
    for (int t = 1; t < options.trials; ++t) {
        if (out.trials[static_cast<std::size_t>(t)].ari >
            out.trials[static_cast<std::size_t>(out.best_trial)].ari) {
            out.best_trial = t;
        }
    }
    FitOutcome best = fit_loaded(source.describe(), data.x, data.labels,
                                 out.trials[static_cast<std::size_t>(out.best_trial)].config);
    out.best_report = std::move(best.report);
    out.best_labels = std::move(best.result.labels);
    return out;
}

std::string trials_to_csv(const std::vector<TrialRecord>& trials) {
    std::ostringstream out;
    out << "trial,q,r,c,seed,ari,time_s,n_clusters\n";
    for (const TrialRecord& t : trials) {
        out << t.trial << "," << t.config.q << "," << t.config.repetitions << ","
            << t.config.clusters << "," << t.config.seed << "," << fmt_num(t.ari) << ","
            << fmt_num(t.time_s) << "," << t.n_clusters << "\n";
    }
    return out.str();
}

std::string bench_rows_to_csv(const std::vector<BenchRow>& rows, bool header) {
    std::ostringstream out;
    if (header) out << kBenchCsvHeader << "\n";
    for (const BenchRow& r : rows) {
        out << r.kind << "," << r.n << "," << r.p << "," << r.k << "," << fmt_num(r.delta)
            << "," << r.variant << "," << r.seed << "," << r.q << "," << r.r << "," << r.c
            << "," << fmt_num(r.ari) << "," << fmt_num(r.time_s) << "," << r.n_clusters
            << "," << r.status << "\n";
    }
    return out.str();
}

CohirfConfig variant_config(const std::string& variant, int q, int r, int c,
                            std::uint64_t seed, int p) {
    CohirfConfig cfg;
    cfg.q = q;
    cfg.repetitions = r;
    cfg.clusters = c;
    cfg.seed = seed;
    if (variant == "base") {
    } else if (variant == "capped") {
        cfg.medoid_mode = MedoidMode::capped(1000);
    } else if (variant == "sampled") {
        cfg.sample_batch = 1024;
    } else if (variant == "rbf") {
        cfg.medoid_mode = MedoidMode::rbf();
    } else if (variant == "full") {
        cfg.full_features = true;
    } else {
        throw std::invalid_argument("unknown variant '" + variant +
                                    "' (expected base/capped/sampled/rbf/full)");
    }
    return resolve_config(cfg, p);
}

std::vector<BenchRow> run_bench_scale(const BenchScaleOptions& options) {
    struct Cell {
        int n, p, seed_idx;
        std::string variant;
    };
    std::vector<Cell> cells;
    for (int n : options.n_grid) {
        for (int p : options.p_grid) {
            for (const std::string& v : options.variants) {
                for (int s = 0; s < options.seeds; ++s) cells.push_back({n, p, s, v});
            }
        }
    }
    std::vector<BenchRow> rows(cells.size());
    parallel_for(options.jobs, static_cast<int>(cells.size()), [&](int i) {
        const Cell& cell = cells[static_cast<std::size_t>(i)];
        BenchRow& row = rows[static_cast<std::size_t>(i)];
        row.kind = "hypercube";
        row.n = cell.n;
        row.p = cell.p;
        row.k = options.k;
        row.delta = options.delta;
        row.variant = cell.variant;
        row.seed = static_cast<std::uint64_t>(cell.seed_idx);
        row.q = std::max(2, std::min(options.q, cell.p));
        row.r = options.r;
        row.c = options.c;
        if (!options.allow_large &&
            static_cast<long long>(cell.n) * cell.p > 10'000'000LL) {
            row.status = "skipped";  // desk-scale budget; pass --allow-large to run
            return;
        }
        SyntheticSpec spec;
        spec.n = cell.n;
        spec.p = cell.p;
        spec.k = options.k;
        spec.delta = options.delta;
        spec.kind = SyntheticKind::hypercube_vertices;
        spec.seed = derive_seed(options.seed, streams::datagen, static_cast<std::uint64_t>(i));
        SyntheticDataset data = gen_synthetic(spec);

        CohirfConfig cfg = variant_config(cell.variant, row.q, options.r, options.c,
                                          derive_seed(options.seed, streams::bench,
                                                      static_cast<std::uint64_t>(i)),
                                          cell.p);
        auto t0 = clock::now();
        CohirfResult result = cohirf_fit(data.x, cfg);
        row.time_s = std::chrono::duration<double>(clock::now() - t0).count();
        row.ari = adjusted_rand_index(result.labels, data.labels);
        row.n_clusters = result.n_clusters;
    });
    return rows;
}

std::vector<BenchRow> run_bench_separation(const BenchSeparationOptions& options) {
    struct Cell {
        double delta;
        int seed_idx;
        std::string variant;
    };
    std::vector<Cell> cells;
    for (double d : options.deltas) {
        for (const std::string& v : options.variants) {
            for (int s = 0; s < options.seeds; ++s) cells.push_back({d, s, v});
        }
    }
    std::vector<BenchRow> rows(cells.size());
    parallel_for(options.jobs, static_cast<int>(cells.size()), [&](int i) {
        const Cell& cell = cells[static_cast<std::size_t>(i)];
        BenchRow& row = rows[static_cast<std::size_t>(i)];
        row.kind = kind_name(options.kind);
        row.n = options.n;
        row.p = options.p;
        row.k = options.k;
        row.delta = cell.delta;
        row.variant = cell.variant;
        row.seed = static_cast<std::uint64_t>(cell.seed_idx);
        row.q = options.q > 0 ? std::max(2, std::min(options.q, options.p))
                              : std::max(2, std::min(30, options.p - 1));
        row.r = options.r;
        row.c = options.c;
        if (!options.allow_large &&
            static_cast<long long>(options.n) * options.p > 10'000'000LL) {
            row.status = "skipped";
            return;
        }
        SyntheticSpec spec;
        spec.n = options.n;
        spec.p = options.p;
        spec.k = options.k;
        spec.delta = cell.delta;
        spec.kind = options.kind;
        spec.seed = derive_seed(options.seed, streams::datagen, static_cast<std::uint64_t>(i));
        SyntheticDataset data = gen_synthetic(spec);

        CohirfConfig cfg = variant_config(cell.variant, row.q, options.r, options.c,
                                          derive_seed(options.seed, streams::bench,
                                                      static_cast<std::uint64_t>(i)),
                                          options.p);
        auto t0 = clock::now();
        CohirfResult result = cohirf_fit(data.x, cfg);
        row.time_s = std::chrono::duration<double>(clock::now() - t0).count();
        row.ari = adjusted_rand_index(result.labels, data.labels);
        row.n_clusters = result.n_clusters;
    });
    return rows;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"CoHiRF: consensus-based hierarchical clustering for high-dimensional data"};
    app.require_subcommand(1);

    // flags shared by fit and search
    struct DataFlags {
        std::string csv, schema, label_column, synthetic;
        bool no_standardize = false;
        int n = 500, p = 100, k = 5;
        double delta = 100.0;
        std::uint64_t data_seed = 0;
        bool data_seed_set = false;
        bool allow_large = false;
    };
    auto add_data_flags = [](CLI::App* cmd, DataFlags& f) {
        cmd->add_option("--csv", f.csv, "CSV dataset path (first row header)");
        cmd->add_option("--schema", f.schema, "JSON schema sidecar for the CSV");
        cmd->add_option("--label-column", f.label_column, "Column holding ground-truth labels");
        cmd->add_flag("--no-standardize", f.no_standardize,
                      "Skip standardization of continuous CSV columns");
        cmd->add_option("--synthetic", f.synthetic, "Generate data instead of loading")
            ->check(CLI::IsMember({"hypercube", "gaussians"}));
        cmd->add_option("--n", f.n, "Synthetic: sample count");
        cmd->add_option("--p", f.p, "Synthetic: feature count");
        cmd->add_option("--k", f.k, "Synthetic: true cluster count");
        cmd->add_option("--delta", f.delta, "Synthetic: inter-cluster scale");
        cmd->add_option("--data-seed", f.data_seed, "Synthetic: generator seed (default: --seed)");
        cmd->add_flag("--allow-large", f.allow_large, "Generate past n*p = 1e7");
    };
    auto check_budget = [](const DataFlags& f) {
        // desk-scale default: refuse a synthetic fit past 1e7 cells
        if (!f.allow_large && !f.synthetic.empty() &&
            static_cast<long long>(f.n) * f.p > 10'000'000LL) {
            throw std::invalid_argument(
                "synthetic n*p exceeds the desk-scale budget of 1e7; pass --allow-large");
        }
    };
    auto make_source = [](const DataFlags& f, std::uint64_t master) {
        DatasetSource s;
        bool has_csv = !f.csv.empty();
        bool has_syn = !f.synthetic.empty();
        if (has_csv == has_syn) {
            throw std::invalid_argument("pass exactly one of --csv and --synthetic");
        }
        if (has_csv) {
            s.csv_path = f.csv;
            if (!f.schema.empty()) s.schema_path = f.schema;
            if (!f.label_column.empty()) s.label_column = f.label_column;
            s.standardize = !f.no_standardize;
        } else {
            SyntheticSpec spec;
            spec.kind = kind_from_name(f.synthetic);
            spec.n = f.n;
            spec.p = f.p;
            spec.k = f.k;
            spec.delta = f.delta;
            spec.seed = f.data_seed_set ? f.data_seed : master;
            s.synthetic = spec;
        }
        return s;
    };

    struct ModelFlags {
        int q = 0, r = 4, c = 3;
        std::uint64_t seed = 0;
        std::string variant = "base", medoid;
        int cap = 1000, batch = 0;
        double gamma = 0.0;
        bool gamma_median = false, include_self = false, full_features = false;
        int kmeans_max_iter = 300, max_steps = 100;
        double kmeans_tol = 1e-4;
    };
    auto add_model_flags = [](CLI::App* cmd, ModelFlags& m, bool with_qrc) {
        if (with_qrc) {
            cmd->add_option("--q", m.q, "Features per repetition (0: min(30, p-1))");
            cmd->add_option("--r", m.r, "Repetitions per step");
            cmd->add_option("--c", m.c, "K-Means clusters per repetition");
        }
        cmd->add_option("--seed", m.seed, "Master seed");
        cmd->add_option("--variant", m.variant, "Model variant")
            ->check(CLI::IsMember({"base", "capped", "sampled", "rbf", "full"}));
        cmd->add_option("--medoid", m.medoid,
                        "Override the medoid rule (abs_inner, abs_inner_max, capped, rbf, "
                        "rbf_median, centroid)");
        cmd->add_option("--cap", m.cap, "Capped medoid subsample size");
        cmd->add_option("--batch", m.batch, "Mini-batch size per step (0: off)");
        cmd->add_option("--gamma", m.gamma, "RBF medoid bandwidth (0: 1/p)");
        cmd->add_flag("--gamma-median", m.gamma_median, "RBF bandwidth from the median heuristic");
        cmd->add_flag("--include-self", m.include_self, "Keep the j = i term in medoid sums");
        cmd->add_flag("--full-features", m.full_features, "Cluster on all p features");
        cmd->add_option("--kmeans-max-iter", m.kmeans_max_iter, "Lloyd iteration cap");
        cmd->add_option("--kmeans-tol", m.kmeans_tol, "Lloyd centroid-shift tolerance");
        cmd->add_option("--max-steps", m.max_steps, "Agglomeration step cap");
    };
    auto make_config = [](const ModelFlags& m) {
        CohirfConfig cfg = variant_config(m.variant, m.q, m.r, m.c, m.seed, 0);
        if (!m.medoid.empty()) cfg.medoid_mode = medoid_mode_from_name(m.medoid);
        if (cfg.medoid_mode.kind == MedoidMode::Kind::abs_inner_argmin_capped) {
            cfg.medoid_mode.cap = m.cap;
        }
        if (cfg.medoid_mode.kind == MedoidMode::Kind::rbf_argmax && m.gamma > 0.0) {
            cfg.medoid_mode.gamma = m.gamma;
        }
        if (m.gamma_median) cfg.medoid_mode.gamma_median = true;
        if (m.include_self) cfg.medoid_mode.include_self = true;
        if (m.batch > 0) cfg.sample_batch = m.batch;
        if (m.full_features) cfg.full_features = true;
        cfg.kmeans_max_iter = m.kmeans_max_iter;
        cfg.kmeans_tol = m.kmeans_tol;
        cfg.max_steps = m.max_steps;
        return cfg;
    };

    // fit
    auto* fit = app.add_subcommand("fit", "Cluster one dataset and report the result");
    DataFlags fit_data;
    ModelFlags fit_model;
    FitArtifacts fit_art;
    std::string fit_labels_out, fit_hier_out, fit_hier_fmt = "dot", fit_report_out, fit_data_out;
    add_data_flags(fit, fit_data);
    add_model_flags(fit, fit_model, true);
    fit->add_option("--labels-out", fit_labels_out, "Write final labels CSV here");
    fit->add_option("--hierarchy-out", fit_hier_out, "Write the hierarchy here");
    fit->add_option("--hierarchy-format", fit_hier_fmt, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));
    fit->add_option("--report-out", fit_report_out, "Write the run report JSON here");
    fit->add_option("--data-out", fit_data_out, "Dump the (synthetic) dataset CSV here");

    // search
    auto* search = app.add_subcommand("search", "Random hyperparameter search maximizing ARI");
    DataFlags search_data;
    ModelFlags search_model;
    int search_trials = 100, search_jobs = 1;
    std::string search_trials_out, search_report_out, search_labels_out;
    add_data_flags(search, search_data);
    add_model_flags(search, search_model, false);
    search->add_option("--trials", search_trials, "Trial budget");
    search->add_option("--jobs", search_jobs, "Parallel trial workers");
    search->add_option("--trials-out", search_trials_out, "Write the per-trial CSV here");
    search->add_option("--report-out", search_report_out, "Write the best-trial report here");
    search->add_option("--labels-out", search_labels_out, "Write the best-trial labels here");

    // bench-scale
    auto* scale = app.add_subcommand("bench-scale", "Hypercube timing grid over n and p");
    BenchScaleOptions scale_opt;
    std::string scale_out;
    bool scale_no_header = false;
    scale->add_option("--n-grid", scale_opt.n_grid, "Sample-count grid")->delimiter(',');
    scale->add_option("--p-grid", scale_opt.p_grid, "Feature-count grid")->delimiter(',');
    scale->add_option("--variants", scale_opt.variants, "Variants to run")->delimiter(',');
    scale->add_option("--seeds", scale_opt.seeds, "Repeats per grid point");
    scale->add_option("--seed", scale_opt.seed, "Master seed");
    scale->add_option("--q", scale_opt.q, "Features per repetition");
    scale->add_option("--r", scale_opt.r, "Repetitions per step");
    scale->add_option("--c", scale_opt.c, "K-Means clusters per repetition");
    scale->add_option("--delta", scale_opt.delta, "Hypercube edge length");
    scale->add_option("--k", scale_opt.k, "True cluster count");
    scale->add_flag("--allow-large", scale_opt.allow_large, "Run rows past n*p = 1e7");
    scale->add_option("--jobs", scale_opt.jobs, "Parallel rows");
    scale->add_option("--out", scale_out, "Write the CSV here instead of stdout");
    scale->add_flag("--no-header", scale_no_header, "Omit the CSV header (append mode)");

    // bench-separation
    auto* sep = app.add_subcommand("bench-separation", "ARI vs inter-cluster distance sweep");
    BenchSeparationOptions sep_opt;
    std::string sep_out, sep_kind = "gaussians";
    bool sep_no_header = false;
    sep->add_option("--deltas", sep_opt.deltas, "Inter-cluster distances")->delimiter(',');
    sep->add_option("--kind", sep_kind, "Generator kind")
        ->check(CLI::IsMember({"hypercube", "gaussians"}));
    sep->add_option("--n", sep_opt.n, "Sample count");
    sep->add_option("--p", sep_opt.p, "Feature count");
    sep->add_option("--k", sep_opt.k, "True cluster count");
    sep->add_option("--variants", sep_opt.variants, "Variants to run")->delimiter(',');
    sep->add_option("--seeds", sep_opt.seeds, "Repeats per delta");
    sep->add_option("--seed", sep_opt.seed, "Master seed");
    sep->add_option("--q", sep_opt.q, "Features per repetition (0: min(30, p-1))");
    sep->add_option("--r", sep_opt.r, "Repetitions per step");
    sep->add_option("--c", sep_opt.c, "K-Means clusters per repetition");
    sep->add_flag("--allow-large", sep_opt.allow_large, "Run rows past n*p = 1e7");
    sep->add_option("--jobs", sep_opt.jobs, "Parallel rows");
    sep->add_option("--out", sep_out, "Write the CSV here instead of stdout");
    sep->add_flag("--no-header", sep_no_header, "Omit the CSV header (append mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    fit_data.data_seed_set = fit->count("--data-seed") > 0;
    search_data.data_seed_set = search->count("--data-seed") > 0;

    try {
        if (fit->parsed()) {
            check_budget(fit_data);
            if (!fit_labels_out.empty()) fit_art.labels_path = fit_labels_out;
            if (!fit_hier_out.empty()) fit_art.hierarchy_path = fit_hier_out;
            fit_art.hierarchy_format =
                fit_hier_fmt == "json" ? HierarchyFormat::json : HierarchyFormat::dot;
            if (!fit_report_out.empty()) fit_art.report_path = fit_report_out;
            if (!fit_data_out.empty()) fit_art.data_path = fit_data_out;
            FitOutcome outcome =
                run_fit(make_source(fit_data, fit_model.seed), make_config(fit_model), fit_art);
            std::cout << outcome.report.to_json();
        } else if (search->parsed()) {
            check_budget(search_data);
            CohirfConfig base = make_config(search_model);
            SearchOptions opt;
            opt.trials = search_trials;
            opt.seed = search_model.seed;
            opt.jobs = search_jobs;
            opt.medoid_mode = base.medoid_mode;
            opt.sample_batch = base.sample_batch;
            opt.full_features = base.full_features;
            opt.kmeans_max_iter = base.kmeans_max_iter;
            opt.kmeans_tol = base.kmeans_tol;
            SearchOutcome outcome = run_search(make_source(search_data, search_model.seed), opt);
            if (!search_trials_out.empty()) {
                write_text_file(search_trials_out, trials_to_csv(outcome.trials));
            }
            if (!search_report_out.empty()) {
                write_text_file(search_report_out, outcome.best_report.to_json());
            }
            if (!search_labels_out.empty()) {
                write_labels_csv(search_labels_out, outcome.best_labels);
            }
            std::cout << outcome.best_report.to_json();
        } else if (scale->parsed()) {
            std::vector<BenchRow> rows = run_bench_scale(scale_opt);
            std::string csv = bench_rows_to_csv(rows, !scale_no_header);
            if (scale_out.empty()) {
                std::cout << csv;
            } else {
                write_text_file(scale_out, csv);
            }
        } else if (sep->parsed()) {
            sep_opt.kind = kind_from_name(sep_kind);
            std::vector<BenchRow> rows = run_bench_separation(sep_opt);
            std::string csv = bench_rows_to_csv(rows, !sep_no_header);
            if (sep_out.empty()) {
                std::cout << csv;
            } else {
                write_text_file(sep_out, csv);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace cohirf::cli
