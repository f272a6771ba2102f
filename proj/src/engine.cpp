#include "cohirf/engine.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "cohirf/consensus.hpp"
#include "cohirf/rng.hpp"

namespace cohirf {

namespace {

void check_config(const CohirfConfig& config, int p) {
    if (!config.full_features && (config.q < 2 || config.q > p)) {
        throw std::invalid_argument("cohirf: q must satisfy 2 <= q <= p, got q = " +
                                    std::to_string(config.q) + " with p = " + std::to_string(p));
    }
    if (config.repetitions < 1) throw std::invalid_argument("cohirf: repetitions must be >= 1");
    if (config.clusters < 2) throw std::invalid_argument("cohirf: clusters must be >= 2");
    if (config.sample_batch && *config.sample_batch < 2) {
        throw std::invalid_argument("cohirf: sample batch must be >= 2");
    }
    if (config.kmeans_max_iter < 0) throw std::invalid_argument("cohirf: kmeans_max_iter < 0");
    if (config.kmeans_tol < 0.0) throw std::invalid_argument("cohirf: kmeans_tol < 0");
    if (config.max_steps < 1) throw std::invalid_argument("cohirf: max_steps must be >= 1");
}

Matrix gather_rows(const Matrix& x, const std::vector<int>& ids) {
    Matrix out(static_cast<int>(ids.size()), x.cols());
    for (std::size_t i = 0; i < ids.size(); ++i) out.row(static_cast<int>(i)) = x.row(ids[i]);
    return out;
}

CohirfResult run_loop(const Matrix& x, const CohirfConfig& config) {
    const int n = static_cast<int>(x.rows());
    const int p = static_cast<int>(x.cols());
    if (n < 1 || p < 1) throw std::invalid_argument("cohirf: empty data matrix");
    check_config(config, p);
    require_finite(x, "cohirf_fit");

    CohirfResult res;
    HierarchyTree& tree = res.hierarchy;
    tree.n_samples = n;
    tree.nodes.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        HierarchyNode leaf;
        leaf.id = i;
        leaf.medoid_sample = i;
        tree.nodes.push_back(std::move(leaf));
    }

    std::vector<int> current(n);     // node ids of the live level
    std::iota(current.begin(), current.end(), 0);
    std::vector<int> sample_pos(n);  // position of each sample's ancestor in `current`
    std::iota(sample_pos.begin(), sample_pos.end(), 0);

    Matrix coords;             // full-p coordinates of the live level (medoids)
    const Matrix* level = &x;  // step 1 reads x directly

    res.per_step_counts.push_back(n);

    int step = 0;
    while (true) {
        if (step >= config.max_steps) {
            res.step_cap_hit = true;
            break;
        }
        ++step;
        const int n_curr = static_cast<int>(current.size());

        // (0) mini-batch selection; everyone is active without sample_batch
        const bool batched = config.sample_batch && *config.sample_batch < n_curr;
        std::vector<int> active(n_curr);  // positions within `current`
        std::iota(active.begin(), active.end(), 0);
        if (batched) {
            auto rng = make_engine(config.seed, streams::batch, static_cast<std::uint64_t>(step));
            active = sample_without_replacement(n_curr, *config.sample_batch, rng);
        }
        std::vector<char> is_active(n_curr, 0);
        for (int pos : active) is_active[pos] = 1;

        Matrix active_buf;
        const Matrix* xa = level;
        if (batched) {
            active_buf = gather_rows(*level, active);
            xa = &active_buf;
        }

        // (i)-(iv) R feature-sampled K-Means runs, canonicalize, group rows
        RepetitionParams rp;
        rp.q = config.q;
        rp.repetitions = config.repetitions;
        rp.clusters = config.clusters;  // clamped to the row count downstream
        rp.full_features = config.full_features;
        rp.kmeans_max_iter = config.kmeans_max_iter;
        rp.kmeans_tol = config.kmeans_tol;
        AssignmentMatrix pmat = build_assignments(*xa, rp, config.seed, step);
        ConsensusGrouping grouping = encode_rows(pmat);

        // (v) one medoid per group; pass-through samples become singleton
        // chain nodes so every level-(e) node has level-(e-1) children
        const int n_next = grouping.n_new + n_curr - static_cast<int>(active.size());
        std::vector<int> next(n_next);
        Matrix next_coords(n_next, p);
        std::vector<int> pos_map(n_curr, -1);

        for (int g = 0; g < grouping.n_new; ++g) {
            const std::vector<int>& members = grouping.members[g];
            auto rng = make_engine(config.seed, streams::medoid,
                                   static_cast<std::uint64_t>(step), static_cast<std::uint64_t>(g));
            Matrix rows = gather_rows(*xa, members);
            int local = select_medoid(rows, config.medoid_mode, rng);

            HierarchyNode node;
            node.id = static_cast<int>(tree.nodes.size());
            node.step = step;
            node.member_count = 0;
            for (int mpos : members) {
                int child = current[active[mpos]];
                node.children.push_back(child);
                node.member_count += tree.nodes[child].member_count;
                tree.nodes[child].parent = node.id;
                pos_map[active[mpos]] = g;
            }
            node.medoid_sample = tree.nodes[current[active[members[local]]]].medoid_sample;
            next_coords.row(g) = xa->row(members[local]);
            next[g] = node.id;
            tree.nodes.push_back(std::move(node));
        }
        int slot = grouping.n_new;
        for (int pos = 0; pos < n_curr; ++pos) {
            if (is_active[pos]) continue;
            int child = current[pos];
            HierarchyNode node;
            node.id = static_cast<int>(tree.nodes.size());
            node.step = step;
            node.member_count = tree.nodes[child].member_count;
            node.medoid_sample = tree.nodes[child].medoid_sample;
            node.children.push_back(child);
            tree.nodes[child].parent = node.id;
            next_coords.row(slot) = level->row(pos);
            pos_map[pos] = slot;
            next[slot] = node.id;
            tree.nodes.push_back(std::move(node));
            ++slot;
        }

        for (int i = 0; i < n; ++i) sample_pos[i] = pos_map[sample_pos[i]];

        current = std::move(next);
        coords = std::move(next_coords);
        level = &coords;
        res.per_step_counts.push_back(n_next);
        if (n_next == n_curr) break;  // Alg. termination: n_curr == n_prev
    }

    res.steps_run = step;
    res.hierarchy.roots = current;
    res.labels.assign(sample_pos.begin(), sample_pos.end());
    res.n_clusters = static_cast<int>(current.size());
    return res;
}

}  // namespace

CohirfResult cohirf_fit(const Matrix& x, const CohirfConfig& config) {
    return run_loop(x, config);
}

CohirfResult cohirf_sampled_fit(const Matrix& x, const CohirfConfig& config) {
    if (!config.sample_batch) {
        throw std::invalid_argument("cohirf_sampled_fit: config.sample_batch is required");
    }
    return run_loop(x, config);
}

Partition reconstruct_final_clusters(const HierarchyTree& hierarchy) {
    const int n = hierarchy.n_samples;
    const int total = static_cast<int>(hierarchy.nodes.size());
    if (n < 1 || total < n) throw hierarchy_error("reconstruct: no leaves");
    for (int i = 0; i < n; ++i) {
        if (hierarchy.nodes[i].step != 0) {
            throw hierarchy_error("reconstruct: node " + std::to_string(i) + " is not a leaf");
        }
    }

    Partition labels(n, -1);
    std::vector<char> visited(total, 0);
    for (std::size_t r = 0; r < hierarchy.roots.size(); ++r) {
        std::vector<int> stack = {hierarchy.roots[r]};
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            if (id < 0 || id >= total) throw hierarchy_error("reconstruct: node id out of range");
            if (visited[id]) {
                throw hierarchy_error("reconstruct: node " + std::to_string(id) +
                                      " reachable twice");
            }
            visited[id] = 1;
            if (id < n) labels[id] = static_cast<int>(r);
            for (int child : hierarchy.nodes[id].children) stack.push_back(child);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (labels[i] < 0) {
            throw hierarchy_error("reconstruct: leaf " + std::to_string(i) + " has no root");
        }
    }
    return labels;
}

}  // namespace cohirf
