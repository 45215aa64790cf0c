#include "hlp/branching.hpp"

#include <queue>
#include <unordered_set>

#include "hlp/graphstats.hpp"

namespace hlp {

std::uint64_t sample_offspring(std::uint32_t j, const ModelParams& params,
                               Rng& rng) {
    std::uint64_t total = 0;
    for (std::uint32_t i = 1; i <= j; ++i)
        total += rng.binomial(params.lattice.shell_size(i),
                              params.prob_minus[i]);
    return total;
}

BranchingRun sample_tree(std::uint32_t j, const ModelParams& params, Rng& rng,
                         std::uint64_t size_cap, std::uint64_t height_cap) {
    BranchingRun run;
    std::uint64_t current = 1;
    run.generation_sizes.push_back(1);
    run.total_size = 1;
    while (current > 0) {
        if (run.generation_sizes.size() > height_cap) {
            run.truncated = true;
            break;
        }
        std::uint64_t next = 0;
        for (std::uint64_t v = 0; v < current; ++v)
            next += sample_offspring(j, params, rng);
        if (next == 0) break;
        if (run.total_size + next > size_cap) {
            run.truncated = true;
            run.total_size = size_cap;
            break;
        }
        run.generation_sizes.push_back(next);
        run.total_size += next;
        current = next;
    }
    run.height = run.generation_sizes.size() - 1;
    return run;
}

CouplingReport coupling_check(const ModelParams& params, const RngPolicy& rng,
                              std::uint64_t replicates,
                              std::uint64_t size_cap,
                              std::uint64_t height_cap) {
    const std::uint64_t V = params.lattice.num_vertices;
    if (V > (1ULL << 16))
        throw std::invalid_argument("coupling_check: lattice too large");
    const std::uint32_t n = params.lattice.n;

    CouplingReport report;
    report.replicates = replicates;
    long double tree_sum = 0.0L, cluster_sum = 0.0L;

    std::vector<std::uint32_t> depth(V);
    std::vector<std::uint32_t> local(V);

    for (std::uint64_t rep = 0; rep < replicates; ++rep) {
        Rng r = rng.stream(rep, 100u, 0u);

        std::vector<std::uint64_t> order{0};
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        std::unordered_set<std::uint64_t> tested;
        std::vector<bool> seen(V, false);
        seen[0] = true;
        depth[0] = 0;
        local[0] = 0;
        std::uint64_t tree_size = 1, tree_height = 0;
        bool truncated = false;

        for (std::size_t head = 0; head < order.size(); ++head) {
            std::uint64_t u = order[head];
            std::uint32_t child_depth = depth[u] + 1;
            for (std::uint64_t y = 0; y < V; ++y) {
                if (y == u) continue;
                double p = params.prob_minus[hier_level(u, y, params.lattice)];
                std::uint64_t key = u < y ? u * V + y : y * V + u;
                bool fresh = tested.insert(key).second;
                if (r.u01() >= p) continue;
                if (fresh && !seen[y]) {
                    // shared coin: new cluster vertex and real tree child
                    seen[y] = true;
                    depth[y] = child_depth;
                    local[y] = static_cast<std::uint32_t>(order.size());
                    edges.emplace_back(local[u], local[y]);
                    order.push_back(y);
                    ++tree_size;
                    tree_height = std::max<std::uint64_t>(tree_height,
                                                          child_depth);
                } else {
                    if (fresh) edges.emplace_back(local[u], local[y]);
                    // ghost child: independent subtree, tree side only
                    BranchingRun ghost =
                        sample_tree(n, params, r, size_cap, height_cap);
                    tree_size += ghost.total_size;
                    tree_height = std::max<std::uint64_t>(
                        tree_height, child_depth + ghost.height);
                    if (ghost.truncated) truncated = true;
                }
            }
        }

        if (truncated) ++report.truncated_runs;
        std::uint64_t cluster_size = order.size();
        if (cluster_size > tree_size) ++report.size_violations;

        ComponentGraph g = graph_from_edges(cluster_size, edges);
        DiameterResult dia = diameter(g, cluster_size);
        if (dia.value > 2 * tree_height) ++report.diam_violations;

        tree_sum += static_cast<long double>(tree_size);
        cluster_sum += static_cast<long double>(cluster_size);
    }

    report.mean_tree_size = static_cast<double>(tree_sum / replicates);
    report.mean_cluster_size = static_cast<double>(cluster_sum / replicates);
    report.mean_slack = report.mean_tree_size - report.mean_cluster_size;
    return report;
}

}  // namespace hlp
