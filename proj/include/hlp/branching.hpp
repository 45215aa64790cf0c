// Dominating branching processes: offspring law, tree simulation, and the
// joint coupling between the tree and the cluster of 0 in the barely
// subcritical graph.
#pragma once

#include <cstdint>
#include <vector>

#include "hlp/kernel.hpp"
#include "hlp/rng.hpp"

namespace hlp {

struct BranchingRun {
    std::uint64_t total_size = 0;
    std::uint64_t height = 0;
    std::vector<std::uint64_t> generation_sizes;  // index = generation
    bool truncated = false;
};

// One offspring draw: sum over shells i = 1..j of
// Binomial(L^{id} - L^{(i-1)d}, p^-_i).
std::uint64_t sample_offspring(std::uint32_t j, const ModelParams& params,
                               Rng& rng);

// Generation-by-generation tree; truncated flag set when a cap is hit.
BranchingRun sample_tree(std::uint32_t j, const ModelParams& params, Rng& rng,
                         std::uint64_t size_cap = 10'000'000,
                         std::uint64_t height_cap = 100'000);

struct CouplingReport {
    std::uint64_t replicates = 0;
    std::uint64_t size_violations = 0;   // |C(0)| > |T|
    std::uint64_t diam_violations = 0;   // diam(C(0)) > 2 height(T)
    std::uint64_t truncated_runs = 0;    // ghost subtrees that hit a cap
    double mean_tree_size = 0.0;
    double mean_cluster_size = 0.0;
    double mean_slack = 0.0;  // mean_tree_size - mean_cluster_size
};

// Joint construction: breadth-first exploration of the cluster of vertex 0
// under the barely subcritical table. Coins from the vertex being processed
// toward undiscovered vertices are shared between tree and cluster; coins
// toward already-discovered vertices add the cluster edge when the pair is
// still untested and spawn an independent ghost subtree in the tree. By
// construction |C(0)| <= |T| and diam(C(0)) <= 2 height(T) pathwise.
CouplingReport coupling_check(const ModelParams& params, const RngPolicy& rng,
                              std::uint64_t replicates,
                              std::uint64_t size_cap = 10'000'000,
                              std::uint64_t height_cap = 100'000);

}  // namespace hlp
