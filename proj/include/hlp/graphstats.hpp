// Per-component metric and cycle analytics, and whole-sample aggregates.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hlp/rng.hpp"
#include "hlp/sampler.hpp"

namespace hlp {

// One connected component extracted from a sample, CSR adjacency over local
// vertex indices. Simple and undirected by construction of the samplers.
struct ComponentGraph {
    std::vector<std::uint64_t> vertex_ids;  // local index -> original id
    std::vector<std::uint32_t> xadj;        // size |V|+1
    std::vector<std::uint32_t> adj;

    std::size_t size() const { return vertex_ids.size(); }
    std::size_t edge_count() const { return adj.size() / 2; }
};

// Components of size >= 2, ordered like components(): size descending, then
// smallest original vertex id.
std::vector<ComponentGraph> extract_components(PercolationSample& sample,
                                               std::size_t min_size = 2);

// Build a ComponentGraph directly from an edge list on [0, n) (tests, oracles).
ComponentGraph graph_from_edges(
    std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

// exact hop distances from source (graph must be connected)
std::vector<std::uint32_t> bfs_distances(const ComponentGraph& g,
                                         std::uint32_t source);

// sum of distances from source to all vertices
std::uint64_t distance_sum(const ComponentGraph& g, std::uint32_t source);

struct DiameterResult {
    std::uint32_t value = 0;
    bool exact = true;  // false above the all-sources cap (double-sweep bound)
};
DiameterResult diameter(const ComponentGraph& g, std::size_t exact_cap = 4096);

std::int64_t surplus(const ComponentGraph& g);

// Contracted multigraph of the 2-core: nodes are branch vertices (degree >= 3
// in the 2-core) or one canonical vertex per pure cycle; edge weights are
// contracted path lengths. Self-loops and parallel edges allowed.
struct CycleKernel {
    std::uint32_t num_nodes = 0;
    struct KEdge {
        std::uint32_t u, v;
        std::uint64_t weight;
    };
    std::vector<KEdge> edges;

    std::int64_t cyclomatic() const;
};
CycleKernel cycle_kernel(const ComponentGraph& g);

// shortest graph cycle length (girth); nullopt on trees
std::optional<std::uint64_t> shortest_cycle(const ComponentGraph& g);

struct LongestCycleResult {
    std::optional<std::uint64_t> value;  // nullopt on trees
    bool computed = true;                // false when surplus exceeds the cap
};
LongestCycleResult longest_cycle(const ComponentGraph& g,
                                 std::int64_t surplus_cap = 12);

// mean pairwise distance over ordered vertex pairs (diagonal included);
// exact all-pairs up to exact_cap vertices, otherwise sampled pairs
struct MeanPairDistance {
    double mean = 0.0;
    double se = 0.0;  // 0 when exact
    bool exact = true;
};
MeanPairDistance mean_pair_distance(const ComponentGraph& g,
                                    std::size_t exact_cap, Rng& rng,
                                    std::uint32_t sample_pairs = 4096);

struct SampleAggregates {
    double sbar2 = 0.0, sbar3 = 0.0;        // L^{-nd} sum |C|^k
    double sigma1 = 0.0, sigma2 = 0.0, sigma3 = 0.0;
    double x_max = 0.0, x_min = 0.0;        // rescaled masses L^{-2nd/3}|C|
    std::uint64_t diam_max = 0;
    bool diam_exact = true;
    double tau = 0.0;                       // sum x_i^2 u_i
    bool tau_exact = true;
    double tau_se = 0.0;
};

// exact_cap bounds both the all-pairs distance work and exact diameters
SampleAggregates aggregates(PercolationSample& sample, Rng& rng,
                            std::size_t exact_cap = 512,
                            std::uint32_t sample_pairs = 4096);

}  // namespace hlp
