#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hlp/graphstats.hpp"

using namespace hlp;

namespace {

using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// brute-force girth / longest simple cycle on the raw graph, for oracles
struct BruteCycles {
    std::optional<std::uint64_t> shortest, longest;
};

void brute_dfs(const std::vector<std::vector<std::pair<std::uint32_t,
                                                       std::uint32_t>>>& adj,
               std::vector<bool>& vis, std::vector<bool>& used,
               std::uint32_t start, std::uint32_t u, std::uint64_t len,
               BruteCycles& out) {
    for (const auto& [v, e] : adj[u]) {
        if (used[e]) continue;
        if (v == start) {
            if (len + 1 >= 3 || true) {
                if (!out.shortest || len + 1 < *out.shortest)
                    out.shortest = len + 1;
                if (!out.longest || len + 1 > *out.longest)
                    out.longest = len + 1;
            }
            continue;
        }
        if (vis[v] || v < start) continue;
        vis[v] = true;
        used[e] = true;
        brute_dfs(adj, vis, used, start, v, len + 1, out);
        used[e] = false;
        vis[v] = false;
    }
}

BruteCycles brute_cycles(std::size_t n, const EdgeList& edges) {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(n);
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].first].push_back({edges[e].second, e});
        adj[edges[e].second].push_back({edges[e].first, e});
    }
    BruteCycles out;
    std::vector<bool> vis(n, false), used(edges.size(), false);
    for (std::uint32_t s = 0; s < n; ++s) {
        vis[s] = true;
        brute_dfs(adj, vis, used, s, s, 0, out);
        vis[s] = false;
    }
    return out;
}

}  // namespace

TEST_CASE("path graph metrics") {
    EdgeList path = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    ComponentGraph g = graph_from_edges(5, path);
    CHECK(g.edge_count() == 4);
    CHECK(surplus(g) == 0);
    CHECK(diameter(g, 16).value == 4);
    CHECK(diameter(g, 16).exact);
    CHECK_FALSE(shortest_cycle(g).has_value());
    CHECK_FALSE(longest_cycle(g).value.has_value());
    CHECK(distance_sum(g, 0) == 10);
    CHECK(cycle_kernel(g).num_nodes == 0);

    Rng rng(1);
    MeanPairDistance u = mean_pair_distance(g, 16, rng);
    CHECK(u.exact);
    CHECK(u.mean == doctest::Approx(40.0 / 25.0));
}

TEST_CASE("single cycle") {
    EdgeList c5 = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    ComponentGraph g = graph_from_edges(5, c5);
    CHECK(surplus(g) == 1);
    CHECK(diameter(g, 16).value == 2);
    CHECK(shortest_cycle(g).value() == 5);
    CHECK(longest_cycle(g).value.value() == 5);
    CycleKernel k = cycle_kernel(g);
    CHECK(k.num_nodes == 1);  // one pure-cycle node with a self-loop
    REQUIRE(k.edges.size() == 1);
    CHECK(k.edges[0].u == k.edges[0].v);
    CHECK(k.edges[0].weight == 5);
    CHECK(k.cyclomatic() == 1);
}

TEST_CASE("figure eight") {
    // two triangles sharing vertex 0
    EdgeList g8 = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}};
    ComponentGraph g = graph_from_edges(5, g8);
    CHECK(surplus(g) == 2);
    CHECK(shortest_cycle(g).value() == 3);
    CHECK(longest_cycle(g).value.value() == 3);  // simple cycles only
    CycleKernel k = cycle_kernel(g);
    CHECK(k.num_nodes == 1);
    CHECK(k.edges.size() == 2);
    CHECK(k.cyclomatic() == 2);
}

TEST_CASE("complete graph K4 and theta graph") {
    EdgeList k4 = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    ComponentGraph g = graph_from_edges(4, k4);
    CHECK(surplus(g) == 3);
    CHECK(shortest_cycle(g).value() == 3);
    CHECK(longest_cycle(g).value.value() == 4);
    CHECK(cycle_kernel(g).cyclomatic() == 3);

    // theta graph: two degree-3 vertices joined by paths of length 2, 3, 4
    EdgeList theta = {{0, 2}, {2, 1}, {0, 3}, {3, 4}, {4, 1},
                      {0, 5}, {5, 6}, {6, 7}, {7, 1}};
    ComponentGraph t = graph_from_edges(8, theta);
    CHECK(surplus(t) == 2);
    CHECK(shortest_cycle(t).value() == 5);   // 2 + 3
    CHECK(longest_cycle(t).value.value() == 7);  // 3 + 4
    CycleKernel k = cycle_kernel(t);
    CHECK(k.num_nodes == 2);
    CHECK(k.edges.size() == 3);
}

TEST_CASE("cycle with pendant trees") {
    // C4 with a path of length 3 hanging off vertex 0
    EdgeList mixed = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 6}};
    ComponentGraph g = graph_from_edges(7, mixed);
    CHECK(surplus(g) == 1);
    CHECK(shortest_cycle(g).value() == 4);
    CHECK(longest_cycle(g).value.value() == 4);
    CHECK(diameter(g, 16).value == 5);
    CHECK(cycle_kernel(g).cyclomatic() == 1);
}

TEST_CASE("petersen graph") {
    EdgeList petersen = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                         {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
                         {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}};
    ComponentGraph g = graph_from_edges(10, petersen);
    CHECK(surplus(g) == 6);
    CHECK(diameter(g, 16).value == 2);
    CHECK(shortest_cycle(g).value() == 5);
    CHECK(longest_cycle(g).value.value() == 9);  // hypohamiltonian
}

TEST_CASE("surplus cap skips the search") {
    EdgeList k4 = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    ComponentGraph g = graph_from_edges(4, k4);
    LongestCycleResult r = longest_cycle(g, 2);
    CHECK_FALSE(r.computed);
    CHECK_FALSE(r.value.has_value());
}

TEST_CASE("cycle analytics match brute force on random graphs") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(6));
        EdgeList edges;
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b)
                if (rng.u01() < 0.35) edges.push_back({a, b});
        ComponentGraph g = graph_from_edges(n, edges);
        // restrict to connected instances: the analytics assume one component
        auto dist = bfs_distances(g, 0);
        bool connected = true;
        for (std::uint32_t v = 0; v < n; ++v)
            if (dist[v] == 0xFFFFFFFFu) connected = false;
        if (!connected) continue;

        BruteCycles oracle = brute_cycles(n, edges);
        auto girth = shortest_cycle(g);
        auto longest = longest_cycle(g, 64);
        CHECK(girth == oracle.shortest);
        CHECK(longest.computed);
        CHECK(longest.value == oracle.longest);
        CHECK(cycle_kernel(g).cyclomatic() == surplus(g));
    }
}

TEST_CASE("extract_components and aggregates identities") {
    LatticeSpec lattice = LatticeSpec::create(2, 1, 6);
    ModelParams params = ModelParams::create(lattice, KernelSpec{});
    RngPolicy policy{31};
    PercolationSample s = sample_stratified(params, Stage::Critical, policy, 0);

    auto graphs = extract_components(s, 2);
    auto comps = components(s);
    std::size_t at = 0;
    std::uint64_t covered = 0;
    for (const auto& c : comps) {
        if (c.size < 2) continue;
        REQUIRE(at < graphs.size());
        CHECK(graphs[at].size() == c.size);
        CHECK(graphs[at].edge_count() == c.edges);
        CHECK(graphs[at].vertex_ids.front() == c.representative);
        covered += c.size;
        ++at;
    }
    CHECK(at == graphs.size());
    (void)covered;

    Rng rng(5);
    SampleAggregates agg = aggregates(s, rng, 512);
    const double V = static_cast<double>(lattice.num_vertices);
    CHECK(agg.sigma1 == doctest::Approx(std::cbrt(V)).epsilon(1e-12));
    CHECK(agg.sigma2 == doctest::Approx(agg.sbar2 / std::cbrt(V)));
    CHECK(agg.sigma3 == doctest::Approx(agg.sbar3 / V));
    CHECK(agg.x_max >= agg.x_min);
    CHECK(agg.diam_exact);
    CHECK(agg.tau_exact);

    // tau identity: sum_i x_i^2 u_i = L^{-4nd/3} sum_v D(v)
    long double dsum = 0.0L;
    for (const auto& g : graphs)
        for (std::uint32_t v = 0; v < g.size(); ++v)
            dsum += distance_sum(g, v);
    double expected = static_cast<double>(dsum) / std::pow(V, 4.0 / 3.0);
    CHECK(agg.tau == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sampled mean pair distance tracks the exact value") {
    // long random tree so the sampled path is exercised
    Rng build(99);
    EdgeList edges;
    const std::uint32_t n = 600;
    for (std::uint32_t v = 1; v < n; ++v)
        edges.push_back({static_cast<std::uint32_t>(build.below(v)), v});
    ComponentGraph g = graph_from_edges(n, edges);

    Rng rng(7);
    MeanPairDistance exact = mean_pair_distance(g, 1 << 12, rng);
    MeanPairDistance approx = mean_pair_distance(g, 16, rng, 4096);
    CHECK(exact.exact);
    CHECK_FALSE(approx.exact);
    CHECK(approx.se > 0.0);
    CHECK(std::abs(approx.mean - exact.mean) < 5.0 * approx.se + 0.05);
}
