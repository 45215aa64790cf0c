#include "hlp/graphstats.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace hlp {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

ComponentGraph build_csr(
    std::vector<std::uint64_t> vertex_ids,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& local_edges) {
    ComponentGraph g;
    g.vertex_ids = std::move(vertex_ids);
    const std::size_t nv = g.vertex_ids.size();
    g.xadj.assign(nv + 1, 0);
    for (const auto& e : local_edges) {
        ++g.xadj[e.first + 1];
        ++g.xadj[e.second + 1];
    }
    for (std::size_t v = 0; v < nv; ++v) g.xadj[v + 1] += g.xadj[v];
    g.adj.resize(2 * local_edges.size());
    std::vector<std::uint32_t> fill(g.xadj.begin(), g.xadj.end() - 1);
    for (const auto& e : local_edges) {
        g.adj[fill[e.first]++] = e.second;
        g.adj[fill[e.second]++] = e.first;
    }
    return g;
}

}  // namespace

std::vector<ComponentGraph> extract_components(PercolationSample& sample,
                                               std::size_t min_size) {
    const std::uint64_t V = sample.lattice.num_vertices;
    std::vector<std::uint32_t> comp_of(V, kNone);
    std::vector<std::uint32_t> local(V, 0);
    std::vector<std::vector<std::uint64_t>> verts;
    std::unordered_map<std::uint32_t, std::uint32_t> root_slot;

    for (std::uint64_t v = 0; v < V; ++v) {
        std::uint32_t r = sample.partition.find(static_cast<std::uint32_t>(v));
        if (sample.partition.size_of(r) < min_size) continue;
        auto it = root_slot.find(r);
        std::uint32_t c;
        if (it == root_slot.end()) {
            c = static_cast<std::uint32_t>(verts.size());
            root_slot.emplace(r, c);
            verts.emplace_back();
        } else {
            c = it->second;
        }
        comp_of[v] = c;
        local[v] = static_cast<std::uint32_t>(verts[c].size());
        verts[c].push_back(v);
    }

    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> ledges(
        verts.size());
    for (const auto& shell : sample.edges) {
        for (const auto& e : shell) {
            std::uint32_t c = comp_of[e.first];
            if (c == kNone) continue;
            ledges[c].emplace_back(local[e.first], local[e.second]);
        }
    }

    std::vector<ComponentGraph> out;
    out.reserve(verts.size());
    for (std::size_t c = 0; c < verts.size(); ++c)
        out.push_back(build_csr(std::move(verts[c]), ledges[c]));
    std::sort(out.begin(), out.end(),
              [](const ComponentGraph& a, const ComponentGraph& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a.vertex_ids[0] < b.vertex_ids[0];
              });
    return out;
}

ComponentGraph graph_from_edges(
    std::size_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::uint64_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    return build_csr(std::move(ids), edges);
}

std::vector<std::uint32_t> bfs_distances(const ComponentGraph& g,
                                         std::uint32_t source) {
    std::vector<std::uint32_t> dist(g.size(), kNone);
    std::deque<std::uint32_t> q;
    dist[source] = 0;
    q.push_back(source);
    while (!q.empty()) {
        std::uint32_t u = q.front();
        q.pop_front();
        for (std::uint32_t k = g.xadj[u]; k < g.xadj[u + 1]; ++k) {
            std::uint32_t w = g.adj[k];
            if (dist[w] == kNone) {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

std::uint64_t distance_sum(const ComponentGraph& g, std::uint32_t source) {
    std::uint64_t sum = 0;
    for (std::uint32_t d : bfs_distances(g, source)) sum += d;
    return sum;
}

DiameterResult diameter(const ComponentGraph& g, std::size_t exact_cap) {
    if (g.size() <= 1) return {0, true};
    auto ecc = [&](std::uint32_t s, std::uint32_t& far) {
        auto dist = bfs_distances(g, s);
        std::uint32_t best = 0;
        far = s;
        for (std::uint32_t v = 0; v < dist.size(); ++v)
            if (dist[v] > best) {
                best = dist[v];
                far = v;
            }
        return best;
    };
    std::uint32_t far;
    if (g.size() <= exact_cap) {
        std::uint32_t best = 0;
        for (std::uint32_t s = 0; s < g.size(); ++s)
            best = std::max(best, ecc(s, far));
        return {best, true};
    }
    // double sweep lower bound
    ecc(0, far);
    std::uint32_t f2;
    std::uint32_t bound = ecc(far, f2);
    return {bound, false};
}

std::int64_t surplus(const ComponentGraph& g) {
    return static_cast<std::int64_t>(g.edge_count()) -
           static_cast<std::int64_t>(g.size()) + 1;
}

std::int64_t CycleKernel::cyclomatic() const {
    if (num_nodes == 0) return 0;
    // E - V + number of kernel components
    std::vector<std::uint32_t> parent(num_nodes);
    for (std::uint32_t i = 0; i < num_nodes; ++i) parent[i] = i;
    std::function<std::uint32_t(std::uint32_t)> find =
        [&](std::uint32_t v) -> std::uint32_t {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : edges) parent[find(e.u)] = find(e.v);
    std::uint32_t comps = 0;
    for (std::uint32_t i = 0; i < num_nodes; ++i)
        if (find(i) == i) ++comps;
    return static_cast<std::int64_t>(edges.size()) - num_nodes + comps;
}

CycleKernel cycle_kernel(const ComponentGraph& g) {
    const std::size_t nv = g.size();
    std::vector<std::uint32_t> deg(nv);
    for (std::size_t v = 0; v < nv; ++v) deg[v] = g.xadj[v + 1] - g.xadj[v];

    // strip to the 2-core
    std::vector<bool> alive(nv, true);
    std::deque<std::uint32_t> q;
    for (std::uint32_t v = 0; v < nv; ++v)
        if (deg[v] <= 1) q.push_back(v);
    while (!q.empty()) {
        std::uint32_t v = q.front();
        q.pop_front();
        if (!alive[v]) continue;
        alive[v] = false;
        for (std::uint32_t k = g.xadj[v]; k < g.xadj[v + 1]; ++k) {
            std::uint32_t w = g.adj[k];
            if (alive[w] && --deg[w] == 1) q.push_back(w);
        }
    }

    CycleKernel kernel;
    // adjacency of the 2-core with edge ids for used-flag walking
    struct Arc {
        std::uint32_t to, eid;
    };
    std::vector<std::vector<Arc>> core(nv);
    std::uint32_t eid = 0;
    for (std::uint32_t v = 0; v < nv; ++v) {
        if (!alive[v]) continue;
        for (std::uint32_t k = g.xadj[v]; k < g.xadj[v + 1]; ++k) {
            std::uint32_t w = g.adj[k];
            if (w > v && alive[w]) {
                core[v].push_back({w, eid});
                core[w].push_back({v, eid});
                ++eid;
            }
        }
    }
    std::vector<bool> used(eid, false);

    std::vector<std::uint32_t> node_of(nv, kNone);
    for (std::uint32_t v = 0; v < nv; ++v)
        if (alive[v] && core[v].size() >= 3) node_of[v] = kernel.num_nodes++;

    auto walk = [&](std::uint32_t start, const Arc& first) {
        // follow a degree-2 chain until the next kernel node
        std::uint32_t prev = start, cur = first.to;
        std::uint64_t len = 1;
        used[first.eid] = true;
        while (node_of[cur] == kNone) {
            const Arc* next = nullptr;
            for (const Arc& a : core[cur]) {
                if (!used[a.eid]) {
                    next = &a;
                    break;
                }
                // a used arc back to prev is the one we came on; parallel
                // edges have distinct eids, so this is unambiguous
            }
            if (next == nullptr) break;  // closed walk back to start
            used[next->eid] = true;
            prev = cur;
            cur = next->to;
            ++len;
        }
        (void)prev;
        return std::make_pair(cur, len);
    };

    for (std::uint32_t v = 0; v < nv; ++v) {
        if (node_of[v] == kNone) continue;
        for (const Arc& a : core[v]) {
            if (used[a.eid]) continue;
            auto [end, len] = walk(v, a);
            kernel.edges.push_back({node_of[v], node_of[end], len});
        }
    }

    // leftover alive vertices with unused edges form pure cycles
    for (std::uint32_t v = 0; v < nv; ++v) {
        if (!alive[v] || node_of[v] != kNone) continue;
        for (const Arc& a : core[v]) {
            if (used[a.eid]) continue;
            std::uint32_t id = kernel.num_nodes++;
            node_of[v] = id;
            auto [end, len] = walk(v, a);
            if (end != v)
                throw std::logic_error("cycle_kernel: broken pure-cycle walk");
            kernel.edges.push_back({id, id, len});
            break;
        }
    }
    return kernel;
}

namespace {

// weighted shortest path between two kernel nodes, skipping one edge index
std::uint64_t kernel_shortest_path(const CycleKernel& k, std::uint32_t from,
                                   std::uint32_t to, std::size_t skip_edge) {
    constexpr std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> dist(k.num_nodes, inf);
    using Item = std::pair<std::uint64_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[from] = 0;
    pq.push({0, from});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (u == to) return d;
        for (std::size_t e = 0; e < k.edges.size(); ++e) {
            if (e == skip_edge) continue;
            const auto& ke = k.edges[e];
            std::uint32_t other;
            if (ke.u == u)
                other = ke.v;
            else if (ke.v == u)
                other = ke.u;
            else
                continue;
            std::uint64_t nd = d + ke.weight;
            if (nd < dist[other]) {
                dist[other] = nd;
                pq.push({nd, other});
            }
        }
    }
    return dist[to];
}

}  // namespace

std::optional<std::uint64_t> shortest_cycle(const ComponentGraph& g) {
    CycleKernel k = cycle_kernel(g);
    constexpr std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t best = inf;
    for (std::size_t e = 0; e < k.edges.size(); ++e) {
        const auto& ke = k.edges[e];
        if (ke.u == ke.v) {
            best = std::min(best, ke.weight);
            continue;
        }
        std::uint64_t rest = kernel_shortest_path(k, ke.u, ke.v, e);
        if (rest != inf) best = std::min(best, ke.weight + rest);
    }
    if (best == inf) return std::nullopt;
    return best;
}

namespace {

struct CycleSearch {
    const CycleKernel& k;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj;
    std::vector<bool> edge_used;
    std::vector<bool> visited;
    std::uint64_t best = 0;
    std::uint32_t start = 0;

    explicit CycleSearch(const CycleKernel& kernel) : k(kernel) {
        adj.resize(k.num_nodes);
        for (std::uint32_t e = 0; e < k.edges.size(); ++e) {
            const auto& ke = k.edges[e];
            if (ke.u == ke.v) continue;  // handled separately
            adj[ke.u].push_back({ke.v, e});
            adj[ke.v].push_back({ke.u, e});
        }
        edge_used.assign(k.edges.size(), false);
        visited.assign(k.num_nodes, false);
    }

    void dfs(std::uint32_t u, std::uint64_t weight) {
        for (const auto& [v, e] : adj[u]) {
            if (edge_used[e]) continue;
            if (v == start) {
                best = std::max(best, weight + k.edges[e].weight);
                continue;
            }
            if (visited[v] || v < start) continue;
            edge_used[e] = true;
            visited[v] = true;
            dfs(v, weight + k.edges[e].weight);
            visited[v] = false;
            edge_used[e] = false;
        }
    }
};

}  // namespace

LongestCycleResult longest_cycle(const ComponentGraph& g,
                                 std::int64_t surplus_cap) {
    LongestCycleResult r;
    std::int64_t spl = surplus(g);
    if (spl == 0) {
        r.value = std::nullopt;
        return r;
    }
    if (spl > surplus_cap) {
        r.computed = false;
        return r;
    }
    CycleKernel k = cycle_kernel(g);
    CycleSearch search(k);
    for (const auto& ke : k.edges)
        if (ke.u == ke.v) search.best = std::max(search.best, ke.weight);
    for (std::uint32_t s = 0; s < k.num_nodes; ++s) {
        search.start = s;
        search.dfs(s, 0);
    }
    r.value = search.best;
    return r;
}

MeanPairDistance mean_pair_distance(const ComponentGraph& g,
                                    std::size_t exact_cap, Rng& rng,
                                    std::uint32_t sample_pairs) {
    MeanPairDistance r;
    const std::size_t nv = g.size();
    if (nv <= 1) return r;
    if (nv <= exact_cap) {
        long double total = 0.0L;
        for (std::uint32_t s = 0; s < nv; ++s) total += distance_sum(g, s);
        r.mean = static_cast<double>(total / (static_cast<long double>(nv) *
                                              static_cast<long double>(nv)));
        return r;
    }
    // Sampled fallback: batches of pairs sharing a BFS source; the standard
    // error is taken across source batches to respect the correlation.
    const std::uint32_t per_source = 16;
    const std::uint32_t sources = std::max(1u, sample_pairs / per_source);
    long double grand = 0.0L, sumsq = 0.0L;
    for (std::uint32_t s = 0; s < sources; ++s) {
        std::uint32_t src = static_cast<std::uint32_t>(rng.below(nv));
        auto dist = bfs_distances(g, src);
        long double m = 0.0L;
        for (std::uint32_t t = 0; t < per_source; ++t)
            m += dist[rng.below(nv)];
        m /= per_source;
        grand += m;
        sumsq += m * m;
    }
    long double mean = grand / sources;
    long double var = sumsq / sources - mean * mean;
    if (var < 0.0L) var = 0.0L;
    r.mean = static_cast<double>(mean);
    r.se = static_cast<double>(std::sqrt(var / sources));
    r.exact = false;
    return r;
}

SampleAggregates aggregates(PercolationSample& sample, Rng& rng,
                            std::size_t exact_cap,
                            std::uint32_t sample_pairs) {
    SampleAggregates agg;
    const std::uint64_t V = sample.lattice.num_vertices;
    const double mass_scale = std::pow(static_cast<double>(V), 2.0 / 3.0);

    auto comps = components(sample);
    std::uint64_t total = 0;
    long double s2 = 0.0L, s3 = 0.0L;
    for (const auto& c : comps) {
        total += c.size;
        long double sz = static_cast<long double>(c.size);
        s2 += sz * sz;
        s3 += sz * sz * sz;
    }
    if (total != V)
        throw std::logic_error("aggregates: component sizes do not sum to |V|");
    agg.sbar2 = static_cast<double>(s2 / static_cast<long double>(V));
    agg.sbar3 = static_cast<double>(s3 / static_cast<long double>(V));
    // sigma_k = L^{-nd(2k-3)/3} sbar_k; sigma_1 = L^{nd/3} by mass conservation
    agg.sigma1 = std::cbrt(static_cast<double>(V));
    agg.sigma2 = agg.sbar2 / std::cbrt(static_cast<double>(V));
    agg.sigma3 = agg.sbar3 / std::pow(static_cast<double>(V), 1.0);
    agg.x_max = static_cast<double>(comps.front().size) / mass_scale;
    agg.x_min = static_cast<double>(comps.back().size) / mass_scale;

    auto graphs = extract_components(sample, 2);
    long double tau = 0.0L, tau_var = 0.0L;
    for (auto& g : graphs) {
        auto dia = diameter(g, exact_cap);
        if (!dia.exact) agg.diam_exact = false;
        agg.diam_max = std::max<std::uint64_t>(agg.diam_max, dia.value);
        auto u = mean_pair_distance(g, exact_cap, rng, sample_pairs);
        if (!u.exact) agg.tau_exact = false;
        double x = static_cast<double>(g.size()) / mass_scale;
        tau += static_cast<long double>(x) * x * u.mean;
        tau_var += static_cast<long double>(x * x * u.se) * (x * x * u.se);
    }
    agg.tau = static_cast<double>(tau);
    agg.tau_se = static_cast<double>(std::sqrt(tau_var));
    return agg;
}

}  // namespace hlp
