#include "hlp/sampler.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace hlp {

UnionFind::UnionFind(std::uint64_t n) {
    if (n > (1ULL << 31))
        throw std::invalid_argument("UnionFind: vertex count exceeds 2^31");
    parent_.resize(n);
    size_.assign(n, 1);
    for (std::uint64_t i = 0; i < n; ++i)
        parent_[i] = static_cast<std::uint32_t>(i);
}

std::uint32_t UnionFind::find(std::uint32_t v) {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];  // path halving
        v = parent_[v];
    }
    return v;
}

void UnionFind::unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
}

std::uint64_t PercolationSample::edge_count() const {
    std::uint64_t c = 0;
    for (const auto& shell : edges) c += shell.size();
    return c;
}

namespace {

PercolationSample empty_sample(const ModelParams& params, Stage stage,
                               const RngPolicy& rng, std::uint64_t replicate) {
    PercolationSample s;
    s.lattice = params.lattice;
    s.zeta = params.zeta;
    s.edges.assign(params.lattice.n + 1, {});
    s.partition = UnionFind(params.lattice.num_vertices);
    s.master_seed = rng.master_seed;
    s.replicate = replicate;
    s.stage = stage;
    return s;
}

void sample_shell_into(PercolationSample& s, std::uint32_t shell, double p,
                       Rng& g) {
    if (p <= 0.0) return;
    if (p >= 1.0)
        throw std::invalid_argument("sampler: shell probability >= 1");
    const std::uint64_t N = s.lattice.pair_count(shell);
    auto& out = s.edges[shell];
    std::uint64_t pos = g.geometric_skip(p);
    while (pos < N) {
        auto [a, b] = decode_pair(shell, pos, s.lattice);
        out.emplace_back(a, b);
        s.partition.unite(static_cast<std::uint32_t>(a),
                          static_cast<std::uint32_t>(b));
        std::uint64_t gap = g.geometric_skip(p);
        if (gap >= N - pos - 1) break;
        pos += 1 + gap;
    }
}

}  // namespace

PercolationSample sample_table(const ModelParams& params,
                               const std::vector<double>& shell_probs,
                               Stage stage_tag, const RngPolicy& rng,
                               std::uint64_t replicate) {
    PercolationSample s = empty_sample(params, stage_tag, rng, replicate);
    for (std::uint32_t i = 1; i <= params.lattice.n; ++i) {
        Rng g = rng.stream(replicate, stage_tag, i);
        sample_shell_into(s, i, shell_probs[i], g);
    }
    return s;
}

PercolationSample sample_stratified(const ModelParams& params, Stage stage,
                                    const RngPolicy& rng,
                                    std::uint64_t replicate) {
    if (stage == Stage::Sprinkle)
        throw std::invalid_argument(
            "sample_stratified: sprinkle stage needs a base sample");
    const auto& probs =
        stage == Stage::Minus ? params.prob_minus : params.prob_critical;
    return sample_table(params, probs, stage, rng, replicate);
}

PercolationSample sample_sprinkle_on(const PercolationSample& base,
                                     const ModelParams& params,
                                     const RngPolicy& rng,
                                     std::uint64_t replicate) {
    if (base.stage != Stage::Minus)
        throw std::invalid_argument(
            "sample_sprinkle_on: base must be a barely-subcritical sample");
    if (!params.two_stage_valid)
        throw std::invalid_argument(
            "sample_sprinkle_on: sprinkle exponent negative; two-stage "
            "construction invalid for these parameters");
    PercolationSample s = base;
    s.stage = Stage::Critical;
    s.sprinkled = true;
    const double t = params.sprinkle_t;
    if (t <= 0.0) return s;

    for (std::uint32_t i = 1; i <= params.lattice.n; ++i) {
        // pair indices already open in the base, for collision lookups
        std::vector<std::uint64_t> taken;
        taken.reserve(base.edges[i].size());
        for (const auto& e : base.edges[i])
            taken.push_back(encode_pair(i, e.first, e.second, params.lattice));
        std::sort(taken.begin(), taken.end());

        const std::uint64_t N = params.lattice.pair_count(i);
        Rng g = rng.stream(replicate, Stage::Sprinkle, i);
        std::uint64_t pos = g.geometric_skip(t);
        while (pos < N) {
            if (!std::binary_search(taken.begin(), taken.end(), pos)) {
                auto [a, b] = decode_pair(i, pos, params.lattice);
                s.edges[i].emplace_back(a, b);
                s.partition.unite(static_cast<std::uint32_t>(a),
                                  static_cast<std::uint32_t>(b));
            }
            std::uint64_t gap = g.geometric_skip(t);
            if (gap >= N - pos - 1) break;
            pos += 1 + gap;
        }
        std::sort(s.edges[i].begin(), s.edges[i].end());
    }
    return s;
}

PercolationSample sample_naive(const ModelParams& params, Stage stage,
                               const RngPolicy& rng, std::uint64_t replicate) {
    if (stage == Stage::Sprinkle)
        throw std::invalid_argument("sample_naive: invalid stage");
    const auto& probs =
        stage == Stage::Minus ? params.prob_minus : params.prob_critical;
    return sample_naive_table(params, probs, stage, rng, replicate);
}

PercolationSample sample_naive_table(const ModelParams& params,
                                     const std::vector<double>& probs,
                                     Stage stage, const RngPolicy& rng,
                                     std::uint64_t replicate) {
    if (params.lattice.num_vertices > (1ULL << 16))
        throw std::invalid_argument("sample_naive: guarded to 2^16 vertices");
    PercolationSample s = empty_sample(params, stage, rng, replicate);
    Rng g = rng.stream(replicate, stage, 0);
    const std::uint64_t V = params.lattice.num_vertices;
    for (std::uint64_t v = 0; v < V; ++v) {
        for (std::uint64_t w = v + 1; w < V; ++w) {
            std::uint32_t lvl = hier_level(v, w, params.lattice);
            if (g.u01() < probs[lvl]) {
                s.edges[lvl].emplace_back(v, w);
                s.partition.unite(static_cast<std::uint32_t>(v),
                                  static_cast<std::uint32_t>(w));
            }
        }
    }
    return s;
}

namespace {

std::vector<ComponentSummary> summarize(
    UnionFind& uf, std::uint64_t num_vertices,
    const std::vector<std::vector<Edge>>& edges) {
    std::unordered_map<std::uint32_t, std::size_t> slot;
    std::vector<ComponentSummary> out;
    for (std::uint64_t v = 0; v < num_vertices; ++v) {
        std::uint32_t r = uf.find(static_cast<std::uint32_t>(v));
        auto it = slot.find(r);
        if (it == slot.end()) {
            slot.emplace(r, out.size());
            // first vertex seen is the smallest id in the component
            out.push_back({static_cast<std::uint32_t>(v),
                           uf.size_of(r), 0});
        }
    }
    for (const auto& shell : edges)
        for (const auto& e : shell)
            ++out[slot.at(uf.find(static_cast<std::uint32_t>(e.first)))].edges;
    std::sort(out.begin(), out.end(),
              [](const ComponentSummary& a, const ComponentSummary& b) {
                  if (a.size != b.size) return a.size > b.size;
                  return a.representative < b.representative;
              });
    return out;
}

}  // namespace

std::vector<ComponentSummary> components(PercolationSample& sample) {
    return summarize(sample.partition, sample.lattice.num_vertices,
                     sample.edges);
}

std::vector<ComponentSummary> torus_components(TorusSample& sample) {
    return summarize(sample.partition, sample.spec.num_vertices, sample.edges);
}

// ---- torus sampling ----

namespace {

struct TorusOffset {
    std::uint64_t flat;      // flat index of the canonical offset
    bool antipodal;          // o == -o mod m
    std::uint32_t half_dim;  // for antipodal: first coord with o_j = m/2
    std::uint64_t base_count;
};

std::vector<TorusOffset> class_offsets(std::uint32_t k, const TorusSpec& spec) {
    std::vector<TorusOffset> out;
    const std::uint64_t V = spec.num_vertices;
    for (std::uint64_t flat = 1; flat < V; ++flat) {
        if (torus_distance(flat, 0, spec) != k) continue;
        // canonical representative of {o, -o}: the smaller flat index
        std::vector<std::uint32_t> co = torus_coords(flat, spec);
        std::vector<std::uint32_t> neg(spec.d);
        for (std::uint32_t j = 0; j < spec.d; ++j)
            neg[j] = (spec.m - co[j]) % spec.m;
        std::uint64_t nflat = torus_index(neg, spec);
        if (nflat < flat) continue;  // the negative is canonical
        TorusOffset o;
        o.flat = flat;
        o.antipodal = (nflat == flat);
        o.half_dim = 0;
        if (o.antipodal) {
            for (std::uint32_t j = 0; j < spec.d; ++j)
                if (co[j] == spec.m / 2) {
                    o.half_dim = j;
                    break;
                }
        }
        o.base_count = o.antipodal ? V / 2 : V;
        out.push_back(o);
    }
    return out;
}

// base sub-index -> flat base vertex; for antipodal offsets the coordinate
// `half_dim` runs over [0, m/2) only
std::uint64_t decode_base(std::uint64_t idx, const TorusOffset& o,
                          const TorusSpec& spec) {
    std::vector<std::uint32_t> c(spec.d);
    for (std::uint32_t j = 0; j < spec.d; ++j) {
        std::uint32_t range =
            (o.antipodal && j == o.half_dim) ? spec.m / 2 : spec.m;
        c[j] = static_cast<std::uint32_t>(idx % range);
        idx /= range;
    }
    return torus_index(c, spec);
}

std::uint64_t torus_add(std::uint64_t a, std::uint64_t b,
                        const TorusSpec& spec) {
    std::vector<std::uint32_t> ca = torus_coords(a, spec);
    std::vector<std::uint32_t> cb = torus_coords(b, spec);
    for (std::uint32_t j = 0; j < spec.d; ++j) ca[j] = (ca[j] + cb[j]) % spec.m;
    return torus_index(ca, spec);
}

}  // namespace

std::uint64_t torus_pair_count(std::uint32_t k, const TorusSpec& spec) {
    std::uint64_t total = 0;
    for (const auto& o : class_offsets(k, spec)) total += o.base_count;
    return total;
}

TorusSample sample_torus(const TorusSpec& spec,
                         const std::vector<double>& class_probs,
                         const RngPolicy& rng, std::uint64_t replicate) {
    if (spec.num_vertices > (1ULL << 24))
        throw std::invalid_argument("sample_torus: guarded to 2^24 vertices");
    if (class_probs.size() < spec.m / 2 + 1)
        throw std::invalid_argument("sample_torus: probability table too short");
    TorusSample s;
    s.spec = spec;
    s.edges.assign(spec.m / 2 + 1, {});
    s.partition = UnionFind(spec.num_vertices);
    s.master_seed = rng.master_seed;
    s.replicate = replicate;

    for (std::uint32_t k = 1; k <= spec.m / 2; ++k) {
        const double p = class_probs[k];
        if (p <= 0.0) continue;
        if (p >= 1.0)
            throw std::invalid_argument("sample_torus: class probability >= 1");
        auto offs = class_offsets(k, spec);
        std::vector<std::uint64_t> prefix(offs.size() + 1, 0);
        for (std::size_t j = 0; j < offs.size(); ++j)
            prefix[j + 1] = prefix[j] + offs[j].base_count;
        const std::uint64_t N = prefix.back();
        Rng g = rng.stream(replicate, static_cast<std::uint32_t>(3), k);
        std::uint64_t pos = g.geometric_skip(p);
        while (pos < N) {
            std::size_t oi =
                std::upper_bound(prefix.begin(), prefix.end(), pos) -
                prefix.begin() - 1;
            std::uint64_t base = decode_base(pos - prefix[oi], offs[oi], spec);
            std::uint64_t other = torus_add(base, offs[oi].flat, spec);
            s.edges[k].emplace_back(std::min(base, other),
                                    std::max(base, other));
            s.partition.unite(static_cast<std::uint32_t>(base),
                              static_cast<std::uint32_t>(other));
            std::uint64_t gap = g.geometric_skip(p);
            if (gap >= N - pos - 1) break;
            pos += 1 + gap;
        }
    }
    return s;
}

}  // namespace hlp
