#include "hlp/coalescent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hlp {

WeightedConfig WeightedConfig::create(std::vector<double> x, double q) {
    if (x.empty()) throw std::invalid_argument("WeightedConfig: no weights");
    for (double w : x)
        if (!(w > 0.0)) throw std::invalid_argument("WeightedConfig: x_i <= 0");
    if (q < 0.0) throw std::invalid_argument("WeightedConfig: q < 0");
    WeightedConfig cfg;
    cfg.sorted_desc = x;
    std::sort(cfg.sorted_desc.begin(), cfg.sorted_desc.end(),
              std::greater<>());
    cfg.x = std::move(x);
    cfg.q = q;
    return cfg;
}

namespace {

std::vector<MassComponent> collect_components(
    const std::vector<double>& x, const std::vector<std::uint32_t>& comp_of,
    std::uint32_t num_comps, const std::vector<std::uint64_t>& edge_counts) {
    std::vector<MassComponent> out(num_comps);
    for (std::uint32_t v = 0; v < x.size(); ++v) {
        MassComponent& c = out[comp_of[v]];
        c.mass += x[v];
        c.members.push_back(v);
    }
    for (std::uint32_t c = 0; c < num_comps; ++c) {
        std::sort(out[c].members.begin(), out[c].members.end());
        if (!edge_counts.empty())
            out[c].surplus = static_cast<std::int64_t>(edge_counts[c]) -
                             static_cast<std::int64_t>(out[c].members.size()) +
                             1;
    }
    std::sort(out.begin(), out.end(),
              [](const MassComponent& a, const MassComponent& b) {
                  if (a.mass != b.mass) return a.mass > b.mass;
                  return a.members.front() < b.members.front();
              });
    return out;
}

}  // namespace

std::vector<MassComponent> sample_gxq(const WeightedConfig& cfg, Rng& rng) {
    const std::uint32_t n = static_cast<std::uint32_t>(cfg.x.size());
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            double p = -std::expm1(-cfg.q * cfg.x[i] * cfg.x[j]);
            if (rng.u01() < p) {
                edges.emplace_back(i, j);
                parent[find(i)] = find(j);
            }
        }

    std::vector<std::uint32_t> comp_of(n);
    std::uint32_t num = 0;
    std::vector<std::uint32_t> slot(n, 0xFFFFFFFFu);
    for (std::uint32_t v = 0; v < n; ++v) {
        std::uint32_t r = find(v);
        if (slot[r] == 0xFFFFFFFFu) slot[r] = num++;
        comp_of[v] = slot[r];
    }
    std::vector<std::uint64_t> edge_counts(num, 0);
    for (const auto& e : edges) ++edge_counts[comp_of[e.first]];
    return collect_components(cfg.x, comp_of, num, edge_counts);
}

ExplorationForest exploration_forest(const WeightedConfig& cfg, Rng& rng) {
    const std::uint32_t n = static_cast<std::uint32_t>(cfg.x.size());
    ExplorationForest forest;
    forest.order.reserve(n);

    // size-biased root order: ascending Exp(1)/x_i keys
    std::vector<std::pair<double, std::uint32_t>> root_keys(n);
    for (std::uint32_t i = 0; i < n; ++i)
        root_keys[i] = {rng.exponential(cfg.x[i]), i};
    std::sort(root_keys.begin(), root_keys.end());

    std::vector<bool> explored(n, false);
    std::size_t root_cursor = 0;
    std::uint32_t done = 0;
    while (done < n) {
        while (explored[root_keys[root_cursor].second]) ++root_cursor;
        std::uint32_t root = root_keys[root_cursor].second;
        std::size_t comp_start = forest.order.size();
        forest.order.push_back(root);
        explored[root] = true;
        ++done;
        for (std::size_t head = comp_start; head < forest.order.size();
             ++head) {
            std::uint32_t v = forest.order[head];
            std::vector<std::pair<double, std::uint32_t>> children;
            for (std::uint32_t j = 0; j < n; ++j) {
                if (explored[j]) continue;
                double xi = rng.exponential(cfg.q * cfg.x[j]);
                if (xi <= cfg.x[v]) children.emplace_back(xi, j);
            }
            std::sort(children.begin(), children.end());
            for (const auto& [xi, j] : children) {
                forest.order.push_back(j);
                explored[j] = true;
                ++done;
            }
        }
        forest.component_sizes.push_back(
            static_cast<std::uint32_t>(forest.order.size() - comp_start));
    }

    // N: explored count when the maximal-mass component closes
    double best_mass = -1.0;
    std::uint64_t cum = 0;
    std::size_t pos = 0;
    for (std::uint32_t sz : forest.component_sizes) {
        double mass = 0.0;
        for (std::uint32_t i = 0; i < sz; ++i)
            mass += cfg.x[forest.order[pos + i]];
        pos += sz;
        cum += sz;
        if (mass > best_mass) {
            best_mass = mass;
            forest.N = cum;
        }
    }
    return forest;
}

std::vector<MassComponent> forest_components(const WeightedConfig& cfg,
                                             const ExplorationForest& forest) {
    const std::uint32_t n = static_cast<std::uint32_t>(cfg.x.size());
    std::vector<std::uint32_t> comp_of(n);
    std::size_t pos = 0;
    for (std::uint32_t c = 0; c < forest.component_sizes.size(); ++c)
        for (std::uint32_t i = 0; i < forest.component_sizes[c]; ++i)
            comp_of[forest.order[pos++]] = c;
    return collect_components(
        cfg.x, comp_of, static_cast<std::uint32_t>(forest.component_sizes.size()),
        {});
}

double size_biased_partial_sums(const std::vector<double>& weights,
                                const std::vector<double>& a_values,
                                std::size_t ell, Rng& rng) {
    const std::size_t n = weights.size();
    if (a_values.size() != n)
        throw std::invalid_argument("size_biased_partial_sums: length mismatch");
    if (ell == 0 || ell > n)
        throw std::invalid_argument("size_biased_partial_sums: bad ell");
    double wsum = 0.0, wa = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        wsum += weights[i];
        wa += weights[i] * a_values[i];
    }
    double c = wa / wsum;
    if (!(c > 0.0))
        throw std::invalid_argument("size_biased_partial_sums: c_n <= 0");

    std::vector<std::pair<double, std::uint32_t>> keys(n);
    for (std::uint32_t i = 0; i < n; ++i)
        keys[i] = {rng.exponential(weights[i]), i};
    std::partial_sort(keys.begin(), keys.begin() + ell, keys.end());

    double partial = 0.0, worst = 0.0;
    for (std::size_t k = 1; k <= ell; ++k) {
        partial += a_values[keys[k - 1].second];
        worst = std::max(worst, std::abs(partial / (ell * c) -
                                         static_cast<double>(k) / ell));
    }
    return worst;
}

double default_horizon(double lambda) {
    return std::max(10.0, 4.0 * (1.0 + std::abs(lambda)));
}

LimitSample sample_limit(double lambda, double grid_dt, double T, Rng& rng) {
    if (!(grid_dt > 0.0) || !(T > 0.0))
        throw std::invalid_argument("sample_limit: grid_dt and T must be > 0");
    LimitSample out;
    out.grid_dt = grid_dt;
    out.T = T;

    const double sq = std::sqrt(grid_dt);
    double w = 0.0, run_min = 0.0, t = 0.0;
    double exc_start = 0.0, exc_area = 0.0;
    bool in_exc = false;
    std::vector<std::pair<double, double>> excursions;  // (length, area)

    double horizon = T;
    bool extended = false;
    while (t < horizon) {
        w += sq * rng.normal() + (lambda - t) * grid_dt;
        t += grid_dt;
        if (w <= run_min) {
            run_min = w;
            if (in_exc) {
                excursions.emplace_back(t - exc_start, exc_area);
                in_exc = false;
            }
        } else {
            if (!in_exc) {
                in_exc = true;
                exc_start = t;
                exc_area = 0.0;
            }
            exc_area += (w - run_min) * grid_dt;
        }
        if (t >= horizon && in_exc && !extended) {
            horizon = 2.0 * T;
            out.T = horizon;
            extended = true;
        }
    }
    if (in_exc) {
        excursions.emplace_back(horizon - exc_start, exc_area);
        out.horizon_hit = true;
    }

    std::sort(excursions.begin(), excursions.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [len, area] : excursions) {
        out.gamma.push_back(len);
        out.areas.push_back(area);
        out.surplus_counts.push_back(rng.poisson(area));
    }
    return out;
}

}  // namespace hlp
