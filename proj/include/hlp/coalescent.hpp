// Reference laws for the critical universality class: the inhomogeneous
// random graph G(x,q), the exponential-clock exploration forest with
// size-biased vertex order, and excursion statistics of reflected Brownian
// motion with parabolic drift.
#pragma once

#include <cstdint>
#include <vector>

#include "hlp/rng.hpp"

namespace hlp {

struct WeightedConfig {
    std::vector<double> x;  // positive masses
    double q = 0.0;         // pair i,j connects w.p. 1 - exp(-q x_i x_j)
    std::vector<double> sorted_desc;

    static WeightedConfig create(std::vector<double> x, double q);
};

struct MassComponent {
    double mass = 0.0;
    std::int64_t surplus = 0;
    std::vector<std::uint32_t> members;  // ascending vertex indices
};

// Components sorted by mass descending, ties by smallest member index.
std::vector<MassComponent> sample_gxq(const WeightedConfig& cfg, Rng& rng);

struct ExplorationForest {
    std::vector<std::uint32_t> order;            // v(1), v(2), ...
    std::vector<std::uint32_t> component_sizes;  // in exploration order
    std::uint64_t N = 0;  // vertices explored when the max-mass component closes
};

// Exploration with clocks xi_{v,j} ~ Exp(q x_j); j is a child of v iff
// xi <= x_v, children ordered by clock value; roots chosen size-biased
// among unexplored vertices. The induced partition has the G(x,q) law.
ExplorationForest exploration_forest(const WeightedConfig& cfg, Rng& rng);

// Components of the forest partition, same ordering contract as sample_gxq
// except that equal masses break ties by exploration order.
std::vector<MassComponent> forest_components(const WeightedConfig& cfg,
                                             const ExplorationForest& forest);

// sup_{k <= ell} | sum_{i<=k} a_{v(i)} / (ell c_n) - k/ell | with
// c_n = sum y_i a_i / sum y_i, over one sampled size-biased permutation.
double size_biased_partial_sums(const std::vector<double>& weights,
                                const std::vector<double>& a_values,
                                std::size_t ell, Rng& rng);

struct LimitSample {
    std::vector<double> gamma;                  // excursion lengths, decreasing
    std::vector<std::uint64_t> surplus_counts;  // matched to gamma order
    std::vector<double> areas;                  // excursion areas, gamma order
    double grid_dt = 0.0;
    double T = 0.0;
    bool horizon_hit = false;  // open excursion after the one extension
};

// horizon default: parabolic drift kills mass beyond ~2(1+|lambda|)
double default_horizon(double lambda);

// W(t) = B(t) + lambda t - t^2/2 on an Euler grid, reflected at its running
// minimum; maximal excursions above zero give lengths and Poisson(area)
// surplus counts. An excursion still open at T extends the horizon once.
LimitSample sample_limit(double lambda, double grid_dt, double T, Rng& rng);

}  // namespace hlp
