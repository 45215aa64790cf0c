#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include "hlp/coalescent.hpp"
#include "hlp/stats.hpp"

using namespace hlp;

namespace {

std::string partition_key(const std::vector<MassComponent>& comps) {
    // canonical: members are sorted, components ordered by first member
    std::map<std::uint32_t, std::string> blocks;
    for (const auto& c : comps) {
        std::string b;
        for (std::uint32_t v : c.members) b += std::to_string(v) + ".";
        blocks[c.members.front()] = b;
    }
    std::string key;
    for (const auto& [first, b] : blocks) key += b + "|";
    return key;
}

}  // namespace

TEST_CASE("gxq basic laws") {
    Rng rng(1);
    WeightedConfig singletons =
        WeightedConfig::create({3.0, 1.0, 2.0}, 0.0);
    auto comps = sample_gxq(singletons, rng);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0].mass == 3.0);
    CHECK(comps[1].mass == 2.0);
    CHECK(comps[2].mass == 1.0);
    CHECK(singletons.sorted_desc == std::vector<double>{3.0, 2.0, 1.0});

    // two vertices with q x1 x2 = ln 2: merge probability exactly 1/2
    WeightedConfig pair = WeightedConfig::create({1.0, 1.0}, std::log(2.0));
    std::uint64_t merges = 0;
    const std::uint64_t reps = 10000;
    for (std::uint64_t r = 0; r < reps; ++r)
        if (sample_gxq(pair, rng).size() == 1) ++merges;
    double p = static_cast<double>(merges) / reps;
    CHECK(std::abs(p - 0.5) < 4.0 * std::sqrt(0.25 / reps));
}

TEST_CASE("exploration forest marginals") {
    Rng rng(2);
    WeightedConfig cfg = WeightedConfig::create({0.5, 1.0, 2.5}, 0.3);

    // single vertex
    WeightedConfig one = WeightedConfig::create({1.0}, 1.0);
    ExplorationForest f1 = exploration_forest(one, rng);
    CHECK(f1.order == std::vector<std::uint32_t>{0});
    CHECK(f1.N == 1);

    // v(1) is size-biased
    const std::uint64_t reps = 20000;
    std::vector<std::uint64_t> first(3, 0);
    for (std::uint64_t r = 0; r < reps; ++r)
        ++first[exploration_forest(cfg, rng).order.front()];
    double total = 0.5 + 1.0 + 2.5;
    for (std::uint32_t j = 0; j < 3; ++j) {
        double expect = cfg.x[j] / total;
        double se = std::sqrt(expect * (1 - expect) / reps);
        CHECK(std::abs(static_cast<double>(first[j]) / reps - expect) <
              4.0 * se);
    }
}

TEST_CASE("forest partition law equals gxq partition law") {
    Rng rng(3);
    WeightedConfig cfg =
        WeightedConfig::create({0.4, 0.8, 1.2, 1.6, 2.0}, 0.35);
    const std::uint64_t reps = 10000;
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> counts;
    for (std::uint64_t r = 0; r < reps; ++r) {
        ++counts[partition_key(sample_gxq(cfg, rng))].first;
        ExplorationForest f = exploration_forest(cfg, rng);
        ++counts[partition_key(forest_components(cfg, f))].second;
    }
    // two-sample chi-square over set partitions, pooled small cells
    double stat = 0.0;
    std::uint32_t cells = 0;
    std::uint64_t pa = 0, pb = 0;
    auto flush = [&](std::uint64_t a, std::uint64_t b) {
        double tot = static_cast<double>(a + b);
        double ea = tot / 2.0, eb = tot / 2.0;
        stat += (a - ea) * (a - ea) / ea + (b - eb) * (b - eb) / eb;
        ++cells;
    };
    for (const auto& [key, c] : counts) {
        pa += c.first;
        pb += c.second;
        if (pa + pb >= 20) {
            flush(pa, pb);
            pa = pb = 0;
        }
    }
    if (pa + pb > 0) flush(pa, pb);
    REQUIRE(cells >= 2);
    double pvalue = chi_square_pvalue(stat, cells - 1);
    CHECK(pvalue > 1e-3);
}

TEST_CASE("size-biased partial sums") {
    Rng rng(4);
    // constant weights, a == 1: the statistic vanishes identically
    std::vector<double> w(50, 2.0), a(50, 1.0);
    CHECK(size_biased_partial_sums(w, a, 50, rng) == doctest::Approx(0.0));

    // deterministic under a fixed seed
    std::vector<double> x(100);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::pow(static_cast<double>(i + 1), -0.4);
    Rng r1(77), r2(77);
    CHECK(size_biased_partial_sums(x, x, 50, r1) ==
          size_biased_partial_sums(x, x, 50, r2));

    // statistic shrinks as the configuration grows, for x_i = i^{-0.4}
    auto med_at = [&](std::size_t n) {
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = std::pow(static_cast<double>(i + 1), -0.4);
        std::vector<double> stats;
        for (int rep = 0; rep < 60; ++rep)
            stats.push_back(size_biased_partial_sums(xs, xs, n / 10, rng));
        return median(stats);
    };
    CHECK(med_at(10000) < med_at(100));
}

TEST_CASE("limit sample structure") {
    Rng rng(5);
    LimitSample s = sample_limit(0.0, 1e-3, default_horizon(0.0), rng);
    CHECK(s.grid_dt == 1e-3);
    REQUIRE(!s.gamma.empty());
    for (std::size_t i = 0; i + 1 < s.gamma.size(); ++i)
        CHECK(s.gamma[i] >= s.gamma[i + 1]);
    for (double g : s.gamma) {
        CHECK(g > 0.0);
        CHECK(g <= s.T);
    }
    CHECK(s.surplus_counts.size() == s.gamma.size());
    CHECK(s.areas.size() == s.gamma.size());

    Rng ra(9), rb(9);
    LimitSample a = sample_limit(0.5, 1e-3, 10.0, ra);
    LimitSample b = sample_limit(0.5, 1e-3, 10.0, rb);
    CHECK(a.gamma == b.gamma);
    CHECK(a.surplus_counts == b.surplus_counts);

    CHECK_THROWS(sample_limit(0.0, 0.0, 10.0, rng));
}

TEST_CASE("negative drift shrinks the first excursion") {
    Rng rng(6);
    auto median_gamma1 = [&](double lambda) {
        std::vector<double> g1;
        for (int rep = 0; rep < 300; ++rep) {
            LimitSample s =
                sample_limit(lambda, 1e-3, default_horizon(lambda), rng);
            g1.push_back(s.gamma.empty() ? 0.0 : s.gamma.front());
        }
        return median(g1);
    };
    double at0 = median_gamma1(0.0);
    double at4 = median_gamma1(-4.0);
    double at8 = median_gamma1(-8.0);
    CHECK(at4 < at0);
    CHECK(at8 < at4);
}

TEST_CASE("mean surplus equals mean excursion area") {
    Rng rng(7);
    long double area_sum = 0.0L, surplus_sum = 0.0L, area_sq = 0.0L;
    std::uint64_t count = 0;
    for (int rep = 0; rep < 2000; ++rep) {
        LimitSample s = sample_limit(0.0, 1e-3, 10.0, rng);
        for (std::size_t i = 0; i < s.gamma.size(); ++i) {
            area_sum += s.areas[i];
            area_sq += s.areas[i] * s.areas[i];
            surplus_sum += s.surplus_counts[i];
            ++count;
        }
    }
    // Var(surplus) = E[area] + Var(area)
    double mean_area = static_cast<double>(area_sum / count);
    double var =
        static_cast<double>(area_sq / count) - mean_area * mean_area +
        mean_area;
    double se = std::sqrt(var / static_cast<double>(count));
    CHECK(std::abs(static_cast<double>(surplus_sum / count) - mean_area) <
          4.0 * se);
}

TEST_CASE("statistics stable under grid halving") {
    Rng rng(8);
    auto median_gamma1 = [&](double dt) {
        std::vector<double> g1;
        for (int rep = 0; rep < 400; ++rep) {
            LimitSample s = sample_limit(0.0, dt, 10.0, rng);
            g1.push_back(s.gamma.empty() ? 0.0 : s.gamma.front());
        }
        return median(g1);
    };
    double coarse = median_gamma1(2e-3);
    double fine = median_gamma1(1e-3);
    CHECK(std::abs(coarse - fine) < 0.35);  // loose MC band
}
