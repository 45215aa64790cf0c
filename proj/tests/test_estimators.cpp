#include <doctest.h>

#include <cmath>

#include "hlp/estimators.hpp"

using namespace hlp;

namespace {

ModelParams small_model() {
    LatticeSpec lattice = LatticeSpec::create(2, 1, 8);
    KernelSpec kernel{0.9, 1.0, 1.1, 0.0};
    return ModelParams::create(lattice, kernel);
}

}  // namespace

TEST_CASE("two-point estimates track the edge probabilities") {
    ModelParams params = small_model();
    RngPolicy rng(41);
    ShellEstimate est = two_point(params, 4000, rng);
    REQUIRE(est.p_hat.size() == params.lattice.n + 1);
    CHECK(est.replicates == 4000);

    // connection probability dominates the direct-edge probability
    for (std::uint32_t i = 1; i <= params.lattice.n; ++i) {
        CHECK(est.p_hat[i] >= 0.0);
        CHECK(est.p_hat[i] <= 1.0);
        CHECK(est.p_hat[i] >= params.prob_minus[i] - 3.0 * est.se[i] - 1e-12);
    }
    // the nearest shell connects more often than the farthest
    CHECK(est.p_hat[1] > est.p_hat[params.lattice.n]);
}

TEST_CASE("two-point on an empty graph is zero") {
    LatticeSpec lattice = LatticeSpec::create(2, 1, 6);
    KernelSpec kernel{0.9, 1e-12, 1.1, 0.0};
    ModelParams params = ModelParams::create(lattice, kernel);
    // probabilities of order 1e-12 / zeta: with few replicates every sample
    // is empty and only the shell containing vertex 0's partner survives
    RngPolicy rng(42);
    ShellEstimate est = two_point(params, 50, rng);
    double total = 0.0;
    for (std::uint32_t i = 1; i <= params.lattice.n; ++i)
        total += est.p_hat[i];
    CHECK(total < 1e-3);
}

TEST_CASE("triangle-type sums against a direct evaluation") {
    ModelParams params = small_model();
    const std::uint32_t n = params.lattice.n;

    // feed a synthetic deterministic profile so the sum is checkable by hand
    ShellEstimate est;
    est.p_hat.assign(n + 1, 0.0);
    est.se.assign(n + 1, 0.0);
    for (std::uint32_t i = 1; i <= n; ++i)
        est.p_hat[i] = 1.0 / static_cast<double>(1u << i);

    DeltaEstimates d = delta_estimates(est, params);

    long double tilde = 0.0L;
    for (std::uint32_t i = 1; i <= n; ++i)
        tilde += static_cast<long double>(params.lattice.shell_size(i)) *
                 est.p_hat[i] *
                 rho(params.kernel,
                     static_cast<double>(params.lattice.radius(i))) /
                 params.zeta;
    CHECK(d.delta_tilde ==
          doctest::Approx(static_cast<double>(tilde)).epsilon(1e-12));

    // the full sum dominates the single-shell sum and stays finite
    CHECK(d.delta > 0.0);
    CHECK(std::isfinite(d.delta));

    // zero profile gives zero for both
    ShellEstimate zero;
    zero.p_hat.assign(n + 1, 0.0);
    zero.se.assign(n + 1, 0.0);
    DeltaEstimates z = delta_estimates(zero, params);
    CHECK(z.delta == 0.0);
    CHECK(z.delta_tilde == 0.0);
}

TEST_CASE("delta against monte carlo of the defining double sum") {
    ModelParams params = small_model();
    RngPolicy rng(43);
    ShellEstimate est = two_point(params, 2000, rng);
    DeltaEstimates d = delta_estimates(est, params);

    // independent estimate of sum over ordered pairs (x, y), x,y != 0,
    // of p_hat(|x|) p_hat(|y|) rho(|x-y|)/zeta by full enumeration
    long double direct = 0.0L;
    const std::uint64_t V = params.lattice.num_vertices;
    for (std::uint64_t x = 1; x < V; ++x) {
        std::uint32_t ix = hier_level(0, x, params.lattice);
        for (std::uint64_t y = 1; y < V; ++y) {
            if (y == x) continue;
            std::uint32_t iy = hier_level(0, y, params.lattice);
            std::uint32_t k = hier_level(x, y, params.lattice);
            direct += est.p_hat[ix] * est.p_hat[iy] *
                      rho(params.kernel,
                          static_cast<double>(params.lattice.radius(k))) /
                      params.zeta;
        }
    }
    CHECK(d.delta ==
          doctest::Approx(static_cast<double>(direct)).epsilon(1e-9));
}

TEST_CASE("criticality diagnostics are populated and sane") {
    ModelParams params = small_model();
    RngPolicy rng(44);
    DiagnosticsReport rep = criticality_diagnostics(params, 60, rng, 512);
    REQUIRE(rep.replicates == 60);
    REQUIRE(rep.q_minus_inv_sigma2.size() == 60);
    for (double v : rep.sigma_ratio) {
        CHECK(v > 0.0);
        CHECK(std::isfinite(v));
    }
    for (double v : rep.order_param) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
    for (double v : rep.tau_rescaled) CHECK(v >= 0.0);
    CHECK(rep.q_sigma2_quartiles.q1 <= rep.q_sigma2_quartiles.med);
    CHECK(rep.q_sigma2_quartiles.med <= rep.q_sigma2_quartiles.q3);
}

TEST_CASE("phase sweep separates the phases") {
    KernelSpec kernel{0.9, 1.0, 1.1, 0.0};
    RngPolicy rng(45);
    auto rows =
        phase_sweep(2, 1, kernel, {-0.5, 0.5}, {10, 12}, 60, rng);
    REQUIRE(rows.size() == 4);

    auto find = [&](double eps, std::uint32_t n) -> const PhaseRow& {
        for (const auto& r : rows)
            if (r.eps == eps && r.n == n) return r;
        throw std::logic_error("row not found");
    };
    // supercritical giants dwarf subcritical ones at the same n
    CHECK(find(0.5, 12).c1_median > 10.0 * find(-0.5, 12).c1_median);
    // the supercritical giant occupies a positive fraction
    CHECK(find(0.5, 12).sup_frac_p5 > 0.05);
    // the subcritical giant is o(V): the n eps^-2 ratio stays bounded
    CHECK(find(-0.5, 12).sub_ratio_max < 50.0);

    // eps <= -1 is rejected
    CHECK_THROWS(phase_sweep(2, 1, kernel, {-1.0}, {8}, 2, rng));
}

TEST_CASE("subcritical tail is monotone and roughly exponential") {
    LatticeSpec lattice = LatticeSpec::create(2, 1, 10);
    KernelSpec kernel{0.9, 1.0, 1.1, 0.0};
    ModelParams params = ModelParams::create(lattice, kernel);
    std::vector<double> probs =
        phase_probs(lattice, kernel, params.zeta, -0.5);
    RngPolicy rng(46);
    TailProfile tail = cluster_tail_profile(params, probs, 300, rng);
    REQUIRE(tail.sizes.size() >= 3);
    CHECK(tail.fraction.front() <= 1.0);
    for (std::size_t i = 0; i + 1 < tail.fraction.size(); ++i)
        CHECK(tail.fraction[i] >= tail.fraction[i + 1]);
    CHECK(tail.fit_rate > 0.0);
    CHECK(tail.fit_r_squared > 0.8);
}
