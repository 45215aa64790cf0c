// Timing comparison: stratified skip sampler vs the naive all-pairs
// reference, and parallel vs serial replicate loops.
#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hlp/kernel.hpp"
#include "hlp/sampler.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main() {
    using namespace hlp;
    RngPolicy policy{42};

    std::cout << "-- stratified vs naive, single replicate --\n";
    for (std::uint32_t n : {8u, 10u, 12u, 14u}) {
        LatticeSpec lattice = LatticeSpec::create(2, 1, n);
        ModelParams params = ModelParams::create(lattice, KernelSpec{});
        const std::uint64_t reps = n <= 10 ? 200 : 50;

        auto t0 = Clock::now();
        std::uint64_t edges = 0;
        for (std::uint64_t r = 0; r < reps; ++r)
            edges += sample_stratified(params, Stage::Critical, policy, r)
                         .edge_count();
        double strat = seconds_since(t0) / reps;

        double naive = -1.0;
        if (lattice.num_vertices <= (1ULL << 12)) {
            const std::uint64_t nreps = 20;
            t0 = Clock::now();
            for (std::uint64_t r = 0; r < nreps; ++r)
                (void)sample_naive(params, Stage::Critical, policy, r);
            naive = seconds_since(t0) / nreps;
        }
        std::cout << "n=" << n << "  vertices=" << lattice.num_vertices
                  << "  mean_edges=" << edges / reps
                  << "  stratified=" << strat * 1e3 << " ms";
        if (naive >= 0.0)
            std::cout << "  naive=" << naive * 1e3
                      << " ms  speedup=" << naive / strat;
        std::cout << "\n";
    }

    std::cout << "-- replicate loop: parallel vs serial --\n";
    {
        LatticeSpec lattice = LatticeSpec::create(2, 1, 13);
        ModelParams params = ModelParams::create(lattice, KernelSpec{});
        const std::int64_t reps = 400;

        auto t0 = Clock::now();
        std::uint64_t total = 0;
        for (std::int64_t r = 0; r < reps; ++r)
            total += sample_stratified(params, Stage::Critical, policy, r)
                         .edge_count();
        double serial = seconds_since(t0);

        t0 = Clock::now();
        std::uint64_t ptotal = 0;
#pragma omp parallel for reduction(+ : ptotal) schedule(dynamic, 8)
        for (std::int64_t r = 0; r < reps; ++r)
            ptotal += sample_stratified(params, Stage::Critical, policy, r)
                          .edge_count();
        double parallel = seconds_since(t0);

        int threads = 1;
#ifdef _OPENMP
        threads = omp_get_max_threads();
#endif
        std::cout << "threads=" << threads << "  serial=" << serial
                  << " s  parallel=" << parallel
                  << " s  speedup=" << serial / parallel
                  << "  (edge totals " << (total == ptotal ? "match" : "DIFFER")
                  << ")\n";
    }
    return 0;
}
