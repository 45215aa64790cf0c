// Monte-Carlo estimation pipelines: two-point function by shell, the
// triangle-type sums, criticality diagnostics, phase-transition order
// parameters, and subcritical cluster tails.
#pragma once

#include <cstdint>
#include <vector>

#include "hlp/graphstats.hpp"
#include "hlp/kernel.hpp"
#include "hlp/rng.hpp"
#include "hlp/stats.hpp"

namespace hlp {

struct ShellEstimate {
    std::vector<double> p_hat;  // index = shell, [0] unused
    std::vector<double> se;
    std::uint64_t replicates = 0;
};

// P(0 <-> x) per shell under the barely subcritical table: one sample per
// replicate, component of vertex 0, per-shell membership counts averaged
// over the shell (valid by homogeneity). Replicate-parallel.
ShellEstimate two_point(const ModelParams& params, std::uint64_t replicates,
                        const RngPolicy& rng);

struct DeltaEstimates {
    double delta = 0.0;        // shell-pair sum with exact same-shell census
    double delta_tilde = 0.0;  // single-shell sum
};
DeltaEstimates delta_estimates(const ShellEstimate& est,
                               const ModelParams& params);

struct DiagnosticsReport {
    std::vector<double> q_minus_inv_sigma2;
    std::vector<double> sigma_ratio;    // sigma3 / sigma2^3
    std::vector<double> tau_rescaled;   // tau * L^{n(7d/3 - 2 theta)} / zeta^2
    std::vector<double> order_param;    // |C_1| / L^{nd}
    Quartiles q_sigma2_quartiles, sigma_ratio_quartiles, tau_quartiles;
    std::uint64_t replicates = 0;
};

// Barely-subcritical (stage one) samples: sigma_k, tau, and q are the
// multiplicative-coalescent inputs, so the statistics live on that graph.
// Medians and interquartile ranges of the three convergence statistics.
// Replicate-parallel.
DiagnosticsReport criticality_diagnostics(const ModelParams& params,
                                          std::uint64_t replicates,
                                          const RngPolicy& rng,
                                          std::size_t exact_cap = 512);

struct PhaseRow {
    double eps = 0.0;
    std::uint32_t n = 0;
    double c1_median = 0.0;
    double sub_ratio_max = 0.0;  // max over replicates of |C_1| / (n eps^-2)
    double sup_frac_p5 = 0.0;    // 5th percentile of |C_1| / L^{nd}
};

// Off-critical kernels (1 + eps) rho / zeta over an n-grid.
std::vector<PhaseRow> phase_sweep(std::uint32_t L, std::uint32_t d,
                                  const KernelSpec& kernel,
                                  const std::vector<double>& epsilons,
                                  const std::vector<std::uint32_t>& n_values,
                                  std::uint64_t replicates,
                                  const RngPolicy& rng);

struct TailProfile {
    std::vector<std::uint64_t> sizes;   // s grid
    std::vector<double> fraction;       // fraction of vertices in |C| >= s
    double fit_rate = 0.0;              // exponential rate from log-linear fit
    double fit_r_squared = 0.0;
};

// Empirical subcritical cluster tail with exponential fit.
TailProfile cluster_tail_profile(const ModelParams& params,
                                 const std::vector<double>& shell_probs,
                                 std::uint64_t replicates,
                                 const RngPolicy& rng);

}  // namespace hlp
