#include "hlp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hlp {

ShellEstimate two_point(const ModelParams& params, std::uint64_t replicates,
                        const RngPolicy& rng) {
    const std::uint32_t n = params.lattice.n;
    ShellEstimate est;
    est.replicates = replicates;
    est.p_hat.assign(n + 1, 0.0);
    est.se.assign(n + 1, 0.0);
    std::vector<std::uint64_t> hits(n + 1, 0);

#pragma omp parallel
    {
        std::vector<std::uint64_t> local(n + 1, 0);
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(replicates);
             ++rep) {
            PercolationSample s =
                sample_stratified(params, Stage::Minus, rng, rep);
            std::uint32_t root = s.partition.find(0);
            for (std::uint64_t v = 1; v < params.lattice.num_vertices; ++v)
                if (s.partition.find(static_cast<std::uint32_t>(v)) == root)
                    ++local[hier_level(0, v, params.lattice)];
        }
#pragma omp critical
        for (std::uint32_t i = 1; i <= n; ++i) hits[i] += local[i];
    }

    for (std::uint32_t i = 1; i <= n; ++i) {
        double denom = static_cast<double>(replicates) *
                       static_cast<double>(params.lattice.shell_size(i));
        est.p_hat[i] = static_cast<double>(hits[i]) / denom;
        est.se[i] = std::sqrt(est.p_hat[i] * (1.0 - est.p_hat[i]) /
                              static_cast<double>(replicates));
    }
    return est;
}

DeltaEstimates delta_estimates(const ShellEstimate& est,
                               const ModelParams& params) {
    const std::uint32_t n = params.lattice.n;
    DeltaEstimates out;
    long double tilde = 0.0L, full = 0.0L;
    for (std::uint32_t i = 1; i <= n; ++i) {
        long double Ni = static_cast<long double>(params.lattice.shell_size(i));
        long double ji =
            rho(params.kernel, static_cast<double>(params.lattice.radius(i))) /
            params.zeta;
        tilde += Ni * est.p_hat[i] * ji;
        // cross-shell pairs: ultrametric distance is the larger norm
        for (std::uint32_t j = 1; j <= n; ++j) {
            if (j == i) continue;
            long double Nj =
                static_cast<long double>(params.lattice.shell_size(j));
            std::uint32_t k = std::max(i, j);
            long double jk =
                rho(params.kernel,
                    static_cast<double>(params.lattice.radius(k))) /
                params.zeta;
            full += Ni * Nj * est.p_hat[i] * est.p_hat[j] * jk;
        }
        // same-shell pairs: exact distance census
        for (std::uint32_t k = 1; k <= i; ++k) {
            long double cnt = static_cast<long double>(
                same_shell_distance_count(i, k, params.lattice));
            long double jk =
                rho(params.kernel,
                    static_cast<double>(params.lattice.radius(k))) /
                params.zeta;
            full += Ni * cnt * est.p_hat[i] * est.p_hat[i] * jk;
        }
    }
    out.delta = static_cast<double>(full);
    out.delta_tilde = static_cast<double>(tilde);
    return out;
}

DiagnosticsReport criticality_diagnostics(const ModelParams& params,
                                          std::uint64_t replicates,
                                          const RngPolicy& rng,
                                          std::size_t exact_cap) {
    DiagnosticsReport report;
    report.replicates = replicates;
    report.q_minus_inv_sigma2.resize(replicates);
    report.sigma_ratio.resize(replicates);
    report.tau_rescaled.resize(replicates);
    report.order_param.resize(replicates);

    const double nd = static_cast<double>(params.lattice.n) * params.lattice.d;
    const double tau_scale =
        std::pow(static_cast<double>(params.lattice.L),
                 params.lattice.n *
                     (7.0 * params.lattice.d / 3.0 - 2.0 * params.kernel.theta)) /
        (params.zeta * params.zeta);
    (void)nd;

#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(replicates);
         ++rep) {
        PercolationSample s = sample_stratified(params, Stage::Minus, rng, rep);
        Rng aux = rng.stream(rep, 101u, 0u);
        SampleAggregates agg = aggregates(s, aux, exact_cap);
        report.q_minus_inv_sigma2[rep] = params.q - 1.0 / agg.sigma2;
        report.sigma_ratio[rep] =
            agg.sigma3 / (agg.sigma2 * agg.sigma2 * agg.sigma2);
        report.tau_rescaled[rep] = agg.tau * tau_scale;
        report.order_param[rep] =
            agg.x_max * std::pow(static_cast<double>(params.lattice.num_vertices),
                                 2.0 / 3.0) /
            static_cast<double>(params.lattice.num_vertices);
    }

    report.q_sigma2_quartiles = quartiles(report.q_minus_inv_sigma2);
    report.sigma_ratio_quartiles = quartiles(report.sigma_ratio);
    report.tau_quartiles = quartiles(report.tau_rescaled);
    return report;
}

std::vector<PhaseRow> phase_sweep(std::uint32_t L, std::uint32_t d,
                                  const KernelSpec& kernel,
                                  const std::vector<double>& epsilons,
                                  const std::vector<std::uint32_t>& n_values,
                                  std::uint64_t replicates,
                                  const RngPolicy& rng) {
    std::vector<PhaseRow> rows;
    for (double eps : epsilons) {
        if (eps <= -1.0)
            throw std::invalid_argument("phase_sweep: eps must exceed -1");
        for (std::uint32_t n : n_values) {
            LatticeSpec lattice = LatticeSpec::create(L, d, n);
            ModelParams params = ModelParams::create(lattice, kernel);
            std::vector<double> probs =
                phase_probs(lattice, kernel, params.zeta, eps);

            std::vector<double> c1(replicates);
#pragma omp parallel for schedule(dynamic, 4)
            for (std::int64_t rep = 0;
                 rep < static_cast<std::int64_t>(replicates); ++rep) {
                PercolationSample s = sample_table(
                    params, probs, Stage::Critical, rng, rep);
                c1[rep] = static_cast<double>(components(s).front().size);
            }

            PhaseRow row;
            row.eps = eps;
            row.n = n;
            row.c1_median = median(c1);
            double sub_norm = n / (eps * eps);
            double V = static_cast<double>(lattice.num_vertices);
            std::vector<double> fracs(replicates);
            for (std::uint64_t r = 0; r < replicates; ++r) {
                row.sub_ratio_max =
                    std::max(row.sub_ratio_max, c1[r] / sub_norm);
                fracs[r] = c1[r] / V;
            }
            row.sup_frac_p5 = quantile(fracs, 0.05);
            rows.push_back(row);
        }
    }
    return rows;
}

TailProfile cluster_tail_profile(const ModelParams& params,
                                 const std::vector<double>& shell_probs,
                                 std::uint64_t replicates,
                                 const RngPolicy& rng) {
    std::vector<std::uint64_t> mass_at;  // mass_at[s] = vertices in |C| == s

#pragma omp parallel
    {
        std::vector<std::uint64_t> local;
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(replicates);
             ++rep) {
            PercolationSample s = sample_table(params, shell_probs,
                                               Stage::Critical, rng, rep);
            for (const auto& c : components(s)) {
                if (local.size() <= c.size) local.resize(c.size + 1, 0);
                local[c.size] += c.size;
            }
        }
#pragma omp critical
        {
            if (mass_at.size() < local.size()) mass_at.resize(local.size(), 0);
            for (std::size_t s = 0; s < local.size(); ++s)
                mass_at[s] += local[s];
        }
    }

    TailProfile profile;
    const double denom = static_cast<double>(replicates) *
                         static_cast<double>(params.lattice.num_vertices);
    std::uint64_t cum = 0;
    std::vector<double> tail(mass_at.size(), 0.0);
    for (std::size_t s = mass_at.size(); s-- > 1;) {
        cum += mass_at[s];
        tail[s] = static_cast<double>(cum) / denom;
    }
    std::vector<double> xs, ys;
    for (std::size_t s = 1; s < tail.size(); ++s) {
        profile.sizes.push_back(s);
        profile.fraction.push_back(tail[s]);
        // keep noisy far-tail cells out of the fit
        if (tail[s] * denom >= 10.0) {
            xs.push_back(static_cast<double>(s));
            ys.push_back(std::log(tail[s]));
        }
    }
    if (xs.size() >= 2) {
        LinearFit fit = linear_fit(xs, ys);
        profile.fit_rate = -fit.slope;
        profile.fit_r_squared = fit.r_squared;
    }
    return profile;
}

}  // namespace hlp
