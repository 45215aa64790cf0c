// Power-law kernel, criticality normalization, and all per-shell edge
// probability tables. Tables are computed once per parameter set in extended
// precision and stored as doubles.
#pragma once

#include <cstdint>
#include <vector>

#include "hlp/geometry.hpp"
#include "hlp/rng.hpp"

namespace hlp {

struct KernelSpec {
    double alpha = 0.5;   // decay exponent, in (0, d)
    double A = 1.0;       // rho(r) = A * r^{-alpha}, rho(0) = 0
    double theta = 0.6;   // subcritical-truncation exponent
    double lambda = 0.0;  // critical-window location
};

double rho(const KernelSpec& k, double r);

// Checks alpha in (0, d) and the theta window used by the critical-window
// analysis: alpha < theta < 4a/3 (a <= d/2), 2a - d/2 (d/2 < a <= 2d/3),
// 5a/2 - d (2d/3 < a < 5d/6). Throws on violation when strict; otherwise
// only alpha in (0, d) and theta > alpha are required.
void validate_kernel(const KernelSpec& k, std::uint32_t d, bool strict_theta);

// Solves (L^d-1) sum_i L^{(i-1)d} exp(-rho(L^i)/zeta) = L^{nd} - 2 by
// bisection. The left side is strictly increasing in zeta. Relative residual
// tolerance 1e-12.
double solve_zeta(const LatticeSpec& lattice, const KernelSpec& kernel);

struct ModelParams {
    LatticeSpec lattice;
    KernelSpec kernel;
    double zeta = 0.0;

    // tables indexed by shell level, entry [0] unused
    std::vector<double> prob_minus;     // 1 - exp(-rho^-(L^i)/zeta)
    std::vector<double> prob_critical;  // 1 - exp(-(rho(L^i)/zeta + lambda L^{-4nd/3}))

    double sprinkle_t = 0.0;   // 1 - exp(-(L^{-n theta}/zeta + lambda L^{-4nd/3}))
    bool two_stage_valid = false;  // sprinkle exponent >= 0
    double q = 0.0;            // lambda + L^{n(4d/3 - theta)}/zeta
    std::uint32_t n0 = 0;      // least n with rho(L^i) > L^{-n theta} for all i <= n

    // Rejects parameter sets where the critical kernel would need the clamp
    // at zero on some shell (keeps direct and two-stage samplers identical).
    static ModelParams create(const LatticeSpec& lattice,
                              const KernelSpec& kernel,
                              bool strict_theta = false);

    // mean offspring count m_j = (L^d - 1) sum_{i<=j} L^{(i-1)d} p^-_i
    double branching_mean(std::uint32_t j) const;

    // same sum recomputed from (kernel, zeta) in long double; 1 - m_n is a
    // near-cancellation, so identity checks need the extra precision
    long double branching_mean_precise(std::uint32_t j) const;

    double prob_at(std::uint32_t shell, Stage stage) const {
        return stage == Stage::Minus ? prob_minus[shell] : prob_critical[shell];
    }
};

// Per-shell table for the plainly off-critical kernel (1+eps) rho(L^i)/zeta.
std::vector<double> phase_probs(const LatticeSpec& lattice,
                                const KernelSpec& kernel, double zeta,
                                double eps);

// ---- torus analogue ----

// sum_{x != 0} exp(-rho(||x||_T)/zeta) = m^d - 2, via distance-class counts
double solve_zeta_torus(const TorusSpec& spec, const KernelSpec& kernel);

enum class TorusStage { Critical, BarelySubcritical };

// Per-distance-class probability table, entry [0] unused, classes 1..m/2.
// Critical: 1 - exp(-max{rho(k)/zeta + lambda m^{-4d/3}, 0}).
// Barely subcritical: 1 - exp(-max{(rho(k) - m^{-theta'})/zeta, 0}).
std::vector<double> torus_probs(const TorusSpec& spec, const KernelSpec& kernel,
                                double lambda, TorusStage stage,
                                double theta_prime = 0.0);

}  // namespace hlp
