#include "hlp/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hlp {

double rho(const KernelSpec& k, double r) {
    if (r <= 0.0) return 0.0;
    return k.A * std::pow(r, -k.alpha);
}

void validate_kernel(const KernelSpec& k, std::uint32_t d, bool strict_theta) {
    if (!(k.alpha > 0.0) || !(k.alpha < static_cast<double>(d)))
        throw std::invalid_argument("kernel: alpha must lie in (0, d)");
    if (!(k.A > 0.0)) throw std::invalid_argument("kernel: A must be positive");
    if (!(k.theta > k.alpha))
        throw std::invalid_argument("kernel: theta must exceed alpha");
    if (!strict_theta) return;
    const double a = k.alpha, dd = d;
    double upper;
    if (a <= dd / 2.0)
        upper = 4.0 * a / 3.0;
    else if (a <= 2.0 * dd / 3.0)
        upper = 2.0 * a - dd / 2.0;
    else if (a < 5.0 * dd / 6.0)
        upper = 5.0 * a / 2.0 - dd;
    else
        throw std::invalid_argument("kernel: alpha must be below 5d/6");
    if (!(k.theta < upper))
        throw std::invalid_argument("kernel: theta outside the admissible window");
}

namespace {

// left side of the defining equation minus the right side, in long double
long double zeta_residual(const LatticeSpec& lat, const KernelSpec& ker,
                          long double zeta) {
    long double sum = 0.0L;
    long double weight = 1.0L;  // L^{(i-1)d}
    const long double B = static_cast<long double>(lat.digit_base);
    for (std::uint32_t i = 1; i <= lat.n; ++i) {
        long double r = std::pow(static_cast<long double>(lat.L),
                                 static_cast<long double>(i));
        long double rv = static_cast<long double>(ker.A) *
                         std::pow(r, -static_cast<long double>(ker.alpha));
        sum += weight * std::exp(-rv / zeta);
        weight *= B;
    }
    long double lhs = (B - 1.0L) * sum;
    long double rhs = static_cast<long double>(lat.num_vertices) - 2.0L;
    return lhs - rhs;
}

}  // namespace

double solve_zeta(const LatticeSpec& lattice, const KernelSpec& kernel) {
    if (lattice.num_vertices <= 2)
        throw std::invalid_argument(
            "solve_zeta: L^{nd} <= 2 has no positive solution");
    const long double rhs =
        static_cast<long double>(lattice.num_vertices) - 2.0L;
    const long double tol = 1e-12L * rhs;

    // initial bracket around the expected scale L^{n(d-alpha)}
    long double scale = std::pow(static_cast<long double>(lattice.L),
                                 static_cast<long double>(lattice.n) *
                                     (static_cast<long double>(lattice.d) -
                                      static_cast<long double>(kernel.alpha)));
    long double z = 2.0L;
    long double lo = scale / z, hi = scale * z;
    int expand = 0;
    while (zeta_residual(lattice, kernel, lo) > 0.0L) {
        lo /= 2.0L;
        if (++expand > 200)
            throw std::runtime_error("solve_zeta: failed to bracket (low)");
    }
    expand = 0;
    while (zeta_residual(lattice, kernel, hi) < 0.0L) {
        hi *= 2.0L;
        if (++expand > 200)
            throw std::runtime_error("solve_zeta: failed to bracket (high)");
    }
    // bisect to bracket exhaustion: the defining equation is used in exact
    // identities, so the residual has to sit at rounding level, far below
    // the 1e-12 contract
    long double mid = 0.5L * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5L * (lo + hi);
        if (mid == lo || mid == hi) break;
        long double res = zeta_residual(lattice, kernel, mid);
        if (res < 0.0L)
            lo = mid;
        else
            hi = mid;
    }
    if (std::fabs(zeta_residual(lattice, kernel, mid)) > tol)
        throw std::runtime_error("solve_zeta: residual above tolerance");
    return static_cast<double>(mid);
}

ModelParams ModelParams::create(const LatticeSpec& lattice,
                                const KernelSpec& kernel, bool strict_theta) {
    validate_kernel(kernel, lattice.d, strict_theta);
    ModelParams p;
    p.lattice = lattice;
    p.kernel = kernel;
    p.zeta = solve_zeta(lattice, kernel);

    const long double zeta = static_cast<long double>(p.zeta);
    const long double lnL = std::log(static_cast<long double>(lattice.L));
    const long double nth = std::exp(-static_cast<long double>(lattice.n) *
                                     static_cast<long double>(kernel.theta) *
                                     lnL);  // L^{-n theta}
    const long double window =
        static_cast<long double>(kernel.lambda) *
        std::exp(-4.0L * static_cast<long double>(lattice.n) *
                 static_cast<long double>(lattice.d) / 3.0L * lnL);

    p.prob_minus.assign(lattice.n + 1, 0.0);
    p.prob_critical.assign(lattice.n + 1, 0.0);
    for (std::uint32_t i = 1; i <= lattice.n; ++i) {
        long double r = std::pow(static_cast<long double>(lattice.L),
                                 static_cast<long double>(i));
        long double rv = static_cast<long double>(kernel.A) *
                         std::pow(r, -static_cast<long double>(kernel.alpha));
        long double rminus = rv - nth;
        if (rminus < 0.0L) rminus = 0.0L;
        p.prob_minus[i] = static_cast<double>(-std::expm1(-rminus / zeta));

        long double kcrit = rv / zeta + window;
        if (kcrit < 0.0L)
            throw std::invalid_argument(
                "ModelParams: lambda so negative that the critical kernel is "
                "clamped at shell " +
                std::to_string(i) + "; rejecting the whole run");
        p.prob_critical[i] = static_cast<double>(-std::expm1(-kcrit));
    }

    long double sprinkle_exp = nth / zeta + window;
    p.two_stage_valid = sprinkle_exp >= 0.0L;
    p.sprinkle_t =
        p.two_stage_valid ? static_cast<double>(-std::expm1(-sprinkle_exp)) : 0.0;

    p.q = static_cast<double>(
        static_cast<long double>(kernel.lambda) +
        std::exp(static_cast<long double>(lattice.n) *
                 (4.0L * static_cast<long double>(lattice.d) / 3.0L -
                  static_cast<long double>(kernel.theta)) *
                 lnL) /
            zeta);

    // rho(L^i) > L^{-n theta} for all i <= n iff it holds at i = n
    p.n0 = 0;
    for (std::uint32_t nn = 1; nn <= 256; ++nn) {
        long double rn = static_cast<long double>(kernel.A) *
                         std::exp(-static_cast<long double>(nn) *
                                  static_cast<long double>(kernel.alpha) * lnL);
        long double cut = std::exp(-static_cast<long double>(nn) *
                                   static_cast<long double>(kernel.theta) * lnL);
        if (rn > cut) {
            p.n0 = nn;
            break;
        }
    }
    return p;
}

double ModelParams::branching_mean(std::uint32_t j) const {
    if (j < 1 || j > lattice.n)
        throw std::invalid_argument("branching_mean: level out of range");
    long double sum = 0.0L;
    long double weight = 1.0L;
    for (std::uint32_t i = 1; i <= j; ++i) {
        sum += weight * static_cast<long double>(prob_minus[i]);
        weight *= static_cast<long double>(lattice.digit_base);
    }
    return static_cast<double>((static_cast<long double>(lattice.digit_base) -
                                1.0L) *
                               sum);
}

long double ModelParams::branching_mean_precise(std::uint32_t j) const {
    if (j < 1 || j > lattice.n)
        throw std::invalid_argument("branching_mean: level out of range");
    const long double zl = static_cast<long double>(zeta);
    const long double lnL = std::log(static_cast<long double>(lattice.L));
    const long double nth = std::exp(-static_cast<long double>(lattice.n) *
                                     static_cast<long double>(kernel.theta) *
                                     lnL);
    long double sum = 0.0L;
    long double weight = 1.0L;
    for (std::uint32_t i = 1; i <= j; ++i) {
        long double rv = static_cast<long double>(kernel.A) *
                         std::exp(-static_cast<long double>(i) *
                                  static_cast<long double>(kernel.alpha) * lnL);
        long double rminus = rv - nth;
        if (rminus < 0.0L) rminus = 0.0L;
        sum += weight * (-std::expm1(-rminus / zl));
        weight *= static_cast<long double>(lattice.digit_base);
    }
    return (static_cast<long double>(lattice.digit_base) - 1.0L) * sum;
}

std::vector<double> phase_probs(const LatticeSpec& lattice,
                                const KernelSpec& kernel, double zeta,
                                double eps) {
    if (eps <= -1.0)
        throw std::invalid_argument("phase_probs: eps must exceed -1");
    std::vector<double> p(lattice.n + 1, 0.0);
    for (std::uint32_t i = 1; i <= lattice.n; ++i) {
        double r = std::pow(static_cast<double>(lattice.L),
                            static_cast<double>(i));
        p[i] = -std::expm1(-(1.0 + eps) * rho(kernel, r) / zeta);
    }
    return p;
}

double solve_zeta_torus(const TorusSpec& spec, const KernelSpec& kernel) {
    if (spec.m < 3)
        throw std::invalid_argument("solve_zeta_torus: m must be >= 3");
    const long double rhs =
        static_cast<long double>(spec.num_vertices) - 2.0L;
    const long double tol = 1e-12L * rhs;
    auto residual = [&](long double zeta) {
        long double sum = 0.0L;
        for (std::uint32_t k = 1; k <= spec.m / 2; ++k) {
            long double rv =
                static_cast<long double>(kernel.A) *
                std::pow(static_cast<long double>(k),
                         -static_cast<long double>(kernel.alpha));
            sum += static_cast<long double>(torus_class_count(k, spec)) *
                   std::exp(-rv / zeta);
        }
        return sum - rhs;
    };
    long double scale =
        std::pow(static_cast<long double>(spec.m),
                 static_cast<long double>(spec.d) -
                     static_cast<long double>(kernel.alpha));
    long double lo = scale / 2.0L, hi = scale * 2.0L;
    int expand = 0;
    while (residual(lo) > 0.0L) {
        lo /= 2.0L;
        if (++expand > 200)
            throw std::runtime_error("solve_zeta_torus: failed to bracket");
    }
    expand = 0;
    while (residual(hi) < 0.0L) {
        hi *= 2.0L;
        if (++expand > 200)
            throw std::runtime_error("solve_zeta_torus: failed to bracket");
    }
    long double mid = 0.5L * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5L * (lo + hi);
        if (mid == lo || mid == hi) break;
        long double res = residual(mid);
        if (res < 0.0L)
            lo = mid;
        else
            hi = mid;
    }
    if (std::fabs(residual(mid)) > tol)
        throw std::runtime_error("solve_zeta_torus: residual above tolerance");
    return static_cast<double>(mid);
}

std::vector<double> torus_probs(const TorusSpec& spec, const KernelSpec& kernel,
                                double lambda, TorusStage stage,
                                double theta_prime) {
    const double zeta = solve_zeta_torus(spec, kernel);
    std::vector<double> p(spec.m / 2 + 1, 0.0);
    if (stage == TorusStage::BarelySubcritical) {
        if (!(theta_prime > kernel.alpha) ||
            !(theta_prime < static_cast<double>(spec.d)))
            throw std::invalid_argument(
                "torus_probs: theta' must lie in (alpha, d)");
    }
    const double window =
        lambda * std::pow(static_cast<double>(spec.m),
                          -4.0 * static_cast<double>(spec.d) / 3.0);
    const double cut = std::pow(static_cast<double>(spec.m), -theta_prime);
    for (std::uint32_t k = 1; k <= spec.m / 2; ++k) {
        double rv = rho(kernel, static_cast<double>(k));
        double expo = stage == TorusStage::Critical
                          ? rv / zeta + window
                          : (rv - cut) / zeta;
        if (expo < 0.0) expo = 0.0;
        p[k] = -std::expm1(-expo);
    }
    return p;
}

}  // namespace hlp
