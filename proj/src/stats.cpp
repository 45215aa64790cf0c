#include "hlp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hlp {

namespace {

// series expansion of the regularized lower incomplete gamma P(s, x)
double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
        term *= x / (s + k);
        sum += term;
        if (term < sum * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// continued fraction for Q(s, x), Lentz's method
double gamma_q_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

}  // namespace

double gamma_q(double s, double x) {
    if (x < 0.0 || s <= 0.0) throw std::invalid_argument("gamma_q: domain");
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
    return gamma_q_cf(s, x);
}

double chi_square_pvalue(double stat, std::uint32_t dof) {
    if (dof == 0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * stat);
}

ChiSquareResult chi_square_test(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& expected,
                                double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square_test: size mismatch");
    std::vector<double> obs_p, exp_p;
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += static_cast<double>(observed[i]);
        e_acc += expected[i];
        if (e_acc >= min_expected) {
            obs_p.push_back(o_acc);
            exp_p.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (exp_p.empty()) {
            obs_p.push_back(o_acc);
            exp_p.push_back(e_acc);
        } else {
            obs_p.back() += o_acc;
            exp_p.back() += e_acc;
        }
    }
    ChiSquareResult r;
    if (exp_p.size() < 2) return r;  // nothing to test after pooling
    for (std::size_t i = 0; i < exp_p.size(); ++i) {
        double diff = obs_p[i] - exp_p[i];
        r.stat += diff * diff / exp_p[i];
    }
    r.dof = static_cast<std::uint32_t>(exp_p.size() - 1);
    r.pvalue = chi_square_pvalue(r.stat, r.dof);
    return r;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

double ks_pvalue(double dist, std::size_t na, std::size_t nb) {
    double ne = static_cast<double>(na) * nb / (na + nb);
    double t = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * dist;
    // the alternating series does not converge for tiny arguments; the tail
    // probability there is 1 to double precision
    if (t < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * t * t);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double tv_distance(const std::vector<std::int64_t>& a,
                   const std::vector<std::int64_t>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("tv_distance: empty sample");
    std::map<std::int64_t, double> pa, pb;
    for (std::int64_t v : a) pa[v] += 1.0 / a.size();
    for (std::int64_t v : b) pb[v] += 1.0 / b.size();
    double tv = 0.0;
    for (const auto& [v, p] : pa) {
        auto it = pb.find(v);
        tv += std::abs(p - (it == pb.end() ? 0.0 : it->second));
    }
    for (const auto& [v, p] : pb)
        if (pa.find(v) == pa.end()) tv += p;
    return 0.5 * tv;
}

namespace {

template <typename T, typename Dist>
DistanceReport bootstrap_generic(const std::vector<T>& a,
                                 const std::vector<T>& b, Rng& rng,
                                 std::uint32_t resamples, Dist dist) {
    DistanceReport r;
    r.value = dist(a, b);
    std::vector<double> vals(resamples);
    std::vector<T> ra(a.size()), rb(b.size());
    for (std::uint32_t s = 0; s < resamples; ++s) {
        for (std::size_t i = 0; i < a.size(); ++i) ra[i] = a[rng.below(a.size())];
        for (std::size_t i = 0; i < b.size(); ++i) rb[i] = b[rng.below(b.size())];
        vals[s] = dist(ra, rb);
    }
    std::sort(vals.begin(), vals.end());
    r.ci_low = vals[static_cast<std::size_t>(0.025 * (resamples - 1))];
    r.ci_high = vals[static_cast<std::size_t>(0.975 * (resamples - 1))];
    return r;
}

}  // namespace

DistanceReport bootstrap_ks(const std::vector<double>& a,
                            const std::vector<double>& b, Rng& rng,
                            std::uint32_t resamples) {
    return bootstrap_generic(a, b, rng, resamples,
                             [](const auto& x, const auto& y) {
                                 return ks_distance(x, y);
                             });
}

DistanceReport bootstrap_tv(const std::vector<std::int64_t>& a,
                            const std::vector<std::int64_t>& b, Rng& rng,
                            std::uint32_t resamples) {
    return bootstrap_generic(a, b, rng, resamples,
                             [](const auto& x, const auto& y) {
                                 return tv_distance(x, y);
                             });
}

LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 points");
    double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    double vx = sxx - sx * sx / n;
    double vy = syy - sy * sy / n;
    double cov = sxy - sx * sy / n;
    if (vx == 0.0) throw std::invalid_argument("linear_fit: degenerate x");
    LinearFit f;
    f.slope = cov / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r_squared = vy == 0.0 ? 1.0 : cov * cov / (vx * vy);
    return f;
}

double quantile(std::vector<double> v, double p) {
    if (v.empty()) throw std::invalid_argument("quantile: empty");
    std::sort(v.begin(), v.end());
    double idx = p * (v.size() - 1);
    std::size_t lo = static_cast<std::size_t>(idx);
    if (lo + 1 >= v.size()) return v.back();
    double frac = idx - lo;
    return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

Quartiles quartiles(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    Quartiles q;
    q.q1 = quantile(v, 0.25);
    q.med = quantile(v, 0.5);
    q.q3 = quantile(v, 0.75);
    return q;
}

}  // namespace hlp
