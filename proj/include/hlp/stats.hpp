// Shared statistical utilities: chi-square and KS tests, total variation,
// bootstrap intervals, least squares, and order statistics.
#pragma once

#include <cstdint>
#include <vector>

#include "hlp/rng.hpp"

namespace hlp {

// regularized upper incomplete gamma Q(s, x); chi-square tail p-value is
// Q(dof/2, stat/2)
double gamma_q(double s, double x);

double chi_square_pvalue(double stat, std::uint32_t dof);

// Pearson chi-square of observed integer counts vs expected (same length);
// cells with expected < min_expected are pooled into their right neighbor.
struct ChiSquareResult {
    double stat = 0.0;
    std::uint32_t dof = 0;
    double pvalue = 1.0;
};
ChiSquareResult chi_square_test(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& expected,
                                double min_expected = 5.0);

// two-sample Kolmogorov-Smirnov distance (sup norm of empirical CDFs)
double ks_distance(std::vector<double> a, std::vector<double> b);

// asymptotic two-sample KS p-value (Kolmogorov distribution)
double ks_pvalue(double dist, std::size_t na, std::size_t nb);

// total variation distance between empirical laws of small-support integers
double tv_distance(const std::vector<std::int64_t>& a,
                   const std::vector<std::int64_t>& b);

struct DistanceReport {
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;  // 95% bootstrap interval
};
DistanceReport bootstrap_ks(const std::vector<double>& a,
                            const std::vector<double>& b, Rng& rng,
                            std::uint32_t resamples = 200);
DistanceReport bootstrap_tv(const std::vector<std::int64_t>& a,
                            const std::vector<std::int64_t>& b, Rng& rng,
                            std::uint32_t resamples = 200);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y);

double median(std::vector<double> v);

struct Quartiles {
    double q1 = 0.0, med = 0.0, q3 = 0.0;
    double iqr() const { return q3 - q1; }
};
Quartiles quartiles(std::vector<double> v);

double quantile(std::vector<double> v, double p);

}  // namespace hlp
