#ifndef MAXDEG_STATS_UTIL_HPP
#define MAXDEG_STATS_UTIL_HPP

#include <cstdint>
#include <vector>

namespace maxdeg {

double sample_mean(const std::vector<double>& x);
double sample_variance(const std::vector<double>& x);  // n-1 denominator

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// Regularized upper incomplete gamma Q(a, x).
double incomplete_gamma_q(double a, double x);

/// Two-sided p-value of Welch's unequal-variance t-test.
double welch_p_two_sided(const std::vector<double>& a, const std::vector<double>& b);

/// Chi-square survival function P(X > stat) with df degrees of freedom.
double chi_square_sf(double stat, int df);

/// Spearman rank correlation (average ranks for ties).
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

/// Fisher-z confidence interval for a correlation at the given level.
struct CorrelationCI {
    double rho;
    double lo;
    double hi;
};
CorrelationCI spearman_ci(const std::vector<double>& x, const std::vector<double>& y,
                          double z = 1.959963984540054);

}  // namespace maxdeg

#endif
