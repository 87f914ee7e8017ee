#ifndef SPINTRAJ_STATS_HPP
#define SPINTRAJ_STATS_HPP

#include <functional>
#include <vector>

namespace spintraj {

/// Kolmogorov distribution tail Q(lambda) = 2 sum_k (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 1.0;
  std::size_t n = 0;
};

/// One-sample Kolmogorov-Smirnov test against a continuous CDF. The p-value
/// uses the Stephens small-sample correction of the asymptotic law.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Rayleigh CDF with scale w.
double rayleigh_cdf(double v, double w);

/// Regularized lower incomplete gamma P(a, x); Q = 1 - P.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson chi-square of observed counts against expected counts (same
/// length); dof defaults to bins - 1.
ChiSquareResult chi_square_test(const std::vector<double>& observed,
                                const std::vector<double>& expected, int dof = -1);

/// Bin counts of samples into [edges[i], edges[i+1]); values outside the
/// edge range are dropped.
std::vector<double> histogram_counts(const std::vector<double>& samples,
                                     const std::vector<double>& edges);

}  // namespace spintraj

#endif
