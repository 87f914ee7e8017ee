#include "spintraj/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spintraj {

namespace {
constexpr double kPi2 = 3.14159265358979323846;
constexpr double kPiSq = kPi2 * kPi2;
}  // namespace

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  // Marsaglia-Tsang-Wang split: the alternating series converges fast only
  // for large lambda; small lambda uses the complementary theta form.
  if (lambda < 1.18) {
    const double v = kPiSq / (8.0 * lambda * lambda);
    const double p = std::sqrt(2.0 * kPi2) / lambda *
                     (std::exp(-v) + std::exp(-9.0 * v) + std::exp(-25.0 * v));
    return std::clamp(1.0 - p, 0.0, 1.0);
  }
  const double e = std::exp(-2.0 * lambda * lambda);
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 50; ++k) {
    const double term = std::pow(e, static_cast<double>(k) * k);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  const double sqrt_n = std::sqrt(n);
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  return {d, kolmogorov_q(lambda), samples.size()};
}

double rayleigh_cdf(double v, double w) {
  if (v <= 0.0) return 0.0;
  return 1.0 - std::exp(-0.5 * v * v / (w * w));
}

namespace {

// Lower incomplete gamma by series, upper by continued fraction.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_contfrac(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_contfrac(a, x);
}

ChiSquareResult chi_square_test(const std::vector<double>& observed,
                                const std::vector<double>& expected, int dof) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi_square_test: length mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("chi_square_test: expected must be > 0");
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  const int k = dof >= 1 ? dof : static_cast<int>(observed.size()) - 1;
  return {stat, k, gamma_q(0.5 * k, 0.5 * stat)};
}

std::vector<double> histogram_counts(const std::vector<double>& samples,
                                     const std::vector<double>& edges) {
  if (edges.size() < 2) throw std::invalid_argument("histogram_counts: need >= 2 edges");
  std::vector<double> counts(edges.size() - 1, 0.0);
  for (double s : samples) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), s);
    if (it == edges.begin() || it == edges.end()) continue;
    counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
  }
  return counts;
}

}  // namespace spintraj
