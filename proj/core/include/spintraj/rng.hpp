#ifndef SPINTRAJ_RNG_HPP
#define SPINTRAJ_RNG_HPP

#include <cstdint>
#include <limits>
#include <utility>

namespace spintraj {

/// Deterministic, splittable counter-style generator (splitmix64 core).
/// substream(i) derives an independent stream for sample index i, so
/// per-index generation is order-independent and parallel-safe. All
/// variate transforms are implemented here rather than with <random>
/// distributions, which are not bit-stable across standard libraries.
class SplitRng {
 public:
  using result_type = std::uint64_t;

  explicit SplitRng(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ULL)) {}

  SplitRng substream(std::uint64_t index) const {
    SplitRng r(0);
    r.state_ = mix(state_ ^ mix(index + 0x632be59bd9b4e019ULL));
    return r;
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal pair via Box-Muller (deterministic across platforms).
  std::pair<double, double> normal_pair() {
    double u1 = 0.0;
    do { u1 = uniform01(); } while (u1 <= 0.0);
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * 3.14159265358979323846 * u2),
            r * std::sin(2.0 * 3.14159265358979323846 * u2)};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace spintraj

#endif
