#ifndef SPINTRAJ_UNITS_HPP
#define SPINTRAJ_UNITS_HPP

#include <stdexcept>

namespace spintraj {

/// Physical scale constants of a model. The engine works in dimensionless
/// internal units (hbar = mass = 1, reference half-width 1); SI magnitudes
/// are converted at the configuration layer, never inside the numerics.
/// c_ratio is the speed of light expressed in internal speed units and is
/// consumed only by the subluminal diagnostic.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;
  double c_ratio = 2.0e5;

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0) || !(c_ratio > 0.0))
      throw std::invalid_argument("PhysicalConstants: all entries must be > 0");
  }

  /// Spreading rate gamma = hbar / (2 m sigma0^2) of a packet of half-width
  /// sigma0.
  double gamma(double sigma0) const { return hbar / (2.0 * mass * sigma0 * sigma0); }

  /// Characteristic trajectory speed w = gamma * sigma0 = hbar / (2 m sigma0).
  double characteristic_speed(double sigma0) const { return hbar / (2.0 * mass * sigma0); }
};

}  // namespace spintraj

#endif
