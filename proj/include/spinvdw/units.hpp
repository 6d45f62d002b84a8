#pragma once

#include <cmath>
#include <numbers>

#include "spinvdw/errors.hpp"

namespace spinvdw {

namespace constants {

inline constexpr double pi = std::numbers::pi;

/// Reduced Planck constant [J s] (CODATA 2018, exact).
inline constexpr double hbar = 1.054571817e-34;

/// Vacuum permittivity [F/m] (CODATA 2018).
inline constexpr double epsilon0 = 8.8541878128e-12;

/// Boltzmann constant [J/K] (exact).
inline constexpr double k_B = 1.380649e-23;

inline constexpr double femto = 1e-15;

/// Prefactor of the auxiliary spectral integrals, hbar / (512 pi^3 eps0^2).
inline constexpr double aux_prefactor = hbar / (512.0 * pi * pi * pi * epsilon0 * epsilon0);

}  // namespace constants

/// Thermal angular frequency k_B T / hbar [rad/s].
inline double thermal_frequency(double kelvin) { return constants::k_B * kelvin / constants::hbar; }

/// 4 pi eps0 a^3, the natural polarizability scale of a sphere of radius a.
inline double sphere_volume_polarizability(double radius) {
  return 4.0 * constants::pi * constants::epsilon0 * radius * radius * radius;
}

/// Scales used by the spectral engine.
///
/// Frequencies are measured in units of `omega_scale` (the resonance of
/// sphere A), polarizabilities in units of `alpha_scale` (4 pi eps0 a_A^3),
/// and the auxiliary integral
///   -(A / R^6) * Integral[alpha * eta] d(omega)
/// evaluates to `-energy_scale` times the same integral in scaled units.
struct UnitSystem {
  double omega_scale = 1.0;
  double alpha_scale = 1.0;
  double energy_scale = 1.0;
  double length_scale = 1.0;  // separation R, converts energies to forces

  static UnitSystem for_pair(double omega_ref, double radius_ref, double separation) {
    if (!(omega_ref > 0.0) || !(radius_ref > 0.0) || !(separation > 0.0)) {
      throw DomainError("UnitSystem: scales must be positive");
    }
    UnitSystem u;
    u.omega_scale = omega_ref;
    u.alpha_scale = sphere_volume_polarizability(radius_ref);
    const double r6 = std::pow(separation, 6);
    u.energy_scale = constants::aux_prefactor * u.alpha_scale * u.alpha_scale * omega_ref / r6;
    u.length_scale = separation;
    return u;
  }

  double frequency_to_si(double x) const { return x * omega_scale; }
  double frequency_from_si(double omega) const { return omega / omega_scale; }
  double alpha_to_si(double a) const { return a * alpha_scale; }
  double alpha_from_si(double alpha) const { return alpha / alpha_scale; }
  double energy_to_si(double e) const { return e * energy_scale; }
  double energy_from_si(double e) const { return e / energy_scale; }

  /// k_B T / (hbar omega_scale); zero means the exact zero-temperature branch.
  double theta(double kelvin) const { return thermal_frequency(kelvin) / omega_scale; }
};

}  // namespace spinvdw
