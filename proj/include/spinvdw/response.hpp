#pragma once

// Electromagnetic response of a single dielectric nanosphere in its rest frame:
// single-oscillator permittivity, dipole polarizability, and the thermal
// Hadamard (symmetrized correlation) spectrum.

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Core>

#include "spinvdw/errors.hpp"
#include "spinvdw/units.hpp"

namespace spinvdw {

using cplx = std::complex<double>;

/// Single Lorentz oscillator: eps/eps0 = 1 + f0 w~0^2 / (w~0^2 - w^2 - i gamma0 w).
/// Both frequencies are angular (rad/s).
struct MaterialModel {
  double f0 = 12.2;
  double omega_tilde0 = 5.7e9;
  double gamma0 = 2.8e8;

  /// Barium strontium titanate, polaritonic band only.
  static MaterialModel bst() { return {}; }

  void validate() const {
    if (!(f0 > 0.0) || !std::isfinite(f0)) throw DomainError("MaterialModel: f0 must be positive");
    if (!(omega_tilde0 > 0.0) || !std::isfinite(omega_tilde0)) {
      throw DomainError("MaterialModel: omega_tilde0 must be positive");
    }
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
      throw DomainError("MaterialModel: gamma0 must be non-negative");
    }
  }

  friend bool operator==(const MaterialModel&, const MaterialModel&) = default;
};

/// Polaritonic (dipole) resonance of a sphere made of `material`.
inline double resonance_frequency(const MaterialModel& material) {
  return material.omega_tilde0 * std::sqrt(1.0 + material.f0 / 3.0);
}

struct SpinningSphere {
  double radius = 60e-9;
  MaterialModel material{};
  double temperature = 300.0;
  double omega = 0.0;  // signed spin rate about `axis` [rad/s]
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();

  void validate() const {
    material.validate();
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("SpinningSphere: radius must be positive");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
      throw DomainError("SpinningSphere: temperature must be non-negative");
    }
    if (!std::isfinite(omega)) throw DomainError("SpinningSphere: omega must be finite");
    if (std::abs(axis.norm() - 1.0) > 1e-12) throw DomainError("SpinningSphere: axis must be a unit vector");
  }

  friend bool operator==(const SpinningSphere&, const SpinningSphere&) = default;
};

namespace detail {

inline constexpr double pole_threshold = 1e-300;

inline cplx checked_inverse(cplx denominator, const char* where) {
  if (std::abs(denominator) < pole_threshold) {
    throw PoleError(std::string(where) + ": evaluated on a pole of the oscillator model");
  }
  return 1.0 / denominator;
}

}  // namespace detail

/// Relative permittivity eps(omega)/eps0 at complex angular frequency.
inline cplx permittivity(const MaterialModel& material, cplx omega) {
  const double wt2 = material.omega_tilde0 * material.omega_tilde0;
  const cplx den = wt2 - omega * omega - cplx(0.0, material.gamma0) * omega;
  return 1.0 + material.f0 * wt2 * detail::checked_inverse(den, "permittivity");
}

/// Permittivity on the imaginary axis, eps(i xi)/eps0, which is real.
inline double permittivity_imaginary_axis(const MaterialModel& material, double xi) {
  const double wt2 = material.omega_tilde0 * material.omega_tilde0;
  return 1.0 + material.f0 * wt2 / (wt2 + xi * xi + material.gamma0 * xi);
}

/// Dipole polarizability [F m^2] of the sphere at real angular frequency.
inline cplx polarizability(const SpinningSphere& sphere, double omega) {
  const auto& m = sphere.material;
  const double w0 = resonance_frequency(m);
  const double numerator = sphere_volume_polarizability(sphere.radius) * m.f0 * m.omega_tilde0 * m.omega_tilde0;
  const cplx den = 3.0 * cplx(w0 * w0 - omega * omega, -m.gamma0 * omega);
  return numerator * detail::checked_inverse(den, "polarizability");
}

/// coth(u / 2 theta) with theta = 0 taken as the exact limit sgn(u), sgn(0) = 0.
inline double thermal_weight(double u, double theta) {
  if (theta == 0.0) return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
  return 1.0 / std::tanh(u / (2.0 * theta));
}

/// Rest-frame Hadamard function eta = 2 coth(hbar w / 2 k_B T) Im alpha(w).
/// The spin of `sphere` is ignored. At omega = 0 and T > 0 the finite limit
/// (4 k_B T / hbar) lim Im alpha(w)/w is returned.
inline double hadamard(const SpinningSphere& sphere, double omega, double temperature) {
  if (!(temperature >= 0.0)) throw DomainError("hadamard: temperature must be non-negative");
  if (omega == 0.0) {
    if (temperature == 0.0) return 0.0;
    const auto& m = sphere.material;
    const double w0 = resonance_frequency(m);
    const double amplitude =
        sphere_volume_polarizability(sphere.radius) * m.f0 * m.omega_tilde0 * m.omega_tilde0 / 3.0;
    return 4.0 * thermal_frequency(temperature) * amplitude * m.gamma0 / (w0 * w0 * w0 * w0);
  }
  const double weight = thermal_weight(omega, thermal_frequency(temperature));
  return 2.0 * weight * polarizability(sphere, omega).imag();
}

/// Rest-frame response in the scaled units of a UnitSystem.
///
/// alpha(x) = strength / (omega0_sq - x^2 - i gamma x),
/// eta(x)   = 2 coth(x / 2 theta) Im alpha(x).
struct ScaledSphere {
  double strength = 0.0;
  double omega0_sq = 1.0;
  double gamma = 0.0;
  double theta = 0.0;

  static ScaledSphere from(const SpinningSphere& sphere, const UnitSystem& units) {
    const auto& m = sphere.material;
    const double volume_ratio = sphere_volume_polarizability(sphere.radius) / units.alpha_scale;
    const double wt = m.omega_tilde0 / units.omega_scale;
    const double w0 = resonance_frequency(m) / units.omega_scale;
    ScaledSphere s;
    s.strength = volume_ratio * m.f0 * wt * wt / 3.0;
    s.omega0_sq = w0 * w0;
    s.gamma = m.gamma0 / units.omega_scale;
    s.theta = units.theta(sphere.temperature);
    return s;
  }

  double omega0() const { return std::sqrt(omega0_sq); }

  /// Static polarizability alpha(0).
  double static_alpha() const { return strength / omega0_sq; }

  cplx alpha(double x) const {
    return strength * detail::checked_inverse(cplx(omega0_sq - x * x, -gamma * x), "polarizability");
  }

  double eta(double x) const {
    if (x == 0.0) {
      return theta == 0.0 ? 0.0 : 4.0 * theta * strength * gamma / (omega0_sq * omega0_sq);
    }
    return 2.0 * thermal_weight(x, theta) * alpha(x).imag();
  }
};

}  // namespace spinvdw
