#pragma once

// Non-retarded dipole-dipole interaction energies between two spinning
// nanospheres, evaluated as real-frequency spectral integrals.
//
// All integrals run in the scaled units of UnitSystem::for_pair (frequencies
// in units of the resonance of sphere A, polarizabilities in units of
// 4 pi eps0 a_A^3) and are converted to joules on return.

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "spinvdw/errors.hpp"
#include "spinvdw/quadrature.hpp"
#include "spinvdw/response.hpp"
#include "spinvdw/rotation.hpp"
#include "spinvdw/units.hpp"

namespace spinvdw {

struct PairContext {
  SpinningSphere a{};
  SpinningSphere b{};
  double separation = 180e-9;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();  // unit vector from A to B

  /// Two spheres of the same radius, material and temperature, at rest.
  static PairContext identical(double radius, const MaterialModel& material, double temperature,
                               double separation, const Eigen::Vector3d& direction = Eigen::Vector3d::UnitZ()) {
    PairContext ctx;
    ctx.a.radius = ctx.b.radius = radius;
    ctx.a.material = ctx.b.material = material;
    ctx.a.temperature = ctx.b.temperature = temperature;
    ctx.separation = separation;
    ctx.direction = direction;
    return ctx;
  }

  void validate() const {
    a.validate();
    b.validate();
    if (!(separation > a.radius + b.radius)) {
      throw DomainError("PairContext: separation must exceed the sum of the radii");
    }
    if (!(separation < 1e-2)) throw DomainError("PairContext: separation outside the non-retarded regime");
    if (std::abs(direction.norm() - 1.0) > 1e-12) throw DomainError("PairContext: direction must be a unit vector");
  }

  UnitSystem units() const { return UnitSystem::for_pair(resonance_frequency(a.material), a.radius, separation); }

  friend bool operator==(const PairContext&, const PairContext&) = default;
};

struct SpectralOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;      // scaled energy units
  double window_factor = 50.0;
  int max_depth = 30;

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("SpectralOptions: rel_tol must be positive");
    if (!(abs_tol >= 0.0)) throw DomainError("SpectralOptions: abs_tol must be non-negative");
    if (!(window_factor >= 1.0)) throw DomainError("SpectralOptions: window_factor must be at least 1");
    if (max_depth < 1) throw DomainError("SpectralOptions: max_depth must be at least 1");
  }

  friend bool operator==(const SpectralOptions&, const SpectralOptions&) = default;
};

namespace detail {

struct ScaledPair {
  UnitSystem units;
  ScaledSphere a;
  ScaledSphere b;

  static ScaledPair from(const PairContext& ctx) {
    ctx.validate();
    ScaledPair p;
    p.units = ctx.units();
    p.a = ScaledSphere::from(ctx.a, p.units);
    p.b = ScaledSphere::from(ctx.b, p.units);
    if (!(p.a.gamma > 0.0) || !(p.b.gamma > 0.0)) {
      throw DomainError("spectral integrals need gamma0 > 0 for both spheres (undamped spectra are delta functions)");
    }
    return p;
  }

  double max_resonance() const { return std::max(a.omega0(), b.omega0()); }
};

// {0, +-s, +-w0A, +-w0B, +-w0A +- s, +-w0B +- s} for every shift s.
inline std::vector<double> doppler_breakpoints(const ScaledPair& pair, std::initializer_list<double> shifts) {
  std::vector<double> points{0.0};
  for (double s : shifts) {
    for (double sign : {-1.0, 1.0}) {
      points.push_back(sign * s);
      for (double w0 : {pair.a.omega0(), pair.b.omega0()}) {
        points.push_back(sign * w0);
        points.push_back(sign * w0 + s);
        points.push_back(sign * w0 - s);
      }
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

inline QuadratureSpec spectral_quadrature(const ScaledPair& pair, std::initializer_list<double> shifts,
                                          const SpectralOptions& options) {
  double reach = pair.max_resonance();
  for (double s : shifts) reach = std::max(reach, std::abs(s) + pair.max_resonance());
  QuadratureSpec spec;
  spec.rel_tol = options.rel_tol;
  spec.abs_tol = options.abs_tol;
  spec.max_depth = options.max_depth;
  spec.breakpoints = doppler_breakpoints(pair, shifts);
  double largest = 0.0;
  for (double bp : spec.breakpoints) largest = std::max(largest, std::abs(bp));
  spec.window = std::max(options.window_factor * reach, largest + 10.0 * pair.max_resonance());
  spec.grading_width = std::min(pair.a.gamma, pair.b.gamma) / 8.0;
  // Every integrand here satisfies f(-x) = conj(f(x)); folding cancels the odd
  // imaginary part, which near coincident resonances is ~1/gamma larger than
  // the result.
  spec.fold = true;
  return spec;
}

// Real part of an energy integral whose imaginary part vanishes analytically.
inline double real_part_checked(const QuadratureResult& r, const SpectralOptions& options, const char* what) {
  const double re = r.value.real();
  const double im = r.value.imag();
  const double allowed = std::max({options.abs_tol, options.rel_tol * std::abs(re), r.error});
  if (std::abs(im) > allowed) {
    std::ostringstream msg;
    msg << what << ": imaginary residue " << im << " exceeds " << allowed << " (real part " << re << ")";
    throw ConsistencyError(msg.str());
  }
  return re;
}

// Integral of [alpha_A(x+s) + alpha_A(x-s)] eta_B(x), scaled units.
inline QuadratureResult induced_in_a_integral(const ScaledPair& pair, double shift, const SpectralOptions& options) {
  auto integrand = [&](double x) { return (pair.a.alpha(x + shift) + pair.a.alpha(x - shift)) * pair.b.eta(x); };
  return integrate_spectrum(integrand, spectral_quadrature(pair, {shift}, options));
}

// Integral of [eta_A(x+s) + eta_A(x-s)] alpha_B(x), scaled units.
inline QuadratureResult fluctuating_in_a_integral(const ScaledPair& pair, double shift,
                                                  const SpectralOptions& options) {
  auto integrand = [&](double x) { return (pair.a.eta(x + shift) + pair.a.eta(x - shift)) * pair.b.alpha(x); };
  return integrate_spectrum(integrand, spectral_quadrature(pair, {shift}, options));
}

}  // namespace detail

/// Energy from the Doppler-shifted dipole induced in A by the fluctuations of B:
/// -(A/R^6) Integral [alpha_A(w+W) + alpha_A(w-W)] eta_B(w) dw, in joules.
inline double energy_BA(const PairContext& ctx, double spin, const SpectralOptions& options = {}) {
  options.validate();
  const auto pair = detail::ScaledPair::from(ctx);
  const auto r = detail::induced_in_a_integral(pair, pair.units.frequency_from_si(spin), options);
  return -pair.units.energy_to_si(detail::real_part_checked(r, options, "energy_BA"));
}

/// Energy from the Doppler-shifted fluctuations of A and the response of B:
/// -(A/R^6) Integral [eta_A(w+W) + eta_A(w-W)] alpha_B(w) dw, in joules.
inline double energy_AB(const PairContext& ctx, double spin, const SpectralOptions& options = {}) {
  options.validate();
  const auto pair = detail::ScaledPair::from(ctx);
  const auto r = detail::fluctuating_in_a_integral(pair, pair.units.frequency_from_si(spin), options);
  return -pair.units.energy_to_si(detail::real_part_checked(r, options, "energy_AB"));
}

/// The auxiliary function, energy_AB + energy_BA. Even in `spin`.
inline double aux_energy(const PairContext& ctx, double spin, const SpectralOptions& options = {}) {
  return energy_AB(ctx, spin, options) + energy_BA(ctx, spin, options);
}

namespace detail {

// Contraction (delta_jk - 3 R_j R_k)(delta_mn - 3 R_m R_n) X_jm Y_kn.
inline cplx dipole_contraction(const Eigen::Matrix3d& coupling, const Eigen::Matrix3cd& x,
                               const Eigen::Matrix3cd& y) {
  const Eigen::Matrix3cd g = coupling.cast<cplx>();
  return (g * x * g).cwiseProduct(y).sum();
}

inline Eigen::Matrix3d dipole_coupling(const Eigen::Vector3d& rhat) {
  return Eigen::Matrix3d::Identity() - 3.0 * rhat * rhat.transpose();
}

}  // namespace detail

/// Interaction energy for arbitrary spin axes and separation direction:
///   E = -hbar G_jk G_mn / (128 pi^3 eps0^2 R^6)
///       * Integral [alpha^A_jm eta^B*_kn + eta^A*_jm alpha^B_kn] dw,
/// with G = 1 - 3 R R and the lab-frame tensors of each spinning sphere.
/// Spin rates and axes are taken from ctx.a and ctx.b.
inline double general_energy(const PairContext& ctx, const SpectralOptions& options = {}) {
  options.validate();
  const auto pair = detail::ScaledPair::from(ctx);
  const double spin_a = pair.units.frequency_from_si(ctx.a.omega);
  const double spin_b = pair.units.frequency_from_si(ctx.b.omega);
  const Eigen::Matrix3d rot_a = rotation_to_axis(ctx.a.axis);
  const Eigen::Matrix3d rot_b = rotation_to_axis(ctx.b.axis);
  const Eigen::Matrix3d coupling = detail::dipole_coupling(ctx.direction);

  auto alpha_a = [&](double x) { return pair.a.alpha(x); };
  auto eta_a = [&](double x) { return pair.a.eta(x); };
  auto alpha_b = [&](double x) { return pair.b.alpha(x); };
  auto eta_b = [&](double x) { return pair.b.eta(x); };

  auto integrand = [&](double x) {
    using K = ResponseKind;
    const auto aa = axis_rotate(spin_transform(alpha_a, spin_a, x, K::Polarizability), rot_a).entries;
    const auto ea = axis_rotate(spin_transform(eta_a, spin_a, x, K::Hadamard), rot_a).entries;
    const auto ab = axis_rotate(spin_transform(alpha_b, spin_b, x, K::Polarizability), rot_b).entries;
    const auto eb = axis_rotate(spin_transform(eta_b, spin_b, x, K::Hadamard), rot_b).entries;
    return detail::dipole_contraction(coupling, aa, eb.conjugate()) +
           detail::dipole_contraction(coupling, ea.conjugate(), ab);
  };
  const auto r = integrate_spectrum(integrand, detail::spectral_quadrature(pair, {spin_a, spin_b}, options));
  return -4.0 * pair.units.energy_to_si(detail::real_part_checked(r, options, "general_energy"));
}

}  // namespace spinvdw
