#pragma once

// Closed forms for two undamped single-resonance spheres at zero temperature,
// alpha(w) = alpha0 w0^2 / (w0^2 - w^2). Used as analytic references for the
// quadrature engine; nothing here depends on it.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "spinvdw/errors.hpp"
#include "spinvdw/response.hpp"
#include "spinvdw/units.hpp"

namespace spinvdw {

struct LorentzPair {
  double alpha0A = 0.0;  // static polarizabilities [F m^2]
  double alpha0B = 0.0;
  double omega0A = 0.0;  // resonances [rad/s]
  double omega0B = 0.0;
  double R = 0.0;        // separation [m]

  /// Static polarizabilities and resonances of two oscillator-model spheres.
  static LorentzPair from_spheres(const SpinningSphere& a, const SpinningSphere& b, double separation) {
    LorentzPair p;
    p.alpha0A = polarizability(a, 0.0).real();
    p.alpha0B = polarizability(b, 0.0).real();
    p.omega0A = resonance_frequency(a.material);
    p.omega0B = resonance_frequency(b.material);
    p.R = separation;
    p.validate();
    return p;
  }

  LorentzPair swapped() const { return {alpha0B, alpha0A, omega0B, omega0A, R}; }

  void validate() const {
    if (!(alpha0A > 0.0) || !(alpha0B > 0.0) || !(omega0A > 0.0) || !(omega0B > 0.0) || !(R > 0.0)) {
      throw DomainError("LorentzPair: all fields must be positive");
    }
  }
};

namespace oracle_detail {

inline constexpr double exclusion = 1e-6;  // pole exclusion radius in units of the resonance

inline void exclude_pole(double value, double pole, double scale, const char* where) {
  if (std::abs(std::abs(value) - std::abs(pole)) < exclusion * scale) {
    std::ostringstream msg;
    msg << where << ": argument " << value << " within the exclusion radius of the pole at +-" << std::abs(pole);
    throw PoleError(msg.str());
  }
}

inline bool same_resonance(const LorentzPair& p) {
  return std::abs(p.omega0A - p.omega0B) <= 1e-12 * std::max(p.omega0A, p.omega0B);
}

}  // namespace oracle_detail

/// Energy from the dipole induced in A by the fluctuations of B, closed form:
///   -hbar a0A a0B w0A^2 w0B (w0A^2 - w0B^2 - W^2)
///     / (128 pi^2 eps0^2 R^6 [W^2 - (w0A + w0B)^2][W^2 - (w0A - w0B)^2]).
/// Equal resonances use the cancelled form -hbar a0^2 w0^3 / (128 pi^2 eps0^2 R^6 (4 w0^2 - W^2)).
inline double eba_closed(const LorentzPair& p, double spin) {
  p.validate();
  using namespace constants;
  const double scale = p.omega0A;
  const double sum = p.omega0A + p.omega0B;
  const double prefactor = hbar * p.alpha0A * p.alpha0B / (128.0 * pi * pi * epsilon0 * epsilon0 * std::pow(p.R, 6));
  const double s2 = spin * spin;
  oracle_detail::exclude_pole(spin, sum, scale, "eba_closed");
  if (oracle_detail::same_resonance(p)) {
    const double w0 = p.omega0A;
    return -prefactor * w0 * w0 * w0 / (4.0 * w0 * w0 - s2);
  }
  const double diff = p.omega0A - p.omega0B;
  oracle_detail::exclude_pole(spin, diff, scale, "eba_closed");
  const double a2 = p.omega0A * p.omega0A;
  const double b2 = p.omega0B * p.omega0B;
  return -prefactor * a2 * p.omega0B * (a2 - b2 - s2) / ((s2 - sum * sum) * (s2 - diff * diff));
}

/// The A <-> B exchange of eba_closed.
inline double eab_closed(const LorentzPair& p, double spin) { return eba_closed(p.swapped(), spin); }

/// Auxiliary function eab_closed + eba_closed.
inline double aux_closed(const LorentzPair& p, double spin) { return eab_closed(p, spin) + eba_closed(p, spin); }

/// aux(W) / aux(0) = (w0A + w0B)^2 / [(w0A + w0B)^2 - W^2]; independent of R.
inline double ratio_aux(const LorentzPair& p, double spin) {
  p.validate();
  const double sum = p.omega0A + p.omega0B;
  oracle_detail::exclude_pole(spin, sum, p.omega0A, "ratio_aux");
  return sum * sum / (sum * sum - spin * spin);
}

/// aux(W) / aux(0) for identical resonances w0.
inline double ratio_identical(double omega0, double spin) {
  if (!(omega0 > 0.0)) throw DomainError("ratio_identical: omega0 must be positive");
  oracle_detail::exclude_pole(spin, 2.0 * omega0, omega0, "ratio_identical");
  return 4.0 * omega0 * omega0 / (4.0 * omega0 * omega0 - spin * spin);
}

/// E_rr / E0 = (1/3)[4 w0^2 / (4 w0^2 - W_AB^2) + 2].
inline double ratio_rr(double omega0, double relative_spin) {
  return (ratio_identical(omega0, relative_spin) + 2.0) / 3.0;
}

/// E_uu / E0 = (w0^2/3)/(4 w0^2 - W_AB^2) + 3 w0^2/(4 w0^2 - (W_A + W_B)^2) + 1/6.
inline double ratio_uu(double omega0, double spin_a, double spin_b) {
  if (!(omega0 > 0.0)) throw DomainError("ratio_uu: omega0 must be positive");
  const double w2 = omega0 * omega0;
  const double diff = spin_a - spin_b;
  const double sum = spin_a + spin_b;
  oracle_detail::exclude_pole(diff, 2.0 * omega0, omega0, "ratio_uu");
  oracle_detail::exclude_pole(sum, 2.0 * omega0, omega0, "ratio_uu");
  return (w2 / 3.0) / (4.0 * w2 - diff * diff) + 3.0 * w2 / (4.0 * w2 - sum * sum) + 1.0 / 6.0;
}

/// E_ur / E0 for identical undamped spheres.
inline double ratio_ur(double omega0, double spin_a, double spin_b) {
  return (8.0 * ratio_identical(omega0, spin_a) + 2.0 * ratio_identical(omega0, spin_b) +
          ratio_identical(omega0, spin_a - spin_b) + ratio_identical(omega0, spin_a + spin_b)) /
         12.0;
}

/// E_uo / E0 for identical undamped spheres.
inline double ratio_uo(double omega0, double spin_a, double spin_b) {
  return (2.0 * ratio_identical(omega0, spin_a) + 2.0 * ratio_identical(omega0, spin_b) +
          4.0 * ratio_identical(omega0, spin_a - spin_b) + 4.0 * ratio_identical(omega0, spin_a + spin_b)) /
         12.0;
}

}  // namespace spinvdw
