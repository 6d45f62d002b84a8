#pragma once

// Static reference quantities: the equilibrium Matsubara-sum energy of two
// spheres at rest, the Hamaker constant, the Hamaker-based force estimate,
// and the energy a naive lab-frame equilibrium FDT would predict for the
// rr arrangement.

#include <cmath>
#include <cstddef>
#include <sstream>

#include "spinvdw/errors.hpp"
#include "spinvdw/quadrature.hpp"
#include "spinvdw/response.hpp"
#include "spinvdw/spectral.hpp"
#include "spinvdw/units.hpp"

namespace spinvdw {

struct MatsubaraSpec {
  double temperature = 300.0;
  std::size_t max_terms = 10'000'000;
  double term_tol = 1e-10;  // stop once a term is below term_tol * partial sum

  void validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
      throw DomainError("MatsubaraSpec: the Matsubara sum needs temperature > 0");
    }
    if (max_terms < 1) throw DomainError("MatsubaraSpec: max_terms must be at least 1");
    if (!(term_tol > 0.0)) throw DomainError("MatsubaraSpec: term_tol must be positive");
  }
};

struct MatsubaraSum {
  double value = 0.0;  // primed sum, n = 0 halved
  std::size_t terms = 0;
  double last_term = 0.0;
};

/// xi_n = 2 pi n k_B T / hbar [rad/s].
inline double matsubara_frequency(std::size_t n, double temperature) {
  return 2.0 * constants::pi * static_cast<double>(n) * thermal_frequency(temperature);
}

/// Sum' over n of summand(xi_n), accumulated in order of n.
template <class Summand>
MatsubaraSum matsubara_sum(Summand&& summand, const MatsubaraSpec& spec) {
  spec.validate();
  MatsubaraSum s;
  for (std::size_t n = 0; n < spec.max_terms; ++n) {
    const double term = (n == 0 ? 0.5 : 1.0) * summand(matsubara_frequency(n, spec.temperature));
    s.value += term;
    s.terms = n + 1;
    s.last_term = term;
    if (n > 0 && std::abs(term) < spec.term_tol * std::abs(s.value)) return s;
  }
  std::ostringstream msg;
  msg << "matsubara_sum: not converged after " << spec.max_terms << " terms (last term " << s.last_term << ")";
  throw ConvergenceError(msg.str(), s.value, std::abs(s.last_term));
}

/// Clausius-Mossotti factor (eps - 1)/(eps + 2) at imaginary frequency i xi.
inline double clausius_mossotti(const MaterialModel& material, double xi) {
  const double eps = permittivity_imaginary_axis(material, xi);
  return (eps - 1.0) / (eps + 2.0);
}

/// -(6 k_B T a_A^3 a_B^3 / R^6) Sum'_n Delta_A(i xi_n) Delta_B(i xi_n) [J],
/// at spec.temperature (sphere temperatures and spins are not used).
inline double matsubara_static_energy(const PairContext& ctx, const MatsubaraSpec& spec = {}) {
  ctx.validate();
  const auto sum = matsubara_sum(
      [&](double xi) { return clausius_mossotti(ctx.a.material, xi) * clausius_mossotti(ctx.b.material, xi); },
      spec);
  const double geometry = std::pow(ctx.a.radius * ctx.b.radius / (ctx.separation * ctx.separation), 3);
  return -6.0 * constants::k_B * spec.temperature * geometry * sum.value;
}

/// H = (3/2) k_B T Sum'_n [(eps(i xi_n) - 1)/(eps(i xi_n) + 1)]^2 [J].
inline double hamaker_constant(const MaterialModel& material, const MatsubaraSpec& spec = {}) {
  material.validate();
  const auto sum = matsubara_sum(
      [&](double xi) {
        const double eps = permittivity_imaginary_axis(material, xi);
        const double r = (eps - 1.0) / (eps + 1.0);
        return r * r;
      },
      spec);
  return 1.5 * constants::k_B * spec.temperature * sum.value;
}

/// E = -(16/9) H (a/R)^6 [J].
inline double static_energy_estimate(double hamaker, double radius, double separation) {
  if (!(hamaker > 0.0) || !(radius > 0.0) || !(separation > 0.0)) {
    throw DomainError("static_energy_estimate: arguments must be positive");
  }
  return -(16.0 / 9.0) * hamaker * std::pow(radius / separation, 6);
}

/// F = 6E/R with E from static_energy_estimate [N]; negative is attractive.
inline double static_force_estimate(double hamaker, double radius, double separation) {
  return 6.0 * static_energy_estimate(hamaker, radius, separation) / separation;
}

/// rr energy at zero temperature if the equilibrium FDT were (wrongly) applied
/// to the lab-frame tensors of the spinning spheres:
///   E = -hbar / (16 pi^3 eps0^2 R^6)
///       * Im Integral_0^inf {[aA(w+WA) + aA(w-WA)][aB(w+WB) + aB(w-WB)] + 8 aA(w) aB(w)} / 4 dw.
/// Both sphere temperatures must be zero.
inline double naive_fdt_energy_rr(const PairContext& ctx, double spin_a, double spin_b,
                                  const SpectralOptions& options = {}) {
  options.validate();
  if (ctx.a.temperature != 0.0 || ctx.b.temperature != 0.0) {
    throw DomainError("naive_fdt_energy_rr: defined at zero temperature only");
  }
  const auto pair = detail::ScaledPair::from(ctx);
  const double sa = pair.units.frequency_from_si(spin_a);
  const double sb = pair.units.frequency_from_si(spin_b);
  // The bracket at -w is the conjugate of the bracket at w, so
  // Im Integral_0^inf = (1/2) Integral sgn(w) Im[...] over the whole line.
  auto integrand = [&](double x) {
    if (x == 0.0) return 0.0;
    const cplx a_sum = pair.a.alpha(x + sa) + pair.a.alpha(x - sa);
    const cplx b_sum = pair.b.alpha(x + sb) + pair.b.alpha(x - sb);
    const cplx bracket = (a_sum * b_sum + 8.0 * pair.a.alpha(x) * pair.b.alpha(x)) / 4.0;
    return (x > 0.0 ? 0.5 : -0.5) * bracket.imag();
  };
  const auto r = integrate_spectrum(integrand, detail::spectral_quadrature(pair, {sa, sb}, options));
  return -32.0 * pair.units.energy_to_si(r.value.real());
}

}  // namespace spinvdw
