#pragma once

// Lab-frame response tensors of a sphere spinning about the tensor z-axis.
//
// In the lab frame the circular dipole components of a body spinning at Omega
// see Doppler shifted frequencies omega +- Omega. For an isotropic rest-frame
// scalar xi (polarizability or Hadamard function):
//   xx = yy = [xi(w+W) + xi(w-W)] / 2,   xy = -yx = i [xi(w+W) - xi(w-W)] / 2,
//   zz = xi(w), all remaining entries zero.

#include <complex>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "spinvdw/errors.hpp"
#include "spinvdw/response.hpp"

namespace spinvdw {

enum class ResponseKind { Polarizability, Hadamard };

struct ResponseTensor {
  Eigen::Matrix3cd entries = Eigen::Matrix3cd::Zero();
  double omega = 0.0;
  ResponseKind kind = ResponseKind::Polarizability;
};

/// Lab-frame tensor of a sphere spinning at `spin` about z, built from its
/// rest-frame isotropic response `xi` (callable double -> complex or double).
template <class ScalarFn>
ResponseTensor spin_transform(ScalarFn&& xi, double spin, double omega, ResponseKind kind) {
  ResponseTensor t;
  t.omega = omega;
  t.kind = kind;
  const cplx center = cplx(xi(omega));
  cplx plus = center;
  cplx minus = center;
  if (spin != 0.0) {
    plus = cplx(xi(omega + spin));
    minus = cplx(xi(omega - spin));
  }
  const cplx diagonal = 0.5 * (plus + minus);
  const cplx off = cplx(0.0, 0.5) * (plus - minus);
  t.entries(0, 0) = diagonal;
  t.entries(1, 1) = diagonal;
  t.entries(0, 1) = off;
  t.entries(1, 0) = -off;
  t.entries(2, 2) = center;
  return t;
}

/// A proper rotation taking z to `axis`, followed by an extra `twist` about
/// the target axis. Any twist gives the same rotated spin tensor.
inline Eigen::Matrix3d rotation_to_axis(const Eigen::Vector3d& axis, double twist = 0.0) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw DomainError("rotation_to_axis: axis must be a unit vector");
  const Eigen::Quaterniond align = Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), axis);
  return (Eigen::AngleAxisd(twist, axis) * align).toRotationMatrix();
}

inline ResponseTensor axis_rotate(const ResponseTensor& tensor, const Eigen::Matrix3d& rotation) {
  ResponseTensor out = tensor;
  const Eigen::Matrix3cd r = rotation.cast<cplx>();
  out.entries = r * tensor.entries * r.transpose();
  return out;
}

/// Re-expresses a spin-about-z tensor for a sphere spinning about `axis`.
inline ResponseTensor axis_rotate(const ResponseTensor& tensor, const Eigen::Vector3d& axis) {
  return axis_rotate(tensor, rotation_to_axis(axis));
}

namespace detail {

// lim_{u->0} coth(u / 2 theta) S(u) = 2 theta S'(0) for S vanishing at u = 0;
// `sample(h)` returns S(h). Richardson-extrapolated central difference.
template <class Sample>
double coth_weighted_limit(double theta, Sample&& sample, double step) {
  auto slope = [&](double h) { return (sample(h) - sample(-h)) / (2.0 * h); };
  const double extrapolated = (4.0 * slope(0.5 * step) - slope(step)) / 3.0;
  return 2.0 * theta * extrapolated;
}

}  // namespace detail

/// Hadamard tensor obtained from the lab-frame polarizability tensor through
/// the modified (nonequilibrium) fluctuation-dissipation relations
///   eta_xx = 2 f Im a_xx + 2 g Re a_xy,
///   eta_xy = -2i f Re a_xy - 2i g Im a_xx,
/// with f, g the half-sum and half-difference of coth(hbar(w -+ W) / 2 k_B T).
///
/// `thermal` is k_B T / hbar in the frequency units of omega; zero selects the
/// exact sign-function branches. At T > 0 the coth factors diverge where
/// w = +-W (and at w = 0 for zz); those points are evaluated as limits using a
/// finite-difference step `limit_step`, which must then be positive.
template <class AlphaTensorFn>
ResponseTensor noneq_fdt_hadamard(AlphaTensorFn&& alpha_tensor, double spin, double omega, double thermal,
                                  double limit_step = 0.0) {
  const ResponseTensor a = alpha_tensor(omega);
  const double im_xx = a.entries(0, 0).imag();
  const double re_xy = a.entries(0, 1).real();

  const double u_minus = omega - spin;
  const double u_plus = omega + spin;
  const bool singular_minus = thermal > 0.0 && u_minus == 0.0;
  const bool singular_plus = thermal > 0.0 && u_plus == 0.0;
  const bool singular_center = thermal > 0.0 && omega == 0.0;
  if ((singular_minus || singular_plus || singular_center) && !(limit_step > 0.0)) {
    throw DomainError("noneq_fdt_hadamard: branch point at finite temperature needs a positive limit_step");
  }

  ResponseTensor eta;
  eta.omega = omega;
  eta.kind = ResponseKind::Hadamard;

  cplx eta_xx;
  cplx eta_xy;
  if (!singular_minus && !singular_plus) {
    const double c_minus = thermal_weight(u_minus, thermal);
    const double c_plus = thermal_weight(u_plus, thermal);
    const double f = 0.5 * (c_minus + c_plus);
    const double g = 0.5 * (c_minus - c_plus);
    eta_xx = 2.0 * f * im_xx + 2.0 * g * re_xy;
    eta_xy = cplx(0.0, -2.0) * (f * re_xy + g * im_xx);
  } else {
    // Grouped form: each coth multiplies exactly one shifted rest-frame Im alpha.
    auto shifted_im = [&](double h, double sign) {
      const ResponseTensor s = alpha_tensor(omega + h);
      return s.entries(0, 0).imag() + sign * s.entries(0, 1).real();
    };
    const double term_minus =
        singular_minus ? detail::coth_weighted_limit(thermal, [&](double h) { return shifted_im(h, +1.0); }, limit_step)
                       : thermal_weight(u_minus, thermal) * (im_xx + re_xy);
    const double term_plus =
        singular_plus ? detail::coth_weighted_limit(thermal, [&](double h) { return shifted_im(h, -1.0); }, limit_step)
                      : thermal_weight(u_plus, thermal) * (im_xx - re_xy);
    eta_xx = term_minus + term_plus;
    eta_xy = cplx(0.0, term_plus - term_minus);
  }

  double eta_zz;
  if (singular_center) {
    eta_zz = 2.0 * detail::coth_weighted_limit(
                       thermal, [&](double h) { return alpha_tensor(omega + h).entries(2, 2).imag(); }, limit_step);
  } else {
    eta_zz = 2.0 * thermal_weight(omega, thermal) * a.entries(2, 2).imag();
  }

  eta.entries(0, 0) = eta_xx;
  eta.entries(1, 1) = eta_xx;
  eta.entries(0, 1) = eta_xy;
  eta.entries(1, 0) = -eta_xy;
  eta.entries(2, 2) = eta_zz;
  return eta;
}

/// What an equilibrium FDT applied directly in the lab frame would give:
/// eta_jm = coth(hbar w / 2 k_B T) Im[a_jm + a_mj]. The antisymmetric xy part of
/// the polarizability drops out, so the result is always diagonal for a
/// spinning sphere. Not defined at w = 0 for T > 0.
inline ResponseTensor equilibrium_fdt_hadamard(const ResponseTensor& alpha, double thermal) {
  if (thermal > 0.0 && alpha.omega == 0.0) {
    throw DomainError("equilibrium_fdt_hadamard: omega = 0 at finite temperature");
  }
  ResponseTensor eta;
  eta.omega = alpha.omega;
  eta.kind = ResponseKind::Hadamard;
  const double weight = thermal_weight(alpha.omega, thermal);
  const Eigen::Matrix3cd symmetric = alpha.entries + alpha.entries.transpose();
  eta.entries = (weight * symmetric.imag()).cast<cplx>();
  return eta;
}

}  // namespace spinvdw
