#include <gtest/gtest.h>

#include <cmath>

#include "spinvdw/response.hpp"

using namespace spinvdw;

namespace {

SpinningSphere bst_sphere() { return SpinningSphere{}; }

double omega0() { return resonance_frequency(MaterialModel::bst()); }

}  // namespace

TEST(Permittivity, StaticValue) {
  EXPECT_NEAR(permittivity(MaterialModel::bst(), 0.0).real(), 13.2, 1e-12);
  EXPECT_EQ(permittivity(MaterialModel::bst(), 0.0).imag(), 0.0);
}

TEST(Permittivity, TransparentAtHighFrequency) {
  EXPECT_NEAR(std::abs(permittivity(MaterialModel::bst(), 1e16) - 1.0), 0.0, 1e-9);
}

TEST(Permittivity, ImaginaryAxisAtOmegaTilde) {
  const auto m = MaterialModel::bst();
  const cplx eps = permittivity(m, cplx(0.0, m.omega_tilde0));
  EXPECT_NEAR(eps.real(), 6.954, 1e-3);
  EXPECT_NEAR(eps.imag(), 0.0, 1e-12);
  EXPECT_NEAR(permittivity_imaginary_axis(m, m.omega_tilde0), eps.real(), 1e-12);
}

TEST(Permittivity, ImaginaryAxisRealPositiveDecreasing) {
  const auto m = MaterialModel::bst();
  double previous = permittivity_imaginary_axis(m, 0.0);
  for (double xi = 1e7; xi < 1e15; xi *= 1.7) {
    const double e = permittivity_imaginary_axis(m, xi);
    EXPECT_GE(e, 1.0);
    EXPECT_LT(e, previous);
    EXPECT_NEAR(permittivity(m, cplx(0.0, xi)).imag(), 0.0, 1e-12 * e);
    previous = e;
  }
}

TEST(Permittivity, UndampedPoleIsAnError) {
  MaterialModel m = MaterialModel::bst();
  m.gamma0 = 0.0;
  EXPECT_THROW(permittivity(m, m.omega_tilde0), PoleError);
}

TEST(Polarizability, StaticLimit) {
  const auto s = bst_sphere();
  const cplx a = polarizability(s, 0.0);
  const double scale = sphere_volume_polarizability(s.radius);
  EXPECT_NEAR(a.real() / scale, 12.2 / 15.2, 1e-14);
  EXPECT_NEAR(a.real() / scale, 0.8026, 1e-4);
  EXPECT_EQ(a.imag(), 0.0);
}

TEST(Polarizability, PurelyImaginaryAtResonance) {
  const auto s = bst_sphere();
  const auto& m = s.material;
  const double w0 = omega0();
  const cplx a = polarizability(s, w0);
  const double expected =
      sphere_volume_polarizability(s.radius) * m.f0 * m.omega_tilde0 * m.omega_tilde0 / (3.0 * m.gamma0 * w0);
  EXPECT_NEAR(a.real() / expected, 0.0, 1e-9);
  EXPECT_NEAR(a.imag() / expected, 1.0, 1e-12);
}

TEST(Polarizability, UndampedPoleIsAnError) {
  auto s = bst_sphere();
  s.material.gamma0 = 0.0;
  EXPECT_THROW(polarizability(s, resonance_frequency(s.material)), PoleError);
}

TEST(Polarizability, RealityAndPassivity) {
  const auto s = bst_sphere();
  for (double x = -6.0; x <= 6.0; x += 0.0137) {
    const double w = x * omega0();
    const cplx a = polarizability(s, w);
    const cplx b = polarizability(s, -w);
    EXPECT_DOUBLE_EQ(a.real(), b.real());
    EXPECT_DOUBLE_EQ(a.imag(), -b.imag());
    EXPECT_GE(a.imag() * w, 0.0);
  }
}

TEST(ResonanceFrequency, Values) {
  EXPECT_NEAR(omega0() / 1.283e10, 1.0, 1e-3);
  MaterialModel m;
  m.f0 = 0.0;
  EXPECT_DOUBLE_EQ(resonance_frequency(m), m.omega_tilde0);
  m.f0 = 3.0;
  EXPECT_DOUBLE_EQ(resonance_frequency(m), m.omega_tilde0 * std::sqrt(2.0));
  EXPECT_GT(omega0(), MaterialModel::bst().omega_tilde0);
}

TEST(MaterialModel, Validation) {
  MaterialModel m;
  EXPECT_NO_THROW(m.validate());
  m.f0 = 0.0;
  EXPECT_THROW(m.validate(), DomainError);
  m = MaterialModel{};
  m.omega_tilde0 = -1.0;
  EXPECT_THROW(m.validate(), DomainError);
  m = MaterialModel{};
  m.gamma0 = -1.0;
  EXPECT_THROW(m.validate(), DomainError);
  m.gamma0 = 0.0;
  EXPECT_NO_THROW(m.validate());
}

TEST(SpinningSphere, Validation) {
  SpinningSphere s;
  EXPECT_NO_THROW(s.validate());
  s.radius = 0.0;
  EXPECT_THROW(s.validate(), DomainError);
  s = SpinningSphere{};
  s.temperature = -1.0;
  EXPECT_THROW(s.validate(), DomainError);
  s = SpinningSphere{};
  s.axis = Eigen::Vector3d(1.0, 1.0, 0.0);
  EXPECT_THROW(s.validate(), DomainError);
  s.axis = Eigen::Vector3d(1.0, 1.0, 0.0).normalized();
  EXPECT_NO_THROW(s.validate());
}

TEST(Hadamard, ZeroTemperatureIsSignTimesImAlpha) {
  const auto s = bst_sphere();
  for (double x : {-3.0, -1.0, -0.2, 0.3, 1.0, 2.5}) {
    const double w = x * omega0();
    EXPECT_DOUBLE_EQ(hadamard(s, w, 0.0), 2.0 * (w > 0 ? 1.0 : -1.0) * polarizability(s, w).imag());
  }
  EXPECT_EQ(hadamard(s, 0.0, 0.0), 0.0);
}

TEST(Hadamard, EvenAndNonNegative) {
  const auto s = bst_sphere();
  for (double T : {0.0, 300.0, 1500.0}) {
    for (double x = 0.01; x < 5.0; x += 0.173) {
      const double w = x * omega0();
      EXPECT_DOUBLE_EQ(hadamard(s, w, T), hadamard(s, -w, T));
      EXPECT_GE(hadamard(s, w, T), 0.0);
    }
  }
}

TEST(Hadamard, ZeroFrequencyLimit) {
  const auto s = bst_sphere();
  const auto& m = s.material;
  const double T = 1500.0;
  const double w0 = omega0();
  const double expected = 4.0 * thermal_frequency(T) * sphere_volume_polarizability(s.radius) * m.f0 *
                          m.omega_tilde0 * m.omega_tilde0 * m.gamma0 / (3.0 * std::pow(w0, 4));
  EXPECT_NEAR(hadamard(s, 0.0, T) / expected, 1.0, 1e-14);
  EXPECT_NEAR(hadamard(s, 1e-7 * w0, T) / expected, 1.0, 1e-9);
}

TEST(Hadamard, MonotoneInTemperature) {
  const auto s = bst_sphere();
  for (double x : {0.1, 0.9, 1.0, 2.0, 7.0}) {
    const double w = x * omega0();
    EXPECT_GT(hadamard(s, w, 1500.0), hadamard(s, w, 300.0));
    EXPECT_GT(hadamard(s, w, 300.0), hadamard(s, w, 0.0));
  }
}

TEST(UnitSystem, RoundTrip) {
  const auto u = UnitSystem::for_pair(omega0(), 60e-9, 180e-9);
  for (double x : {1e-3, 0.7, 2.0, 123.0}) {
    EXPECT_NEAR(u.frequency_from_si(u.frequency_to_si(x)) / x, 1.0, 1e-14);
    EXPECT_NEAR(u.alpha_from_si(u.alpha_to_si(x)) / x, 1.0, 1e-14);
    EXPECT_NEAR(u.energy_from_si(u.energy_to_si(x)) / x, 1.0, 1e-14);
  }
  EXPECT_THROW(UnitSystem::for_pair(0.0, 1.0, 1.0), DomainError);
}

TEST(UnitSystem, EnergyScale) {
  const double R = 180e-9, a = 60e-9;
  const auto u = UnitSystem::for_pair(omega0(), a, R);
  // aux_prefactor * (4 pi eps0 a^3)^2 * w0 / R^6 = hbar w0 a^6 / (32 pi R^6)
  const double expected = constants::hbar * omega0() * std::pow(a / R, 6) / (32.0 * constants::pi);
  EXPECT_NEAR(u.energy_scale / expected, 1.0, 1e-13);
}

TEST(ScaledSphere, MatchesSiResponse) {
  auto sphere_b = bst_sphere();
  sphere_b.radius = 45e-9;
  const auto u = UnitSystem::for_pair(omega0(), 60e-9, 180e-9);
  for (double T : {0.0, 300.0}) {
    sphere_b.temperature = T;
    const auto scaled = ScaledSphere::from(sphere_b, u);
    EXPECT_DOUBLE_EQ(scaled.theta, u.theta(T));
    for (double x : {-2.2, -0.5, 0.0, 0.4, 1.0, 3.3}) {
      const double w = u.frequency_to_si(x);
      const cplx a = polarizability(sphere_b, w);
      EXPECT_NEAR(std::abs(scaled.alpha(x) * u.alpha_scale - a) / std::abs(a), 0.0, 1e-13);
      const double eta_si = hadamard(sphere_b, w, T);
      const double eta_scaled = u.alpha_to_si(scaled.eta(x));
      if (eta_si == 0.0) {
        EXPECT_EQ(eta_scaled, 0.0);
      } else {
        EXPECT_NEAR(eta_scaled / eta_si, 1.0, 1e-12);
      }
    }
  }
}
