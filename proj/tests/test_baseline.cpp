#include <gtest/gtest.h>

#include <cmath>

#include "spinvdw/baseline.hpp"
#include "spinvdw/configurations.hpp"

using namespace spinvdw;

namespace {

PairContext bst(double T) { return PairContext::identical(60e-9, MaterialModel::bst(), T, 180e-9); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Matsubara, Frequencies) {
  EXPECT_EQ(matsubara_frequency(0, 300.0), 0.0);
  EXPECT_NEAR(matsubara_frequency(1, 300.0), 2.0 * constants::pi * thermal_frequency(300.0), 1.0);
  EXPECT_DOUBLE_EQ(matsubara_frequency(3, 300.0), 3.0 * matsubara_frequency(1, 300.0));
}

TEST(Matsubara, StaticClausiusMossotti) {
  const auto m = MaterialModel::bst();
  EXPECT_NEAR(clausius_mossotti(m, 0.0), m.f0 / (m.f0 + 3.0), 1e-15);
  EXPECT_LT(clausius_mossotti(m, 1e3 * m.omega_tilde0), 1e-5);
}

TEST(Matsubara, SumConvergesAndReportsTerms) {
  MatsubaraSpec spec;
  const auto s = matsubara_sum([](double xi) { return 1.0 / (1.0 + xi * xi * 1e-26); }, spec);
  EXPECT_GT(s.terms, 1u);
  EXPECT_GT(s.value, 0.5);
  spec.max_terms = 1;
  EXPECT_THROW(matsubara_sum([](double) { return 1.0; }, spec), ConvergenceError);
  spec.temperature = 0.0;
  EXPECT_THROW(matsubara_sum([](double) { return 1.0; }, spec), DomainError);
}

TEST(Matsubara, EnergyDominatedByStaticTerm) {
  // In the classical regime only n = 0 contributes: -3 k_B T (a^2/R^2)^3 Delta(0)^2.
  const auto ctx = bst(300.0);
  const double d0 = clausius_mossotti(ctx.a.material, 0.0);
  const double expected = -3.0 * constants::k_B * 300.0 * std::pow(60.0 * 60.0 / (180.0 * 180.0), 3) * d0 * d0;
  EXPECT_LT(rel(matsubara_static_energy(ctx), expected), 1e-6);
}

TEST(Matsubara, AgreesWithSpectralEnergyAtRest) {
  for (double T : {300.0, 1500.0}) {
    const auto ctx = bst(T);
    MatsubaraSpec spec;
    spec.temperature = T;
    EXPECT_LT(rel(matsubara_static_energy(ctx, spec), 12.0 * aux_energy(ctx, 0.0)), 1e-8) << "T=" << T;
  }
}

TEST(Hamaker, ModelValue) {
  const auto m = MaterialModel::bst();
  const double r0 = (m.f0) / (m.f0 + 2.0);
  const double h = hamaker_constant(m);
  EXPECT_LT(rel(h, 0.75 * constants::k_B * 300.0 * r0 * r0), 1e-6);
  EXPECT_NEAR(h, 2.293e-21, 0.001e-21);
}

TEST(Hamaker, StaticEstimate) {
  const double e = static_energy_estimate(5e-20, 60e-9, 180e-9);
  EXPECT_NEAR(e, -(16.0 / 9.0) * 5e-20 / 729.0, 1e-30);
  EXPECT_NEAR(static_force_estimate(5e-20, 60e-9, 180e-9) / constants::femto, -4.0644, 1e-4);
  EXPECT_THROW(static_energy_estimate(-1.0, 60e-9, 180e-9), DomainError);
}

TEST(Hamaker, EstimateConsistentWithMatsubara) {
  const auto ctx = bst(300.0);
  const double estimate = static_energy_estimate(hamaker_constant(ctx.a.material), 60e-9, 180e-9);
  const double ratio = matsubara_static_energy(ctx) / estimate;
  EXPECT_GT(ratio, 0.5);
  EXPECT_LT(ratio, 2.0);
}

TEST(NaiveFdt, MatchesSpectralAtRest) {
  const auto ctx = bst(0.0);
  EXPECT_LT(rel(naive_fdt_energy_rr(ctx, 0.0, 0.0), 12.0 * aux_energy(ctx, 0.0)), 1e-7);
}

TEST(NaiveFdt, DependsOnIndividualSpins) {
  const auto ctx = bst(0.0);
  const double w0 = resonance_frequency(ctx.a.material);
  // Same relative spin, different individual spins.
  const double e1 = naive_fdt_energy_rr(ctx, 0.5 * w0, 0.5 * w0);
  const double e2 = naive_fdt_energy_rr(ctx, 0.0, 0.0);
  EXPECT_GT(rel(e1, e2), 1e-3);
  const Interaction pair(ctx);
  const auto rr = Arrangement::canonical(ArrangementKind::RR);
  EXPECT_EQ(pair.energy(rr, 0.5 * w0, 0.5 * w0), pair.energy(rr, 0.0, 0.0));
}

TEST(NaiveFdt, ZeroTemperatureOnly) {
  EXPECT_THROW(naive_fdt_energy_rr(bst(300.0), 0.0, 0.0), DomainError);
}
