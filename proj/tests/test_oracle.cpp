#include <gtest/gtest.h>

#include <cmath>

#include "spinvdw/oracle.hpp"

using namespace spinvdw;

namespace {

const double w0 = 1.0e10;

LorentzPair identical() { return {2e-30, 2e-30, w0, w0, 180e-9}; }
LorentzPair distinct() { return {2e-30, 1e-30, w0, 1.4 * w0, 180e-9}; }

}  // namespace

TEST(Oracle, RatiosAtRestAreOne) {
  EXPECT_DOUBLE_EQ(ratio_aux(identical(), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(ratio_aux(distinct(), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(ratio_rr(w0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(ratio_uu(w0, 0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(ratio_ur(w0, 0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(ratio_uo(w0, 0.0, 0.0), 1.0);
}

TEST(Oracle, AuxIsSumOfHalves) {
  for (const auto& p : {identical(), distinct()}) {
    for (double s : {0.0, 0.5, 1.3, 3.0}) {
      EXPECT_DOUBLE_EQ(aux_closed(p, s * w0), eab_closed(p, s * w0) + eba_closed(p, s * w0));
    }
  }
}

TEST(Oracle, AuxRatioMatchesClosedForm) {
  for (const auto& p : {identical(), distinct()}) {
    const double e0 = aux_closed(p, 0.0);
    for (double s : {0.5, 1.1, 3.7}) {
      EXPECT_NEAR(aux_closed(p, s * w0) / e0, ratio_aux(p, s * w0), 1e-12);
    }
  }
}

TEST(Oracle, EqualFrequencyBranchIsContinuous) {
  auto p = identical();
  auto q = p;
  q.omega0B *= 1.0 + 1e-7;
  for (double s : {0.9, 2.5}) {
    EXPECT_NEAR(eba_closed(q, s * w0) / eba_closed(p, s * w0), 1.0, 1e-5);
  }
  // Unequal resonances keep a pole at the difference frequency.
  EXPECT_THROW(eba_closed(q, 0.0), PoleError);
  EXPECT_THROW(eba_closed(distinct(), 0.4 * w0), PoleError);
}

TEST(Oracle, SignChangeAcrossResonance) {
  const auto p = identical();
  EXPECT_LT(aux_closed(p, 1.9 * w0), 0.0);
  EXPECT_GT(aux_closed(p, 2.1 * w0), 0.0);
  EXPECT_GT(ratio_rr(w0, 1.99 * w0), 10.0);
}

TEST(Oracle, IdenticalRatioAgreesWithGeneral) {
  for (double s : {0.3, 1.5, 2.9}) {
    EXPECT_DOUBLE_EQ(ratio_identical(w0, s * w0), ratio_aux(identical(), s * w0));
  }
}

TEST(Oracle, ArrangementRatiosHandValues) {
  EXPECT_NEAR(ratio_rr(w0, w0), (4.0 / 3.0 + 2.0) / 3.0, 1e-14);
  // uu with WA = WB = w0: (1/3)/4 + 3/(4 - 4) would be a pole, so use WA = w0, WB = 0.
  EXPECT_NEAR(ratio_uu(w0, w0, 0.0), (1.0 / 3.0) / 3.0 + 3.0 / 3.0 + 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(ratio_ur(w0, w0, 0.0), (8.0 * 4.0 / 3.0 + 2.0 + 2.0 * 4.0 / 3.0) / 12.0, 1e-14);
  EXPECT_NEAR(ratio_uo(w0, w0, 0.0), (2.0 * 4.0 / 3.0 + 2.0 + 8.0 * 4.0 / 3.0) / 12.0, 1e-14);
}

TEST(Oracle, NeedleLimits) {
  EXPECT_NEAR(ratio_rr(w0, 1e4 * w0), 2.0 / 3.0, 1e-6);
  EXPECT_NEAR(ratio_uu(w0, 1e4 * w0, 0.0), 1.0 / 6.0, 1e-6);
}

TEST(Oracle, PolesAreExcluded) {
  EXPECT_THROW(ratio_aux(identical(), 2.0 * w0), PoleError);
  EXPECT_THROW(ratio_rr(w0, -2.0 * w0), PoleError);
  EXPECT_THROW(ratio_uu(w0, 1.0 * w0, 1.0 * w0), PoleError);
  EXPECT_THROW(ratio_ur(w0, 2.0 * w0, 0.0), PoleError);
  EXPECT_THROW(eba_closed(distinct(), 2.4 * w0), PoleError);
  EXPECT_NO_THROW(ratio_rr(w0, 2.0 * w0 * (1.0 + 1e-4)));
}

TEST(Oracle, Validation) {
  LorentzPair p = identical();
  p.R = 0.0;
  EXPECT_THROW(aux_closed(p, 0.0), DomainError);
  EXPECT_THROW(ratio_uu(-1.0, 0.0, 0.0), DomainError);
}

TEST(Oracle, FromSpheres) {
  SpinningSphere s;
  const auto p = LorentzPair::from_spheres(s, s, 180e-9);
  EXPECT_DOUBLE_EQ(p.omega0A, resonance_frequency(s.material));
  EXPECT_NEAR(p.alpha0A / (4.0 * constants::pi * constants::epsilon0 * std::pow(s.radius, 3)),
              s.material.f0 / (s.material.f0 + 3.0), 1e-12);
  EXPECT_LT(aux_closed(p, 0.0), 0.0);
}
