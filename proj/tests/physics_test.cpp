#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oamq/errors.hpp"
#include "oamq/physics.hpp"

namespace oamq {
namespace {

using namespace oamq::literals;

const BeamEnvironment kDemo = derive_beam(10_keV, 0.1_T);

TEST(DeriveBeam, ReproducesDemonstrationParameters) {
  EXPECT_NEAR(*kDemo.larmor_omega(), 8.6e9, 0.03 * 8.6e9);
  EXPECT_NEAR(*kDemo.magnetic_waist(), 162e-9, 0.01 * 162e-9);
  EXPECT_NEAR(*kDemo.oscillation_length(), 22e-3, 0.05 * 22e-3);
  EXPECT_GT(*kDemo.larmor_period(), 0.5e-9);
  EXPECT_LT(*kDemo.larmor_period(), 1.5e-9);
}

TEST(DeriveBeam, RestMassLarmorFrequencyIsDirectArithmetic) {
  const auto env = derive_beam(10_keV, 0.1_T, MassModel::rest);
  const double expected = 1.602176634e-19 * 0.1 / (2.0 * 9.1093837015e-31);
  EXPECT_NEAR(*env.larmor_omega(), expected, 1e-12 * expected);
  EXPECT_NEAR(expected, 8.79e9, 0.01e9);
  EXPECT_NEAR(env.speed(), std::sqrt(2.0 * 1e4 * 1.602176634e-19 / 9.1093837015e-31), 1e-3);
}

TEST(DeriveBeam, RelativisticKinematics) {
  // gamma = 1 + T / (m c^2) with m c^2 = 510998.95 eV
  EXPECT_NEAR(kDemo.gamma(), 1.0 + 1e4 / 510998.95, 1e-8);
  const double beta = kDemo.speed() / kConstants.speed_of_light;
  EXPECT_NEAR(1.0 / std::sqrt(1.0 - beta * beta), kDemo.gamma(), 1e-12);
  EXPECT_NEAR(kDemo.wavenumber(), kDemo.gamma() * kConstants.electron_mass * kDemo.speed() / kConstants.hbar,
              1e-3);
}

TEST(DeriveBeam, MagneticWaistIndependentOfMassModel) {
  const auto rest = derive_beam(10_keV, 0.1_T, MassModel::rest);
  EXPECT_DOUBLE_EQ(*rest.magnetic_waist(), *kDemo.magnetic_waist());
}

TEST(DeriveBeam, RejectsNonPositiveEnergy) {
  EXPECT_THROW(derive_beam({0.0}, 0.1_T), DomainError);
  EXPECT_THROW(derive_beam({-5.0}, 0.1_T), DomainError);
}

TEST(DeriveBeam, ZeroFieldLeavesMagneticQuantitiesAbsent) {
  const auto env = derive_beam(10_keV, {0.0});
  EXPECT_FALSE(env.has_field());
  EXPECT_FALSE(env.larmor_omega().has_value());
  EXPECT_FALSE(env.magnetic_waist().has_value());
  EXPECT_FALSE(env.oscillation_length().has_value());
  EXPECT_GT(env.speed(), 0.0);
  EXPECT_THROW(env.require_larmor_omega(), DomainError);
  EXPECT_THROW(max_nonadiabatic_switch_time(env), DomainError);
  EXPECT_THROW(drift_time_for_phase(kPi, env), DomainError);
}

TEST(DeriveBeam, NegativeFieldUsesMagnitude) {
  const auto env = derive_beam(10_keV, {-0.1});
  EXPECT_DOUBLE_EQ(*env.larmor_omega(), *kDemo.larmor_omega());
}

TEST(MatchingField, InvertsDemonstrationWaist) {
  EXPECT_NEAR(matching_field(162_nm), 0.1, 0.001);
}

TEST(MatchingField, RoundTripsWithMagneticWaist) {
  for (double b : {0.01, 0.1, 1.0}) {
    EXPECT_NEAR(matching_field(magnetic_waist({b})), b, 1e-12 * b);
    const double w0 = b * 1e-6;
    EXPECT_NEAR(magnetic_waist({matching_field(w0)}), w0, 1e-12 * w0);
  }
}

TEST(MatchingField, RejectsNonPositiveWaist) {
  EXPECT_THROW(matching_field(0.0), DomainError);
  EXPECT_THROW(matching_field(-1e-9), DomainError);
}

TEST(SwitchTime, IsHalfLarmorPeriod) {
  const double threshold = max_nonadiabatic_switch_time(kDemo);
  EXPECT_NEAR(threshold, kPi / *kDemo.larmor_omega(), 1e-24);
  EXPECT_NEAR(threshold, 0.364e-9, 0.005e-9);
  EXPECT_TRUE(is_nonadiabatic_switch(0.1e-9, kDemo));
  EXPECT_FALSE(is_nonadiabatic_switch(1e-9, kDemo));
}

TEST(SwitchTime, HalvesWhenLarmorFrequencyDoubles) {
  const auto doubled = derive_beam(10_keV, 0.2_T);
  EXPECT_NEAR(max_nonadiabatic_switch_time(doubled), max_nonadiabatic_switch_time(kDemo) / 2, 1e-22);
}

TEST(LandauEnergy, SplittingsFollowDispersion) {
  const double k = kDemo.wavenumber();
  const double quantum = kConstants.hbar * *kDemo.larmor_omega();
  // Differences cancel against the kinetic term, so allow a few ulps of it.
  const double tol = 8 * std::numeric_limits<double>::epsilon() * landau_energy(0, 0, kDemo, k);
  EXPECT_NEAR(landau_energy(0, 1, kDemo, k) - landau_energy(0, -1, kDemo, k), 2 * quantum, tol);
  EXPECT_NEAR(landau_energy(1, 0, kDemo, k) - landau_energy(0, 0, kDemo, k), 2 * quantum, tol);
  EXPECT_EQ(landau_energy(0, -5, kDemo, k), landau_energy(0, -1, kDemo, k));
  EXPECT_THROW(landau_energy(-1, 0, kDemo, k), DomainError);
}

TEST(LandauEnergy, NegativeChargesAreDegenerate) {
  const double k = kDemo.wavenumber();
  for (int n = 0; n < 4; ++n) {
    const double reference = landau_energy(n, -1, kDemo, k);
    for (int l = -12; l < 0; ++l) EXPECT_EQ(landau_energy(n, l, kDemo, k), reference);
  }
}

TEST(Drift, PiPhaseIsQuarterLarmorPeriod) {
  EXPECT_NEAR(drift_time_for_phase(kPi, kDemo), *kDemo.larmor_period() / 4, 1e-24);
  EXPECT_EQ(drift_time_for_phase(0.0, kDemo), 0.0);
  EXPECT_EQ(drift_length(0.0, kDemo), 0.0);
}

TEST(Drift, SixteenthLarmorPeriodStep) {
  EXPECT_NEAR(drift_length(*kDemo.larmor_period() / 16, kDemo), 2.75e-3, 0.05 * 2.75e-3);
}

TEST(Drift, FullCycleCoversOscillationLength) {
  for (double b : {0.01, 0.1, 1.0}) {
    const auto env = derive_beam(10_keV, {b});
    const double zl = *env.oscillation_length();
    EXPECT_NEAR(drift_length(drift_time_for_phase(2 * kPi, env), env), zl, 1e-12 * zl);
  }
}

TEST(Scaling, GeometricFieldSweep) {
  const double b_ref = 1e-3;
  const auto ref = derive_beam(10_keV, {b_ref});
  for (double b = b_ref; b <= 10.0 * (1 + 1e-9); b *= std::sqrt(10.0)) {
    const auto env = derive_beam(10_keV, {b});
    EXPECT_NEAR(*env.larmor_omega() / *ref.larmor_omega(), b / b_ref, 1e-10 * b / b_ref);
    EXPECT_NEAR(*env.magnetic_waist() / *ref.magnetic_waist(), std::sqrt(b_ref / b), 1e-12);
    const double w = *env.magnetic_waist();
    EXPECT_NEAR(magnetic_waist({matching_field(w)}), w, 1e-12 * w);
  }
}

TEST(Scaling, LarmorFrequencyInverseInEffectiveMass) {
  const auto rest = derive_beam(10_keV, 0.1_T, MassModel::rest);
  EXPECT_NEAR(*rest.larmor_omega() / *kDemo.larmor_omega(), kDemo.gamma(), 1e-12);
}

TEST(DiffractingBeam, GeometryAtWaistAndRayleighLength) {
  const double w0 = *kDemo.magnetic_waist();
  const DiffractingBeamParams p(w0, kDemo.wavenumber());
  EXPECT_NEAR(p.rayleigh_length(), kDemo.wavenumber() * w0 * w0 / 2, 1e-20);
  EXPECT_EQ(p.waist_at(0.0), w0);
  EXPECT_FALSE(p.curvature_at(0.0).has_value());
  EXPECT_EQ(p.gouy_at(0.0), 0.0);
  const double zr = p.rayleigh_length();
  EXPECT_NEAR(p.waist_at(zr), std::sqrt(2.0) * w0, 1e-12 * w0);
  EXPECT_NEAR(*p.curvature_at(zr), 2 * zr, 1e-12 * zr);
  EXPECT_NEAR(p.gouy_at(zr), kPi / 4, 1e-15);
  EXPECT_NEAR(p.gouy_at(-zr), -kPi / 4, 1e-15);
}

}  // namespace
}  // namespace oamq
