#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oamq/errors.hpp"
#include "oamq/physics.hpp"
#include "oamq/spectral.hpp"

namespace oamq {
namespace {

using namespace oamq::literals;

const BeamEnvironment kDemo = derive_beam(10_keV, 0.1_T);
const double kWaist = *kDemo.magnetic_waist();
const TransverseGrid kGrid(200, 5 * kWaist);
constexpr double kInvSqrt2 = 0.70710678118654752440;

TEST(Decompose, SingleModeLandsOnItsIndex) {
  for (ModeIndex idx : {ModeIndex{0, 0}, ModeIndex{0, 1}, ModeIndex{1, -2}, ModeIndex{2, 3}}) {
    const auto e = decompose(sample_landau(idx, kWaist, kGrid), kWaist);
    for (const auto& [other, c] : e.coefficients()) {
      EXPECT_NEAR(std::abs(c - (other == idx ? 1.0 : 0.0)), 0.0, 1e-5)
          << idx.n << "," << idx.l << " -> " << other.n << "," << other.l;
    }
    EXPECT_LT(e.residual_norm(), 1e-5);
  }
}

TEST(Decompose, PlusStateSplitsEvenly) {
  const auto e = decompose(synthesize_qubit_field(QubitState::plus(), kWaist, kGrid), kWaist);
  EXPECT_NEAR(std::abs(e.coefficient({0, -1}) - kInvSqrt2), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(e.coefficient({0, 1}) - kInvSqrt2), 0.0, 1e-6);
  EXPECT_NEAR(e.captured_power(), 1.0, 1e-6);
}

TEST(Decompose, HermiteGaussLivesInQubitPair) {
  const auto e = decompose(sample_hg(1, 0, kWaist, kGrid), kWaist);
  EXPECT_NEAR(std::abs(e.coefficient({0, -1})), kInvSqrt2, 1e-6);
  EXPECT_NEAR(std::abs(e.coefficient({0, 1})), kInvSqrt2, 1e-6);
  EXPECT_LT(qubit_leakage(e), 1e-5);
}

TEST(Decompose, ModeOutsideCutoffIsResidual) {
  const auto e = decompose(sample_landau({0, 8}, kWaist, kGrid), kWaist, {4, 6});
  EXPECT_LT(e.captured_power(), 1e-10);
  EXPECT_NEAR(e.residual_norm(), 1.0, 1e-6);
}

TEST(Decompose, PowerIsConserved) {
  // A field with content inside and outside the basis.
  const auto outside = sample_landau({3, 5}, kWaist, kGrid);
  const auto f = 0.6 * sample_landau({1, 1}, kWaist, kGrid) + Complex{0, 0.8} * outside;
  const auto e = decompose(f, kWaist, {2, 3});
  EXPECT_NEAR(e.captured_power() + e.residual_norm() * e.residual_norm(), f.norm() * f.norm(),
              1e-8);
  EXPECT_NEAR(e.residual_norm(), 0.8 * outside.norm(), 1e-6);
}

TEST(Decompose, RecoversRandomExpansion) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  ModeExpansion e(kWaist, {2, 3});
  for (int n = 0; n <= 2; ++n) {
    for (int l = -3; l <= 3; ++l) e.set_coefficient({n, l}, {g(rng), g(rng)});
  }
  const auto back = decompose(synthesize(e, kGrid), kWaist, {2, 3});
  for (const auto& [idx, c] : e.coefficients()) {
    EXPECT_LT(std::abs(back.coefficient(idx) - c), 1e-5);
  }
  EXPECT_LT(back.residual_norm(), 1e-5);
}

TEST(Synthesize, InvertsDecomposition) {
  const auto f = synthesize_qubit_field(QubitState::right(), kWaist, kGrid);
  const auto g = synthesize(decompose(f, kWaist), kGrid);
  double worst = 0.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < f.amplitudes().size(); ++i) {
    worst = std::max(worst, std::abs(f.amplitudes()[i] - g.amplitudes()[i]));
    peak = std::max(peak, std::abs(f.amplitudes()[i]));
  }
  EXPECT_LT(worst / peak, 1e-6);
}

TEST(ModeExpansion, CoefficientAccess) {
  ModeExpansion e(kWaist, {1, 1});
  EXPECT_EQ(e.coefficient({1, -1}), Complex{0.0});
  e.set_coefficient({1, -1}, {0.5, 0.5});
  EXPECT_EQ(e.coefficient({1, -1}), (Complex{0.5, 0.5}));
  EXPECT_THROW(e.coefficient({2, 0}), DomainError);
  EXPECT_THROW(e.set_coefficient({0, 2}, 1.0), DomainError);
  EXPECT_THROW(ModeExpansion(kWaist, {40, 1}), UnsupportedRangeError);
}

TEST(Evolve, ZeroTimeIsIdentity) {
  const auto e = decompose(synthesize_qubit_field(QubitState::right(), kWaist, kGrid), kWaist);
  const auto same = evolve(e, kDemo, 0.0);
  for (const auto& [idx, c] : e.coefficients()) EXPECT_EQ(same.coefficient(idx), c);
}

TEST(Evolve, EachModeTurnsAtItsLandauLevel) {
  const double omega = *kDemo.larmor_omega();
  const double t = 0.173e-9;
  ModeExpansion e(kWaist, {3, 4});
  for (int n = 0; n <= 3; ++n) {
    for (int l = -4; l <= 4; ++l) e.set_coefficient({n, l}, 1.0);
  }
  const auto out = evolve(e, kDemo, t);
  for (const auto& [idx, c] : out.coefficients()) {
    const int level = idx.l + 2 * idx.n + std::abs(idx.l) + 1;
    EXPECT_LT(std::abs(c - std::polar(1.0, omega * level * t)), 1e-12);
  }
}

TEST(Evolve, QubitRelativePhaseMatchesDriftGate) {
  const double t = *kDemo.larmor_period() / 16;
  ModeExpansion e(kWaist, {0, 1});
  e.set_coefficient({0, -1}, kInvSqrt2);
  e.set_coefficient({0, 1}, kInvSqrt2);
  const auto out = evolve(e, kDemo, t);
  const auto gate = drift_gate(kDemo, t);
  EXPECT_LT(std::abs(out.coefficient({0, 1}) / out.coefficient({0, -1}) - gate(1, 1) / gate(0, 0)),
            1e-12);
}

TEST(Evolve, NegativeChargesShareAPhase) {
  const double t = 0.41e-9;
  ModeExpansion e(kWaist, {2, 5});
  for (int l = -5; l <= 0; ++l) e.set_coefficient({2, l}, 1.0);
  const auto out = evolve(e, kDemo, t);
  for (int l = -5; l < 0; ++l) EXPECT_EQ(out.coefficient({2, l}), out.coefficient({2, -1}));
}

TEST(Evolve, HalfLarmorPeriodIsGlobalSignFlip) {
  const auto f = sample_landau({1, 2}, kWaist, kGrid) +
                 synthesize_qubit_field(QubitState::right(), kWaist, kGrid);
  const auto e = decompose(f, kWaist);
  const auto out = evolve(e, kDemo, *kDemo.larmor_period() / 2);
  for (const auto& [idx, c] : e.coefficients()) {
    EXPECT_LT(std::abs(out.coefficient(idx) + c), 1e-12);
  }
}

TEST(Evolve, RequiresMatchedWaist) {
  EXPECT_THROW(evolve(ModeExpansion(1.02 * kWaist, {}), kDemo, 1e-10), MatchingError);
  EXPECT_THROW(evolve(ModeExpansion(0.98 * kWaist, {}), kDemo, 1e-10), MatchingError);
  EXPECT_NO_THROW(evolve(ModeExpansion(1.004 * kWaist, {}), kDemo, 1e-10));
  EXPECT_THROW(evolve(ModeExpansion(kWaist, {}), derive_beam(10_keV, 0.0_T), 1e-10), DomainError);
  EXPECT_THROW(evolve(ModeExpansion(kWaist, {}), kDemo, -1e-10), DomainError);
}

TEST(ProjectToQubit, RecoversSynthesizedState) {
  for (const auto& s : {QubitState::zero(), QubitState::one(), QubitState::right(),
                        QubitState::from_amplitudes(0.6, Complex{0, -0.8})}) {
    const auto p = project_to_qubit(decompose(synthesize_qubit_field(s, kWaist, kGrid), kWaist));
    EXPECT_NEAR(fidelity(p.state, s), 1.0, 1e-12);
    EXPECT_LT(p.leakage, 1e-5);
  }
}

TEST(ProjectToQubit, EmptySubspace) {
  EXPECT_THROW(project_to_qubit(decompose(sample_landau({1, 1}, kWaist, kGrid), kWaist)),
               EmptySubspaceError);
  EXPECT_THROW(project_to_qubit(ModeExpansion(kWaist, {2, 0})), EmptySubspaceError);
}

TEST(ProjectToQubit, ReportsLeakage) {
  const auto f = 0.8 * synthesize_qubit_field(QubitState::plus(), kWaist, kGrid) +
                 0.6 * sample_landau({1, 1}, kWaist, kGrid);
  const auto p = project_to_qubit(decompose(f, kWaist));
  EXPECT_NEAR(p.leakage, 0.6, 1e-6);
  EXPECT_NEAR(fidelity(p.state, QubitState::plus()), 1.0, 1e-12);
}

TEST(ExpansionTable, RoundTrip) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  ModeExpansion e(kWaist, {3, 2});
  for (int n = 0; n <= 3; ++n) {
    for (int l = -2; l <= 2; ++l) e.set_coefficient({n, l}, {g(rng), g(rng)});
  }
  e.set_residual_norm(0.25);
  std::stringstream io;
  write_expansion(io, e);
  const auto back = read_expansion(io);
  EXPECT_EQ(back.waist(), e.waist());
  EXPECT_EQ(back.cutoffs(), e.cutoffs());
  EXPECT_EQ(back.coefficients(), e.coefficients());
  EXPECT_EQ(back.residual_norm(), 0.0);
}

TEST(ExpansionTable, MalformedInput) {
  std::istringstream empty("");
  EXPECT_THROW(read_expansion(empty), FormatError);
  std::istringstream header("waist=1\n");
  EXPECT_THROW(read_expansion(header), FormatError);
  std::istringstream row("# waist_m=1e-7 n_max=1 l_max=1\n0 1 nope 0\n");
  EXPECT_THROW(read_expansion(row), FormatError);
  std::istringstream outside("# waist_m=1e-7 n_max=1 l_max=1\n0 5 1 0\n");
  EXPECT_THROW(read_expansion(outside), DomainError);
}

TEST(DriftOracle, PropagatorAgreesWithGate) {
  const double step = *kDemo.larmor_period() / 16;
  const auto start = apply(converter_gate(kPi / 3), QubitState::zero());
  for (int k = 0; k <= 8; ++k) {
    const auto r = compare_drift_with_propagator(start, kDemo, k * step, kGrid);
    EXPECT_GE(r.fidelity, 1.0 - 1e-9) << k;
    EXPECT_LT(r.leakage, 1e-5) << k;
  }
}

}  // namespace
}  // namespace oamq
