#include "oamq/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "oamq/errors.hpp"
#include "oamq/physics.hpp"

namespace oamq {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kApplyUnitarityTolerance = 1e-9;
constexpr double kLoopTolerance = 1e-9;

}  // namespace

QubitState QubitState::from_amplitudes(Complex c0, Complex c1, double tolerance) {
  const double norm2 = std::norm(c0) + std::norm(c1);
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > tolerance) {
    throw ContractError(fmt::format("qubit amplitudes have squared norm {:.17g}, expected 1", norm2));
  }
  const double scale = 1.0 / std::sqrt(norm2);
  return {c0 * scale, c1 * scale};
}

QubitState QubitState::zero() { return {Complex{1}, Complex{0}}; }
QubitState QubitState::one() { return {Complex{0}, Complex{1}}; }
QubitState QubitState::plus() { return {Complex{kInvSqrt2}, Complex{kInvSqrt2}}; }
QubitState QubitState::minus() { return {Complex{kInvSqrt2}, Complex{-kInvSqrt2}}; }
QubitState QubitState::right() { return {Complex{kInvSqrt2}, Complex{0, kInvSqrt2}}; }
QubitState QubitState::left() { return {Complex{kInvSqrt2}, Complex{0, -kInvSqrt2}}; }

GateMatrix GateMatrix::adjoint() const {
  return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

Complex GateMatrix::determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

GateMatrix GateMatrix::scaled(Complex factor) const {
  return {m_[0] * factor, m_[1] * factor, m_[2] * factor, m_[3] * factor};
}

double GateMatrix::unitarity_error() const {
  return (adjoint() * *this).distance(identity());
}

double GateMatrix::distance(const GateMatrix& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
  return worst;
}

GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
  const auto& x = a.m_;
  const auto& y = b.m_;
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

GateMatrix rotation_gate(Axis axis, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  switch (axis) {
    case Axis::x:
      return {Complex{c}, Complex{0, s}, Complex{0, s}, Complex{c}};
    case Axis::y:
      return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
    case Axis::z:
      return {Complex{c, s}, Complex{0}, Complex{0}, Complex{c, -s}};
  }
  return {};
}

GateMatrix pauli_x() { return {Complex{0}, Complex{1}, Complex{1}, Complex{0}}; }

GateMatrix pauli_z() { return {Complex{1}, Complex{0}, Complex{0}, Complex{-1}}; }

GateMatrix hadamard() {
  return {Complex{kInvSqrt2}, Complex{kInvSqrt2}, Complex{kInvSqrt2}, Complex{-kInvSqrt2}};
}

GateMatrix basis_change() { return rotation_gate(Axis::y, kPi / 4.0); }

GateMatrix drift_gate(const BeamEnvironment& env, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError(fmt::format("drift time must be non-negative, got {:.17g} s", t));
  }
  const double phase = 2.0 * env.require_larmor_omega() * t;
  return {Complex{1}, Complex{0}, Complex{0}, std::polar(1.0, phase)};
}

GateMatrix converter_gate(double theta) { return rotation_gate(Axis::y, theta); }

QubitState apply(const GateMatrix& gate, const QubitState& state) {
  const double err = gate.unitarity_error();
  if (!(err <= kApplyUnitarityTolerance)) {
    throw ContractError(fmt::format("gate is not unitary (|U^dag U - I| = {:.3g})", err));
  }
  const Complex a = gate(0, 0) * state.c0() + gate(0, 1) * state.c1();
  const Complex b = gate(1, 0) * state.c0() + gate(1, 1) * state.c1();
  return QubitState::from_amplitudes(a, b, 1e-8);
}

Complex inner_product(const QubitState& a, const QubitState& b) {
  return std::conj(a.c0()) * b.c0() + std::conj(a.c1()) * b.c1();
}

double fidelity(const QubitState& a, const QubitState& b) { return std::norm(inner_product(a, b)); }

BlochVector bloch(const QubitState& state) {
  const Complex coherence = std::conj(state.c0()) * state.c1();
  return {2.0 * coherence.real(), 2.0 * coherence.imag(),
          std::norm(state.c0()) - std::norm(state.c1())};
}

double loop_global_phase(std::span<const GateMatrix> gates, const QubitState& start) {
  QubitState current = start;
  for (const auto& g : gates) current = apply(g, current);
  const Complex closure = inner_product(start, current);
  const double magnitude = std::abs(closure);
  if (std::abs(magnitude - 1.0) > kLoopTolerance) {
    throw NotALoopError(
        fmt::format("gate sequence does not close: |<start|U|start>| = {:.17g}", magnitude),
        magnitude);
  }
  return std::arg(closure);
}

double berry_phase(std::span<const GateMatrix> gates, const QubitState& start) {
  QubitState current = start;
  Complex bargmann{1.0};
  for (const auto& g : gates) {
    const QubitState next = apply(g, current);
    bargmann *= inner_product(current, next);
    current = next;
  }
  const Complex closure = inner_product(current, start);
  const double magnitude = std::abs(closure);
  if (std::abs(magnitude - 1.0) > kLoopTolerance) {
    throw NotALoopError(
        fmt::format("path does not close: |<end|start>| = {:.17g}", magnitude), magnitude);
  }
  bargmann *= closure;
  return -std::arg(bargmann);
}

std::string format_complex(Complex value) {
  return fmt::format("{:.17g} {:.17g}", value.real(), value.imag());
}

}  // namespace oamq
