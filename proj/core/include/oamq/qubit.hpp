#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>

namespace oamq {

class BeamEnvironment;

using Complex = std::complex<double>;

/// Normalised two-level state. |0> is the Landau mode LG_{0,-1} (north pole
/// of the Bloch sphere), |1> is LG_{0,+1}.
class QubitState {
 public:
  /// |0>.
  QubitState() = default;

  /// Throws ContractError unless |c0|^2 + |c1|^2 is within `tolerance` of 1.
  /// The stored amplitudes are rescaled to unit norm.
  static QubitState from_amplitudes(Complex c0, Complex c1, double tolerance = 1e-12);

  static QubitState zero();
  static QubitState one();
  static QubitState plus();
  static QubitState minus();
  /// (|0> + i|1>)/sqrt(2)
  static QubitState right();
  /// (|0> - i|1>)/sqrt(2)
  static QubitState left();

  Complex c0() const noexcept { return c0_; }
  Complex c1() const noexcept { return c1_; }

  bool operator==(const QubitState&) const = default;

 private:
  QubitState(Complex c0, Complex c1) : c0_(c0), c1_(c1) {}

  Complex c0_{1.0, 0.0};
  Complex c1_{0.0, 0.0};
};

struct BlochVector {
  double x = 0;
  double y = 0;
  double z = 1;
};

/// Row-major 2x2 complex matrix. Factories below only produce unitaries;
/// products and adjoints of unitaries stay unitary up to rounding.
class GateMatrix {
 public:
  GateMatrix() : m_{Complex{1}, Complex{0}, Complex{0}, Complex{1}} {}
  GateMatrix(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {}

  static GateMatrix identity() { return {}; }

  Complex operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }
  const std::array<Complex, 4>& entries() const noexcept { return m_; }

  GateMatrix adjoint() const;
  Complex determinant() const;
  GateMatrix scaled(Complex factor) const;

  /// Max-norm distance of U^dagger U from the identity.
  double unitarity_error() const;
  bool is_unitary(double tolerance = 1e-12) const { return unitarity_error() <= tolerance; }

  /// Max-norm entrywise distance.
  double distance(const GateMatrix& other) const;

  friend GateMatrix operator*(const GateMatrix& a, const GateMatrix& b);
  bool operator==(const GateMatrix&) const = default;

 private:
  std::array<Complex, 4> m_;
};

enum class Axis { x, y, z };

/// Rotation by theta about a Bloch-sphere axis, exp(-i theta (n . sigma) / 2),
/// with n = -x, +y, -z for Axis::x, y, z respectively. In matrix form:
///   R_x = [[cos, i sin], [i sin, cos]]
///   R_y = [[cos, -sin], [sin, cos]]
///   R_z = diag(e^{i theta/2}, e^{-i theta/2})
/// so R_y(pi/2)|0> = |+> and R_z(pi) = i Z.
GateMatrix rotation_gate(Axis axis, double theta);

GateMatrix pauli_x();
GateMatrix pauli_z();
/// (1/sqrt 2) [[1, 1], [1, -1]].
GateMatrix hadamard();

/// The y-rotation T = R_y(pi/4) with T Z T^dagger = H.
GateMatrix basis_change();

/// Drift-tube evolution for a time t (s): diag(1, exp(+2 i Omega_L t)).
/// Throws DomainError for t < 0 or a field-free environment.
GateMatrix drift_gate(const BeamEnvironment& env, double t);

/// Quadrupole mode converter, a meridian rotation R_y(theta).
GateMatrix converter_gate(double theta = 1.5707963267948966);

/// Throws ContractError if the gate is not unitary to 1e-9.
QubitState apply(const GateMatrix& gate, const QubitState& state);

Complex inner_product(const QubitState& a, const QubitState& b);
/// |<a|b>|^2
double fidelity(const QubitState& a, const QubitState& b);

BlochVector bloch(const QubitState& state);

/// arg <start| U_n ... U_1 |start> for a sequence that returns `start` to its
/// own ray. Throws NotALoopError when |<start|U|start>| differs from 1 by more
/// than 1e-9.
double loop_global_phase(std::span<const GateMatrix> gates, const QubitState& start);

/// Geometric (Pancharatnam) phase of the closed path start -> U_1 start ->
/// ... -> start: -arg of the Bargmann product of consecutive overlaps. For a
/// finely stepped loop this is minus half the enclosed solid angle.
double berry_phase(std::span<const GateMatrix> gates, const QubitState& start);

/// "re im" with 17 significant digits.
std::string format_complex(Complex value);

}  // namespace oamq
