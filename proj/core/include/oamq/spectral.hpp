#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "oamq/mode_fields.hpp"
#include "oamq/qubit.hpp"

namespace oamq {

class BeamEnvironment;

struct TruncationCutoffs {
  int n_max = 4;
  int l_max = 6;

  bool operator==(const TruncationCutoffs&) const = default;
};

/// Coefficients of a field over the Landau modes with n <= n_max and
/// |l| <= l_max, at one waist.
class ModeExpansion {
 public:
  ModeExpansion(double waist, TruncationCutoffs cutoffs);

  double waist() const noexcept { return waist_; }
  TruncationCutoffs cutoffs() const noexcept { return cutoffs_; }

  /// Zero for indices that were never set; throws DomainError outside the
  /// cutoffs.
  Complex coefficient(ModeIndex idx) const;
  void set_coefficient(ModeIndex idx, Complex value);
  const std::map<ModeIndex, Complex>& coefficients() const noexcept { return coefficients_; }

  /// Norm of the part of the input field the truncated basis does not carry.
  double residual_norm() const noexcept { return residual_norm_; }
  void set_residual_norm(double r) noexcept { residual_norm_ = r; }

  /// sum |c|^2
  double captured_power() const;

 private:
  double waist_;
  TruncationCutoffs cutoffs_;
  std::map<ModeIndex, Complex> coefficients_;
  double residual_norm_ = 0;
};

/// Projects `field` on every Landau mode inside the cutoffs by grid
/// quadrature. residual_norm is the quadrature norm of field - sum c LG.
ModeExpansion decompose(const ComplexField& field, double waist, TruncationCutoffs cutoffs = {});

/// Multiplies each coefficient by exp(+i Omega_L (l + 2n + |l| + 1) t); the
/// common axial-energy factor is dropped. Throws MatchingError unless the
/// expansion waist matches the field within 1%.
ModeExpansion evolve(const ModeExpansion& expansion, const BeamEnvironment& env, double t);

/// Sum of coefficient * LG_{n,l} on the grid.
ComplexField synthesize(const ModeExpansion& expansion, const TransverseGrid& grid);

struct QubitProjection {
  QubitState state;
  double leakage = 0;
};

/// Norm of everything outside the (0,-1), (0,+1) pair, residual included.
double qubit_leakage(const ModeExpansion& expansion);

/// Restricts to the qubit pair and renormalises. Throws EmptySubspaceError
/// if both coefficients are below 1e-9.
QubitProjection project_to_qubit(const ModeExpansion& expansion);

/// Text table: "# waist_m=<w> n_max=<n> l_max=<l>" then "n l re im" per mode,
/// 17 significant digits.
void write_expansion(std::ostream& out, const ModeExpansion& expansion);
void write_expansion(const std::filesystem::path& path, const ModeExpansion& expansion);
/// The residual is not stored in the table and reads back as zero.
ModeExpansion read_expansion(std::istream& in);

/// One row of the analytic-vs-propagator comparison.
struct DriftOracleResult {
  QubitState analytic;
  QubitState propagated;
  double fidelity = 0;
  double leakage = 0;
};

/// Evolves `state` through a drift of duration t twice: with drift_gate, and
/// by field synthesis -> decomposition -> spectral evolution -> projection.
DriftOracleResult compare_drift_with_propagator(const QubitState& state, const BeamEnvironment& env,
                                                double t, const TransverseGrid& grid,
                                                TruncationCutoffs cutoffs = {});

}  // namespace oamq
