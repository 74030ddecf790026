#pragma once

#include <complex>
#include <compare>
#include <span>
#include <vector>

#include "oamq/qubit.hpp"

namespace oamq {

class DiffractingBeamParams;

/// Landau / Laguerre-Gauss mode label: radial index n >= 0, topological
/// charge l.
struct ModeIndex {
  int n = 0;
  int l = 0;

  auto operator<=>(const ModeIndex&) const = default;
};

/// Square, axis-centred, cell-centred sampling of the transverse plane.
/// Sample i sits at -half_extent + (i + 1/2) * spacing along each axis.
class TransverseGrid {
 public:
  TransverseGrid(int samples_per_side, double half_extent);

  int samples_per_side() const noexcept { return samples_; }
  double half_extent() const noexcept { return half_extent_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(samples_) * static_cast<std::size_t>(samples_);
  }
  double coordinate(int i) const noexcept { return -half_extent_ + (i + 0.5) * spacing_; }

  bool operator==(const TransverseGrid& other) const noexcept {
    return samples_ == other.samples_ && half_extent_ == other.half_extent_;
  }

 private:
  int samples_;
  double half_extent_;
  double spacing_;
};

inline constexpr int kDefaultSamplesPerSide = 512;
inline constexpr double kDefaultHalfExtentInWaists = 4.0;

/// Throws ResolutionError when fewer than four samples span one waist.
void check_resolution(double waist, const TransverseGrid& grid);

/// 512 x 512 samples over +-4 waists.
TransverseGrid default_grid(double waist);

/// A complex transverse wavefunction sampled on a grid, row-major with y as
/// the outer index. Amplitudes carry units of 1/m so that the quadrature
/// sum |psi|^2 * spacing^2 is dimensionless.
class ComplexField {
 public:
  ComplexField(TransverseGrid grid, std::vector<Complex> amplitudes);
  /// All zeros.
  explicit ComplexField(TransverseGrid grid);

  const TransverseGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex at(int ix, int iy) const {
    return amplitudes_[static_cast<std::size_t>(iy) * grid_.samples_per_side() + ix];
  }

  /// Quadrature L2 norm, cached at construction.
  double norm() const noexcept { return norm_; }
  /// Throws DomainError for an all-zero field.
  ComplexField normalized() const;
  std::vector<double> intensity() const;

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator*=(Complex factor);

 private:
  TransverseGrid grid_;
  std::vector<Complex> amplitudes_;
  double norm_ = 0;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator*(Complex factor, ComplexField f);

/// Normalised Laguerre-Gauss profile LG_{n,l} with waist w at (x, y).
Complex landau_value(ModeIndex idx, double waist, double x, double y);

/// Non-diffracting Landau mode at the magnetic waist. Throws ResolutionError
/// if waist < 4 * spacing.
ComplexField sample_landau(ModeIndex idx, double waist, const TransverseGrid& grid);

/// Field-free Laguerre-Gauss mode at axial position z (carrier e^{ikz}
/// omitted): waist w(z), curvature phase k r^2 / 2R(z), Gouy phase
/// (2n + |l| + 1) zeta(z). Coincides with sample_landau at z = 0.
ComplexField sample_diffracting_lg(ModeIndex idx, const DiffractingBeamParams& params, double z,
                                   const TransverseGrid& grid);

/// Hermite-Gauss mode HG_{m,n}(x, y), same waist convention as LG.
ComplexField sample_hg(int m, int n, double waist, const TransverseGrid& grid);

/// sum conj(a) b spacing^2. Throws ShapeError for different grids.
Complex overlap(const ComplexField& a, const ComplexField& b);

/// c0 LG_{0,-1} + c1 LG_{0,+1}, renormalised by quadrature.
ComplexField synthesize_qubit_field(const QubitState& state, double waist,
                                    const TransverseGrid& grid);

/// Evaluates every Landau mode with n <= n_max, |l| <= l_max at one point.
/// Shares the radial recurrences between modes; used by the spectral
/// decomposition.
class LandauBasisEvaluator {
 public:
  LandauBasisEvaluator(double waist, int n_max, int l_max);

  int n_max() const noexcept { return n_max_; }
  int l_max() const noexcept { return l_max_; }
  std::size_t mode_count() const noexcept { return modes_.size(); }
  /// Mode order used by evaluate(): n outer, l = -l_max..l_max inner.
  const std::vector<ModeIndex>& modes() const noexcept { return modes_; }

  /// Writes mode_count() values into `out`.
  void evaluate(double x, double y, std::span<Complex> out) const;

 private:
  double waist_;
  int n_max_;
  int l_max_;
  std::vector<ModeIndex> modes_;
  std::vector<double> norms_;  // [n][|l|]
};

/// Bilinear resampling of a row-major N x N image (same layout as
/// ComplexField) rotated counter-clockwise about the grid centre by `angle`.
/// Points that map outside the grid read as zero.
std::vector<double> rotate_image(std::span<const double> image, int samples_per_side, double angle);

/// Root-mean-square difference of two equally sized images.
double rms_difference(std::span<const double> a, std::span<const double> b);

}  // namespace oamq
