#include "oamq/mode_fields.hpp"

#include <cmath>
#include <fmt/format.h>

#include "oamq/errors.hpp"
#include "oamq/physics.hpp"
#include "oamq/special_functions.hpp"

namespace oamq {
namespace {

constexpr double kMinSamplesPerWaist = 4.0;

void check_index(ModeIndex idx) {
  if (idx.n < 0) throw DomainError(fmt::format("radial index must be non-negative, got {}", idx.n));
}

double quadrature_norm(std::span<const Complex> values, double spacing) {
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v);
  return std::sqrt(acc) * spacing;
}

Complex lg_profile(ModeIndex idx, double waist, double norm, double x, double y) {
  const int a = std::abs(idx.l);
  const double r2 = x * x + y * y;
  const double s = 2.0 * r2 / (waist * waist);
  const double radial =
      norm * std::pow(std::sqrt(s), a) * laguerre(idx.n, a, s) * std::exp(-r2 / (waist * waist));
  const double phase = idx.l * std::atan2(y, x);
  return {radial * std::cos(phase), radial * std::sin(phase)};
}

template <typename F>
ComplexField sample(const TransverseGrid& grid, F&& value_at) {
  const int n = grid.samples_per_side();
  std::vector<Complex> values(grid.size());
  for (int iy = 0; iy < n; ++iy) {
    const double y = grid.coordinate(iy);
    for (int ix = 0; ix < n; ++ix) {
      values[static_cast<std::size_t>(iy) * n + ix] = value_at(grid.coordinate(ix), y);
    }
  }
  return ComplexField(grid, std::move(values));
}

}  // namespace

void check_resolution(double waist, const TransverseGrid& grid) {
  if (!(waist > 0)) throw DomainError("mode waist must be positive");
  if (waist < kMinSamplesPerWaist * grid.spacing()) {
    throw ResolutionError(fmt::format(
        "grid too coarse: waist {:.6g} m is below {} samples (spacing {:.6g} m)", waist,
        kMinSamplesPerWaist, grid.spacing()));
  }
}

TransverseGrid::TransverseGrid(int samples_per_side, double half_extent)
    : samples_(samples_per_side),
      half_extent_(half_extent),
      spacing_(2.0 * half_extent / samples_per_side) {
  if (samples_per_side < 1) throw DomainError("grid needs at least one sample per side");
  if (!(half_extent > 0) || !std::isfinite(half_extent)) {
    throw DomainError("grid half-extent must be positive");
  }
}

TransverseGrid default_grid(double waist) {
  return TransverseGrid(kDefaultSamplesPerSide, kDefaultHalfExtentInWaists * waist);
}

ComplexField::ComplexField(TransverseGrid grid, std::vector<Complex> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != grid_.size()) {
    throw ShapeError(fmt::format("field has {} samples, grid expects {}", amplitudes_.size(),
                                 grid_.size()));
  }
  norm_ = quadrature_norm(amplitudes_, grid_.spacing());
}

ComplexField::ComplexField(TransverseGrid grid)
    : grid_(grid), amplitudes_(grid.size(), Complex{0.0}) {}

ComplexField ComplexField::normalized() const {
  if (norm_ == 0.0) throw DomainError("cannot normalise an all-zero field");
  ComplexField out = *this;
  out *= Complex{1.0 / norm_};
  return out;
}

std::vector<double> ComplexField::intensity() const {
  std::vector<double> out(amplitudes_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(amplitudes_[i]);
  return out;
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  if (!(grid_ == other.grid_)) throw ShapeError("cannot add fields sampled on different grids");
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] += other.amplitudes_[i];
  norm_ = quadrature_norm(amplitudes_, grid_.spacing());
  return *this;
}

ComplexField& ComplexField::operator*=(Complex factor) {
  for (auto& a : amplitudes_) a *= factor;
  norm_ = quadrature_norm(amplitudes_, grid_.spacing());
  return *this;
}

ComplexField operator+(ComplexField a, const ComplexField& b) {
  a += b;
  return a;
}

ComplexField operator*(Complex factor, ComplexField f) {
  f *= factor;
  return f;
}

Complex landau_value(ModeIndex idx, double waist, double x, double y) {
  return lg_profile(idx, waist, lg_norm(idx.n, idx.l, waist), x, y);
}

ComplexField sample_landau(ModeIndex idx, double waist, const TransverseGrid& grid) {
  check_index(idx);
  check_resolution(waist, grid);
  const double norm = lg_norm(idx.n, idx.l, waist);
  return sample(grid, [&](double x, double y) { return lg_profile(idx, waist, norm, x, y); });
}

ComplexField sample_diffracting_lg(ModeIndex idx, const DiffractingBeamParams& params, double z,
                                   const TransverseGrid& grid) {
  check_index(idx);
  const double w = params.waist_at(z);
  check_resolution(w, grid);
  const double norm = lg_norm(idx.n, idx.l, w);
  if (z == 0.0) {
    return sample(grid, [&](double x, double y) { return lg_profile(idx, w, norm, x, y); });
  }
  const double k = params.wavenumber();
  const double inv_two_r = 1.0 / (2.0 * *params.curvature_at(z));
  const double gouy = (2.0 * idx.n + std::abs(idx.l) + 1.0) * params.gouy_at(z);
  return sample(grid, [&](double x, double y) {
    const double r2 = x * x + y * y;
    return lg_profile(idx, w, norm, x, y) * std::polar(1.0, k * r2 * inv_two_r + gouy);
  });
}

ComplexField sample_hg(int m, int n, double waist, const TransverseGrid& grid) {
  if (m < 0 || n < 0) throw DomainError("Hermite-Gauss indices must be non-negative");
  check_resolution(waist, grid);
  const double norm = hg_norm(m, waist) * hg_norm(n, waist);
  const double scale = std::sqrt(2.0) / waist;
  return sample(grid, [&](double x, double y) {
    const double r2 = x * x + y * y;
    return Complex{norm * hermite(m, scale * x) * hermite(n, scale * y) *
                   std::exp(-r2 / (waist * waist))};
  });
}

Complex overlap(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) throw ShapeError("overlap of fields on different grids");
  const auto va = a.amplitudes();
  const auto vb = b.amplitudes();
  Complex acc{0.0};
  for (std::size_t i = 0; i < va.size(); ++i) acc += std::conj(va[i]) * vb[i];
  const double h = a.grid().spacing();
  return acc * (h * h);
}

ComplexField synthesize_qubit_field(const QubitState& state, double waist,
                                    const TransverseGrid& grid) {
  check_resolution(waist, grid);
  const Complex c0 = state.c0();
  const Complex c1 = state.c1();
  const double norm = lg_norm(0, 1, waist);
  auto field = sample(grid, [&](double x, double y) {
    return c0 * lg_profile({0, -1}, waist, norm, x, y) + c1 * lg_profile({0, 1}, waist, norm, x, y);
  });
  return field.normalized();
}

LandauBasisEvaluator::LandauBasisEvaluator(double waist, int n_max, int l_max)
    : waist_(waist), n_max_(n_max), l_max_(l_max) {
  if (!(waist > 0)) throw DomainError("basis waist must be positive");
  if (n_max < 0 || l_max < 0) throw DomainError("basis cutoffs must be non-negative");
  if (n_max > kMaxPolynomialDegree || l_max > kMaxPolynomialDegree) {
    throw UnsupportedRangeError("basis cutoffs exceed the supported envelope");
  }
  for (int n = 0; n <= n_max; ++n) {
    for (int l = -l_max; l <= l_max; ++l) modes_.push_back({n, l});
    for (int a = 0; a <= l_max; ++a) norms_.push_back(lg_norm(n, a, waist));
  }
}

void LandauBasisEvaluator::evaluate(double x, double y, std::span<Complex> out) const {
  const double r2 = x * x + y * y;
  const double w2 = waist_ * waist_;
  const double s = 2.0 * r2 / w2;
  const double gauss = std::exp(-r2 / w2);
  const double rho = std::sqrt(s);
  const double r = std::sqrt(r2);
  const Complex unit = r > 0.0 ? Complex{x / r, y / r} : Complex{1.0};

  const auto width = static_cast<std::size_t>(l_max_ + 1);
  const auto span_l = static_cast<std::size_t>(2 * l_max_ + 1);

  // radial[n * width + a], then spread over +-a with unit^l.
  thread_local std::vector<double> radial;
  thread_local std::vector<Complex> powers;
  radial.assign(static_cast<std::size_t>(n_max_ + 1) * width, 0.0);
  powers.assign(width, Complex{1.0});
  for (std::size_t a = 1; a < width; ++a) powers[a] = powers[a - 1] * unit;

  double rho_pow = 1.0;
  for (int a = 0; a <= l_max_; ++a) {
    const double envelope = rho_pow * gauss;
    double prev = 1.0;
    double cur = 1.0 + a - s;
    for (int n = 0; n <= n_max_; ++n) {
      double lag;
      if (n == 0) {
        lag = prev;
      } else if (n == 1) {
        lag = cur;
      } else {
        const double next = ((2.0 * n - 1.0 + a - s) * cur - (n - 1.0 + a) * prev) / n;
        prev = cur;
        cur = next;
        lag = cur;
      }
      const std::size_t slot = static_cast<std::size_t>(n) * width + static_cast<std::size_t>(a);
      radial[slot] = norms_[slot] * envelope * lag;
    }
    rho_pow *= rho;
  }

  for (int n = 0; n <= n_max_; ++n) {
    const std::size_t base = static_cast<std::size_t>(n) * span_l;
    for (int l = -l_max_; l <= l_max_; ++l) {
      const auto a = static_cast<std::size_t>(std::abs(l));
      const double value = radial[static_cast<std::size_t>(n) * width + a];
      const Complex phase = l >= 0 ? powers[a] : std::conj(powers[a]);
      out[base + static_cast<std::size_t>(l + l_max_)] = value * phase;
    }
  }
}

std::vector<double> rotate_image(std::span<const double> image, int samples_per_side,
                                 double angle) {
  const int n = samples_per_side;
  if (image.size() != static_cast<std::size_t>(n) * n) {
    throw ShapeError("rotate_image: image size does not match samples_per_side");
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double centre = 0.5 * n;
  auto pixel = [&](int ix, int iy) -> double {
    if (ix < 0 || iy < 0 || ix >= n || iy >= n) return 0.0;
    return image[static_cast<std::size_t>(iy) * n + ix];
  };

  std::vector<double> out(image.size());
  for (int iy = 0; iy < n; ++iy) {
    const double y = iy + 0.5 - centre;
    for (int ix = 0; ix < n; ++ix) {
      const double x = ix + 0.5 - centre;
      // Inverse rotation finds where this pixel came from.
      const double fx = c * x + s * y + centre - 0.5;
      const double fy = -s * x + c * y + centre - 0.5;
      const int x0 = static_cast<int>(std::floor(fx));
      const int y0 = static_cast<int>(std::floor(fy));
      const double tx = fx - x0;
      const double ty = fy - y0;
      out[static_cast<std::size_t>(iy) * n + ix] =
          (1 - tx) * (1 - ty) * pixel(x0, y0) + tx * (1 - ty) * pixel(x0 + 1, y0) +
          (1 - tx) * ty * pixel(x0, y0 + 1) + tx * ty * pixel(x0 + 1, y0 + 1);
    }
  }
  return out;
}

double rms_difference(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("rms_difference: size mismatch");
  if (a.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace oamq
