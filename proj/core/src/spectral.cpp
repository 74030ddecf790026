#include "oamq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "oamq/errors.hpp"
#include "oamq/physics.hpp"
#include "oamq/special_functions.hpp"

namespace oamq {
namespace {

constexpr double kMatchingTolerance = 0.01;
constexpr double kEmptySubspaceThreshold = 1e-9;

bool within(ModeIndex idx, TruncationCutoffs c) {
  return idx.n >= 0 && idx.n <= c.n_max && std::abs(idx.l) <= c.l_max;
}

}  // namespace

ModeExpansion::ModeExpansion(double waist, TruncationCutoffs cutoffs)
    : waist_(waist), cutoffs_(cutoffs) {
  if (!(waist > 0)) throw DomainError("expansion waist must be positive");
  if (cutoffs.n_max < 0 || cutoffs.l_max < 0) throw DomainError("cutoffs must be non-negative");
  if (cutoffs.n_max > kMaxPolynomialDegree || cutoffs.l_max > kMaxPolynomialDegree) {
    throw UnsupportedRangeError("cutoffs exceed the supported envelope");
  }
}

Complex ModeExpansion::coefficient(ModeIndex idx) const {
  if (!within(idx, cutoffs_)) {
    throw DomainError(fmt::format("mode ({}, {}) is outside the truncation", idx.n, idx.l));
  }
  const auto it = coefficients_.find(idx);
  return it == coefficients_.end() ? Complex{0.0} : it->second;
}

void ModeExpansion::set_coefficient(ModeIndex idx, Complex value) {
  if (!within(idx, cutoffs_)) {
    throw DomainError(fmt::format("mode ({}, {}) is outside the truncation", idx.n, idx.l));
  }
  coefficients_[idx] = value;
}

double ModeExpansion::captured_power() const {
  double acc = 0.0;
  for (const auto& [idx, c] : coefficients_) acc += std::norm(c);
  return acc;
}

ModeExpansion decompose(const ComplexField& field, double waist, TruncationCutoffs cutoffs) {
  const auto& grid = field.grid();
  check_resolution(waist, grid);
  const LandauBasisEvaluator basis(waist, cutoffs.n_max, cutoffs.l_max);

  std::vector<Complex> sums(basis.mode_count(), Complex{0.0});
  std::vector<Complex> modes(basis.mode_count());
  const int n = grid.samples_per_side();
  const auto values = field.amplitudes();
  for (int iy = 0; iy < n; ++iy) {
    const double y = grid.coordinate(iy);
    for (int ix = 0; ix < n; ++ix) {
      const Complex f = values[static_cast<std::size_t>(iy) * n + ix];
      if (f == Complex{0.0}) continue;
      basis.evaluate(grid.coordinate(ix), y, modes);
      for (std::size_t m = 0; m < modes.size(); ++m) sums[m] += std::conj(modes[m]) * f;
    }
  }

  const double area = grid.spacing() * grid.spacing();
  ModeExpansion out(waist, cutoffs);
  for (std::size_t m = 0; m < sums.size(); ++m) {
    sums[m] *= area;
    out.set_coefficient(basis.modes()[m], sums[m]);
  }

  // Second pass: what the truncated expansion leaves behind, measured directly.
  double residual = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    const double y = grid.coordinate(iy);
    for (int ix = 0; ix < n; ++ix) {
      basis.evaluate(grid.coordinate(ix), y, modes);
      Complex approx{0.0};
      for (std::size_t m = 0; m < modes.size(); ++m) approx += sums[m] * modes[m];
      residual += std::norm(values[static_cast<std::size_t>(iy) * n + ix] - approx);
    }
  }
  out.set_residual_norm(std::sqrt(residual * area));
  return out;
}

ModeExpansion evolve(const ModeExpansion& expansion, const BeamEnvironment& env, double t) {
  const double omega = env.require_larmor_omega();
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("evolution time must be non-negative");
  const double matched = matching_field(expansion.waist());
  const double field = std::abs(env.b_field());
  if (std::abs(matched - field) > kMatchingTolerance * field) {
    throw MatchingError(fmt::format(
        "expansion waist {:.6g} m needs B = {:.6g} T, beam has {:.6g} T (tolerance 1%)",
        expansion.waist(), matched, field));
  }

  ModeExpansion out(expansion.waist(), expansion.cutoffs());
  for (const auto& [idx, c] : expansion.coefficients()) {
    const double level = idx.l + 2.0 * idx.n + std::abs(idx.l) + 1.0;
    out.set_coefficient(idx, c * std::polar(1.0, omega * level * t));
  }
  out.set_residual_norm(expansion.residual_norm());
  return out;
}

ComplexField synthesize(const ModeExpansion& expansion, const TransverseGrid& grid) {
  check_resolution(expansion.waist(), grid);
  const auto cut = expansion.cutoffs();
  const LandauBasisEvaluator basis(expansion.waist(), cut.n_max, cut.l_max);

  std::vector<Complex> weights(basis.mode_count(), Complex{0.0});
  for (std::size_t m = 0; m < weights.size(); ++m) {
    weights[m] = expansion.coefficient(basis.modes()[m]);
  }

  const int n = grid.samples_per_side();
  std::vector<Complex> values(grid.size());
  std::vector<Complex> modes(basis.mode_count());
  for (int iy = 0; iy < n; ++iy) {
    const double y = grid.coordinate(iy);
    for (int ix = 0; ix < n; ++ix) {
      basis.evaluate(grid.coordinate(ix), y, modes);
      Complex acc{0.0};
      for (std::size_t m = 0; m < modes.size(); ++m) acc += weights[m] * modes[m];
      values[static_cast<std::size_t>(iy) * n + ix] = acc;
    }
  }
  return ComplexField(grid, std::move(values));
}

double qubit_leakage(const ModeExpansion& expansion) {
  double outside = expansion.residual_norm() * expansion.residual_norm();
  for (const auto& [idx, c] : expansion.coefficients()) {
    if (idx.n == 0 && std::abs(idx.l) == 1) continue;
    outside += std::norm(c);
  }
  return std::sqrt(outside);
}

QubitProjection project_to_qubit(const ModeExpansion& expansion) {
  if (expansion.cutoffs().l_max < 1) {
    throw EmptySubspaceError("truncation excludes the qubit modes (l_max < 1)");
  }
  const Complex c0 = expansion.coefficient({0, -1});
  const Complex c1 = expansion.coefficient({0, 1});
  const double weight = std::sqrt(std::norm(c0) + std::norm(c1));
  const double leakage = qubit_leakage(expansion);
  if (std::abs(c0) < kEmptySubspaceThreshold && std::abs(c1) < kEmptySubspaceThreshold) {
    throw EmptySubspaceError(
        fmt::format("no weight in the qubit subspace (leakage {:.6g})", leakage));
  }
  return {QubitState::from_amplitudes(c0 / weight, c1 / weight, 1e-9), leakage};
}

void write_expansion(std::ostream& out, const ModeExpansion& expansion) {
  const auto cut = expansion.cutoffs();
  out << fmt::format("# waist_m={:.17g} n_max={} l_max={}\n", expansion.waist(), cut.n_max,
                     cut.l_max);
  for (const auto& [idx, c] : expansion.coefficients()) {
    out << fmt::format("{} {} {:.17g} {:.17g}\n", idx.n, idx.l, c.real(), c.imag());
  }
}

void write_expansion(const std::filesystem::path& path, const ModeExpansion& expansion) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_expansion(out, expansion);
}

ModeExpansion read_expansion(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("expansion table is empty");
  double waist = 0;
  TruncationCutoffs cut;
  if (std::sscanf(header.c_str(), "# waist_m=%lf n_max=%d l_max=%d", &waist, &cut.n_max,
                  &cut.l_max) != 3) {
    throw FormatError("expansion table header malformed: " + header);
  }
  ModeExpansion out(waist, cut);
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    ModeIndex idx;
    double re = 0;
    double im = 0;
    if (!(row >> idx.n >> idx.l >> re >> im)) {
      throw FormatError(fmt::format("expansion table line {} malformed", line_no));
    }
    out.set_coefficient(idx, {re, im});
  }
  return out;
}

DriftOracleResult compare_drift_with_propagator(const QubitState& state, const BeamEnvironment& env,
                                                double t, const TransverseGrid& grid,
                                                TruncationCutoffs cutoffs) {
  const double waist = env.require_magnetic_waist();
  DriftOracleResult result;
  result.analytic = apply(drift_gate(env, t), state);

  const auto field = synthesize_qubit_field(state, waist, grid);
  const auto projection = project_to_qubit(evolve(decompose(field, waist, cutoffs), env, t));
  result.propagated = projection.state;
  result.leakage = projection.leakage;
  result.fidelity = fidelity(result.analytic, result.propagated);
  return result;
}

}  // namespace oamq
