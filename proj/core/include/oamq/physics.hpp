#pragma once

#include <optional>

#include "oamq/units.hpp"

namespace oamq {

/// CODATA 2018 values, SI.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;
  double elementary_charge = 1.602176634e-19;
  double electron_mass = 9.1093837015e-31;
  double speed_of_light = 299792458.0;
};

inline constexpr PhysicalConstants kConstants{};

inline constexpr double kPi = 3.14159265358979323846;

/// Whether the cyclotron dynamics use the rest mass or gamma times it.
enum class MassModel { relativistic, rest };

/// An electron beam of fixed kinetic energy in a uniform axial field, with
/// every derived kinematic and magnetic quantity precomputed.
///
/// Magnetic quantities (Larmor frequency, magnetic waist, ...) are empty when
/// the field is exactly zero; the `require_*` accessors throw DomainError in
/// that case.
class BeamEnvironment {
 public:
  double kinetic_energy_ev() const noexcept { return kinetic_energy_ev_; }
  double kinetic_energy() const noexcept { return kinetic_energy_j_; }
  double b_field() const noexcept { return b_field_; }
  MassModel mass_model() const noexcept { return mass_model_; }

  double gamma() const noexcept { return gamma_; }
  /// gamma * m for the relativistic model, m otherwise.
  double effective_mass() const noexcept { return effective_mass_; }
  double speed() const noexcept { return speed_; }
  double wavenumber() const noexcept { return wavenumber_; }

  bool has_field() const noexcept { return larmor_omega_.has_value(); }
  std::optional<double> larmor_omega() const noexcept { return larmor_omega_; }
  std::optional<double> larmor_period() const noexcept { return larmor_period_; }
  std::optional<double> magnetic_waist() const noexcept { return magnetic_waist_; }
  std::optional<double> oscillation_length() const noexcept { return oscillation_length_; }

  double require_larmor_omega() const;
  double require_larmor_period() const;
  double require_magnetic_waist() const;

 private:
  friend BeamEnvironment derive_beam(ElectronVolts, Tesla, MassModel);

  double kinetic_energy_ev_ = 0;
  double kinetic_energy_j_ = 0;
  double b_field_ = 0;
  MassModel mass_model_ = MassModel::relativistic;
  double gamma_ = 1;
  double effective_mass_ = 0;
  double speed_ = 0;
  double wavenumber_ = 0;
  std::optional<double> larmor_omega_;
  std::optional<double> larmor_period_;
  std::optional<double> magnetic_waist_;
  std::optional<double> oscillation_length_;
};

/// Throws DomainError for non-positive or non-finite energy.
BeamEnvironment derive_beam(ElectronVolts kinetic_energy, Tesla b_field,
                            MassModel mass_model = MassModel::relativistic);

/// sqrt(4 hbar / |e B|). Throws DomainError for B = 0.
double magnetic_waist(Tesla b_field);

/// Field (T, positive) whose magnetic waist equals `waist` (m).
double matching_field(double waist);

/// Longest switching time (s) that still counts as a sudden, non-adiabatic
/// change of the Hamiltonian: half a Larmor period.
double max_nonadiabatic_switch_time(const BeamEnvironment& env);

bool is_nonadiabatic_switch(double duration, const BeamEnvironment& env);

/// Energy (J) of the Landau state (n, l) with axial wavenumber k (1/m).
double landau_energy(int n, int l, const BeamEnvironment& env, double k);

/// Drift time (s) that builds up `relative_phase` (rad) between l = +1 and
/// l = -1. The relative phase advances at the cyclotron frequency 2*Omega_L.
double drift_time_for_phase(double relative_phase, const BeamEnvironment& env);

/// Axial distance (m) covered in time t.
double drift_length(double t, const BeamEnvironment& env);

/// Paraxial Gaussian-beam geometry of the field-free, diffracting modes.
class DiffractingBeamParams {
 public:
  /// Rayleigh length follows from z_R = k w0^2 / 2.
  DiffractingBeamParams(double waist, double wavenumber);

  double waist() const noexcept { return waist_; }
  double wavenumber() const noexcept { return wavenumber_; }
  double rayleigh_length() const noexcept { return rayleigh_length_; }

  double waist_at(double z) const;
  /// Wavefront radius of curvature; empty at z = 0 (flat wavefront).
  std::optional<double> curvature_at(double z) const;
  double gouy_at(double z) const;

 private:
  double waist_;
  double wavenumber_;
  double rayleigh_length_;
};

}  // namespace oamq
