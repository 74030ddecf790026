#include "oamq/physics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "oamq/errors.hpp"

namespace oamq {

double BeamEnvironment::require_larmor_omega() const {
  if (!larmor_omega_) throw DomainError("Larmor frequency undefined: axial field is zero");
  return *larmor_omega_;
}

double BeamEnvironment::require_larmor_period() const {
  if (!larmor_period_) throw DomainError("Larmor period undefined: axial field is zero");
  return *larmor_period_;
}

double BeamEnvironment::require_magnetic_waist() const {
  if (!magnetic_waist_) throw DomainError("magnetic waist undefined: axial field is zero");
  return *magnetic_waist_;
}

BeamEnvironment derive_beam(ElectronVolts kinetic_energy, Tesla b_field, MassModel mass_model) {
  const auto& c = kConstants;
  if (!(kinetic_energy.value > 0) || !std::isfinite(kinetic_energy.value)) {
    throw DomainError("kinetic energy must be positive, got " +
                      std::to_string(kinetic_energy.value) + " eV");
  }
  if (!std::isfinite(b_field.value)) throw DomainError("axial field must be finite");

  BeamEnvironment env;
  env.kinetic_energy_ev_ = kinetic_energy.value;
  env.kinetic_energy_j_ = kinetic_energy.value * c.elementary_charge;
  env.b_field_ = b_field.value;
  env.mass_model_ = mass_model;

  const double rest_energy = c.electron_mass * c.speed_of_light * c.speed_of_light;
  env.gamma_ = 1.0 + env.kinetic_energy_j_ / rest_energy;

  if (mass_model == MassModel::relativistic) {
    const double beta = std::sqrt(1.0 - 1.0 / (env.gamma_ * env.gamma_));
    env.effective_mass_ = env.gamma_ * c.electron_mass;
    env.speed_ = beta * c.speed_of_light;
  } else {
    env.effective_mass_ = c.electron_mass;
    env.speed_ = std::sqrt(2.0 * env.kinetic_energy_j_ / c.electron_mass);
  }
  env.wavenumber_ = env.effective_mass_ * env.speed_ / c.hbar;

  if (b_field.value != 0.0) {
    const double eb = std::abs(c.elementary_charge * b_field.value);
    const double omega = eb / (2.0 * env.effective_mass_);
    env.larmor_omega_ = omega;
    env.larmor_period_ = 2.0 * kPi / omega;
    env.magnetic_waist_ = std::sqrt(4.0 * c.hbar / eb);
    env.oscillation_length_ = 2.0 * kPi * env.speed_ / (2.0 * omega);
  }
  return env;
}

double magnetic_waist(Tesla b_field) {
  if (b_field.value == 0.0 || !std::isfinite(b_field.value)) {
    throw DomainError("magnetic waist requires a finite non-zero field");
  }
  return std::sqrt(4.0 * kConstants.hbar / std::abs(kConstants.elementary_charge * b_field.value));
}

double matching_field(double waist) {
  if (!(waist > 0) || !std::isfinite(waist)) {
    throw DomainError("matching field requires a positive waist");
  }
  return 4.0 * kConstants.hbar / (kConstants.elementary_charge * waist * waist);
}

double max_nonadiabatic_switch_time(const BeamEnvironment& env) {
  return kPi / env.require_larmor_omega();
}

bool is_nonadiabatic_switch(double duration, const BeamEnvironment& env) {
  return duration < max_nonadiabatic_switch_time(env);
}

double landau_energy(int n, int l, const BeamEnvironment& env, double k) {
  if (n < 0) throw DomainError("radial index must be non-negative, got " + std::to_string(n));
  const double hbar = kConstants.hbar;
  const double kinetic = hbar * hbar * k * k / (2.0 * env.effective_mass());
  const double omega = env.larmor_omega().value_or(0.0);
  const int quanta = l + 2 * n + std::abs(l) + 1;
  return kinetic + hbar * omega * quanta;
}

double drift_time_for_phase(double relative_phase, const BeamEnvironment& env) {
  return relative_phase / (2.0 * env.require_larmor_omega());
}

double drift_length(double t, const BeamEnvironment& env) {
  env.require_larmor_omega();
  return env.speed() * t;
}

DiffractingBeamParams::DiffractingBeamParams(double waist, double wavenumber)
    : waist_(waist), wavenumber_(wavenumber), rayleigh_length_(wavenumber * waist * waist / 2.0) {
  if (!(waist > 0) || !(wavenumber > 0)) {
    throw DomainError("diffracting beam needs positive waist and wavenumber");
  }
}

double DiffractingBeamParams::waist_at(double z) const {
  const double q = z / rayleigh_length_;
  return waist_ * std::sqrt(1.0 + q * q);
}

std::optional<double> DiffractingBeamParams::curvature_at(double z) const {
  if (z == 0.0) return std::nullopt;
  const double q = rayleigh_length_ / z;
  return z * (1.0 + q * q);
}

double DiffractingBeamParams::gouy_at(double z) const {
  return std::atan(z / rayleigh_length_);
}

}  // namespace oamq
