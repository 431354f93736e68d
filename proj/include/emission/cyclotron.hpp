#pragma once

// Charged particle in a uniform magnetic field, decaying from the first
// excited Landau-type level (angular momentum hbar) to the ground level.
// Units: eps0 = hbar = c = 1; tau = gamma_c t.

#include "emission/observables.hpp"

namespace emission {

struct CyclotronSpec {
  double q_charge = 1.0;
  double B_field = 1e-3;
  double mass = 1.0;

  /// Throws ConfigError for non-positive inputs or gamma_c / omega_c > 1e-3.
  static CyclotronSpec make(double q_charge, double B_field, double mass);

  double omega_c() const { return q_charge * B_field / mass; }
  /// Magnetic length sqrt(2 / (q B)).
  double a() const;
};

/// Largest gamma_c / omega_c accepted by CyclotronSpec::make.
inline constexpr double kMaxCyclotronWidthRatio = 1e-3;

/// Fraction of the initial angular momentum a classical radiating charge
/// hands to the field.
inline constexpr double kClassicalTransferFraction = 0.5;

/// gamma_c = q^2 omega_c^2 / (6 pi M).
double cyclotron_decay_rate(const CyclotronSpec& spec);

/// In hbar*omega_c above the ground level: charge e^{-2 tau}, field
/// 1 - e^{-2 tau}, interaction 0.
EnergyBreakdown cyclotron_energies(const CyclotronSpec& spec, double tau);

/// Closed form 1 - e^{-2 tau}, in hbar.
double cyclotron_field_angmom_z(const CyclotronSpec& spec, double tau);

struct CyclotronFieldIntegrals {
  double energy = 0.0;        // hbar*omega_c
  double angmom_z = 0.0;      // hbar, derivative form of the integrand
  double printed_line = 0.0;  // hbar, the expanded integrand read literally
};

/// The field energy and angular momentum by angular quadrature of the
/// photon amplitudes with couplings (a/2) cos(theta) e^{i phi} (theta) and
/// i (a/2) e^{i phi} (phi), times wwa_line_integral(tau). The expanded
/// integrand c_phi* [c_theta (cos^2 - sin^2) - i c_phi], read literally with
/// the full c_theta, yields -3/4 of the result; it is reported as
/// printed_line. Throws ConvergenceError when node
/// doubling moves a result by more than 1e-10.
CyclotronFieldIntegrals cyclotron_field_quadrature(const CyclotronSpec& spec, double tau);

/// kClassicalTransferFraction * (1 - e^{-2 tau}).
double cyclotron_classical_field_angmom_z(double tau);

}  // namespace emission
