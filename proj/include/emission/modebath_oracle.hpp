#pragma once

// Discrete-mode oracle: one excited amplitude c_e coupled to n photon modes at
// detunings delta_j (in units of gamma), integrated without the WWA.

#include <cstddef>
#include <vector>

namespace emission {

enum class SpectralProfile { Flat, Cubic };

const char* spectral_profile_name(SpectralProfile profile);

struct ModeGridSpec {
  std::size_t n_modes = 4000;
  double half_span_in_gamma = 200.0;
  SpectralProfile profile = SpectralProfile::Flat;
  double ratio = 1e6;  // omega0 / gamma

  /// Throws ConfigError unless n_modes >= 100, half_span >= 50, the spacing
  /// 2S/n is at most 0.2 and ratio > half_span.
  static ModeGridSpec make(std::size_t n_modes, double half_span_in_gamma,
                           SpectralProfile profile, double ratio);

  double spacing() const { return 2.0 * half_span_in_gamma / static_cast<double>(n_modes); }
  /// delta_j = -S + (j + 1/2) * spacing.
  double detuning(std::size_t j) const;
  /// g_j = sqrt(w(delta_j) * spacing / pi); w = 1 (Flat) or (1 + delta/ratio)^3.
  double coupling(std::size_t j) const;
  /// Recurrence time 2 pi / spacing.
  double recurrence_time() const;
};

struct DecayTrajectory {
  ModeGridSpec grid;
  std::vector<double> times;
  std::vector<double> excited_pop;
  std::vector<double> field_energy;  // sum_j (1 + delta_j/ratio) |c_j|^2, hbar*omega0
  std::vector<double> detunings;
  std::vector<double> mode_pops;  // |c_j|^2 at the final time
  double norm_drift = 0.0;        // max |norm - 1| over all steps
};

/// Norm drift above which simulate() aborts.
inline constexpr double kMaxNormDrift = 1e-8;

/// Largest phase delta * h swept by the fastest mode in one RK4 step. RK4
/// norm drift per step scales as (S h)^5; at S h = 1/8 a tau = 5 run stays
/// near 3e-9.
inline constexpr double kMaxPhasePerStep = 0.125;

/// Fixed-step RK4 in the interaction picture:
///   dc_e/dtau = -i sum_j g_j e^{-i delta_j tau} c_j,
///   dc_j/dtau = -i g_j e^{i delta_j tau} c_e,
/// from c_e = 1. Samples are recorded every dt; each sample interval is cut
/// into equal RK4 steps with S h <= kMaxPhasePerStep. Throws ConfigError when
/// dt <= 0, tau_end is outside [0, 10] or tau_end >= 2 pi / spacing, and
/// ConvergenceError when the norm drifts by more than kMaxNormDrift.
DecayTrajectory simulate(const ModeGridSpec& grid, double tau_end, double dt);

/// Least-squares slope of ln|c_e|^2 over tau in [0.5, 3], divided by -2.
/// Throws ConfigError when the trajectory does not cover the window and
/// ConvergenceError when the population is not monotonic there.
double fitted_decay_rate(const DecayTrajectory& traj);

struct LorentzianFit {
  double center = 0.0;
  double width = 0.0;  // half-width at half maximum, gamma units
  double amplitude = 0.0;
  double max_rel_dev = 0.0;  // over |delta| <= 10
};

/// Fits the final mode populations to A / (1 + ((delta - delta0) / w)^2) on
/// |delta| <= 10. Throws ConfigError when the trajectory ends before tau = 5
/// and ConvergenceError when the fit degenerates.
LorentzianFit spectrum_lorentzian_check(const DecayTrajectory& traj);

}  // namespace emission
