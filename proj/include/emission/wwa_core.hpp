#pragma once

// Dimensionless conventions used throughout the library:
//   time          tau = gamma * t            (gamma = amplitude decay rate)
//   detuning      delta = (omega_k - omega0) / gamma
//   position      x = omega0 * R / c
//   energy        units of hbar * omega0
//   angular mom.  units of hbar
//   energy density  w * c / (hbar * omega0 * gamma)

#include <complex>
#include <map>
#include <vector>

#include "emission/half_integer.hpp"
#include "emission/transition.hpp"

namespace emission {

/// Excited-sublevel amplitudes c_{mH}(0), normalized to 1 within 1e-12.
class InitialState {
 public:
  /// Throws ConfigError for projections not admitted by H, an empty map or
  /// a norm differing from 1 by more than 1e-12.
  static InitialState make(HalfIntegerJ H, std::map<HalfInteger, std::complex<double>> amplitudes);
  /// All population in sublevel mH.
  static InitialState basis(HalfIntegerJ H, HalfInteger mH);

  HalfIntegerJ H() const { return H_; }
  const std::map<HalfInteger, std::complex<double>>& amplitudes() const { return amplitudes_; }
  /// c_{mH}(0); zero for sublevels not present.
  std::complex<double> amplitude(HalfInteger mH) const;
  /// M0 = sum_m m |c_m(0)|^2.
  double population_moment() const;

 private:
  HalfIntegerJ H_;
  std::map<HalfInteger, std::complex<double>> amplitudes_;
};

/// Frequency-integration prescription. Pure extends the Lorentzian to
/// (-inf, inf); Modified keeps only delta in [-lower, upper].
struct WWAScheme {
  enum class Variant { Pure, Modified };
  Variant variant = Variant::Pure;
  double lower_cutoff_in_gamma = 1000.0;
  double upper_cutoff_in_gamma = 1000.0;

  static WWAScheme pure() { return {}; }
  /// Throws ConfigError for non-positive cutoffs.
  static WWAScheme modified(double lower = 1000.0, double upper = 1000.0);
  bool is_pure() const { return variant == Variant::Pure; }
  /// Checks the cutoffs against the transition (lower <= omega0/gamma).
  void validate(double omega0_over_gamma) const;
  const char* name() const { return is_pure() ? "pure" : "modified"; }
};

/// gamma = omega0^3 |mu|^2 / (6 (2H+1) pi eps0 hbar c^3) with eps0 = hbar =
/// c = 1. Throws ConfigError for omega0 <= 0 or mu_sq < 0.
double decay_rate_gamma(double mu_sq, double omega0, HalfIntegerJ H);

/// c_{mH}(0) e^{-tau}. Throws ConfigError for tau < 0.
std::complex<double> excited_amplitude(const InitialState& state, HalfInteger mH, double tau);

/// [e^{-i delta tau} - e^{-tau}] / (1 - i delta): the frequency factor shared
/// by every photon amplitude.
std::complex<double> photon_amplitude_kernel(double delta, double tau);

/// |kernel|^2 = [1 + e^{-2 tau} - 2 cos(delta tau) e^{-tau}] / (1 + delta^2).
double kernel_norm_sq(double delta, double tau);

/// Closed form of the integral of |kernel|^2 over the real line:
/// pi (1 - e^{-2 tau}).
double wwa_line_integral(double tau);

struct LineIntegralQuadrature {
  double truncated = 0.0;  // adaptive quadrature over [-W, W]
  double tail = 0.0;       // (1 + e^{-2 tau}) (pi - 2 atan W)
  double total = 0.0;      // truncated + tail
  double abs_error = 0.0;
};

/// Numerical counterpart of wwa_line_integral over [-half_width, half_width]
/// plus the analytic non-oscillatory tail; the oscillatory tail is
/// O(1 / (W^2 tau)) and omitted.
LineIntegralQuadrature wwa_line_integral_quadrature(double tau, double half_width = 1e4);

/// Frequency moments of |kernel|^2 under a scheme:
///   weight    = integral |K|^2 d delta
///   first     = integral delta |K|^2 d delta
/// Pure uses closed forms (first = 0 by evenness); Modified integrates
/// numerically over [-lower, upper].
struct LineMoments {
  double weight = 0.0;
  double first = 0.0;
};
LineMoments scheme_line_moments(double tau, const WWAScheme& scheme);

}  // namespace emission
