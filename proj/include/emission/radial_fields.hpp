#pragma once

// Radial energy density of the H=1 -> G=0, mH=0 emitter. Densities are in
// units of hbar*omega0*gamma/c, positions in x = omega0 R / c and times in
// tau = gamma t. `ratio` is omega0 / gamma.

#include <complex>
#include <string>
#include <vector>

#include "emission/wwa_core.hpp"

namespace emission {

/// j_alpha(x) for alpha in {0,1,2}, x >= 0. Closed forms, power series
/// below x = 0.5. Throws ConfigError otherwise.
double spherical_bessel(int alpha, double x);

/// y_alpha(x) for alpha in {0,1,2}, x > 0.
double spherical_neumann(int alpha, double x);

/// Above this x, q_alpha switches to the spherical-Hankel prescription.
inline constexpr double kHankelThreshold = 100.0;

/// Q_alpha = int d delta [e^{-i delta tau} - e^{-tau}] / (1 - i delta)
///           * j_alpha(x (1 + delta/ratio)).
/// Modified: delta in [-lower, upper]. Pure: delta in [-1e4, 1e4] plus a tail
/// estimate with j frozen at j_alpha(x). For x > 100 the Bessel function is
/// split into Hankel functions with amplitudes frozen at x and phases kept.
/// Throws ConvergenceError when the frequency quadrature fails.
std::complex<double> q_alpha(int alpha, double x, double tau, const WWAScheme& scheme,
                             double ratio);

/// Closed small-x form (x^2/3) e^{-2 tau} [2 j0^2 + 3 j1^2 + j2^2]. Small-x
/// limit (2 x^2 / 3) e^{-2 tau}. Valid for x <= 100.
double energy_density_wwa(double x, double tau);

/// (x^2 / 3 pi^2) [2 |Q0|^2 + 3 |Q1|^2 + |Q2|^2] from q_alpha.
double energy_density_quadrature(double x, double tau, const WWAScheme& scheme, double ratio);

/// 2 e^{-2 (tau - x/ratio)} Theta(tau - x/ratio); Theta(0) = 1.
double energy_density_farfield(double x, double tau, double ratio);

/// Classical dipole with W0 = hbar omega0:
/// far field times (1 + x^-2 + 1.5 x^-4). Throws DomainError for x <= 0.
double energy_density_classical(double x, double tau, double ratio);

/// W_f = (1/ratio) int dx w(x) over x up to ratio (tau + 10), in hbar*omega0.
/// Beyond x = 100 the density is averaged over its optical-cycle oscillation.
double total_field_energy_from_density(double tau, const WWAScheme& scheme, double ratio);

enum class DensityMethod { ClosedSmallX, QuadratureQ, FarField, Classical };

const char* density_method_name(DensityMethod method);

struct RadialPoint {
  double x = 0.0;
  double w = 0.0;
};

struct RadialProfile {
  double tau = 0.0;
  WWAScheme scheme;
  DensityMethod method = DensityMethod::QuadratureQ;
  std::vector<RadialPoint> points;
  std::vector<std::string> warnings;
};

/// Sorted, de-duplicated grid with the two points ratio*tau*(1 -+ 1e-3)
/// straddling the retardation front added.
std::vector<double> grid_with_front(std::vector<double> xs, double tau, double ratio);

/// Evaluates one method over a strictly increasing x grid, in parallel over
/// points (thread count from EMISSION_THREADS, default hardware concurrency).
/// ClosedSmallX points beyond x = 100 and Classical points at x <= 0 are
/// skipped with a warning.
RadialProfile make_profile(DensityMethod method, const std::vector<double>& xs, double tau,
                           const WWAScheme& scheme, double ratio);

}  // namespace emission
