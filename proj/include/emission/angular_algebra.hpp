#pragma once

#include <complex>

#include "emission/half_integer.hpp"
#include "emission/transition.hpp"

namespace emission {

/// Transverse polarizations of a mode with direction (theta_k, phi_k):
/// theta is the unit vector e_theta, phi is e_phi.
enum class Polarization { theta, phi };

inline constexpr Polarization kPolarizations[] = {Polarization::theta, Polarization::phi};

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention, from the Racah
/// closed sum. Returns 0 for M != m1 + m2, invalid projections, or a
/// triangle-violating (j1, j2, J). Accurate to ~1e-14 for j <= 20.
double clebsch_gordan(HalfIntegerJ j1, HalfInteger m1, HalfIntegerJ j2, HalfInteger m2,
                      HalfIntegerJ J, HalfInteger M);

/// Spherical component q in {-1, 0, 1} of the polarization vector:
///   theta: -sin(th) d_{q0} - cos(th)/sqrt2 (e^{i ph} d_{q1} - e^{-i ph} d_{q,-1})
///   phi:   -i/sqrt2 (e^{i ph} d_{q1} + e^{-i ph} d_{q,-1})
/// Throws ConfigError when |q| > 1.
std::complex<double> spherical_polarization(Polarization lambda, int q, double theta_k,
                                            double phi_k);

/// d/d(theta_k) of spherical_polarization.
std::complex<double> spherical_polarization_dtheta(Polarization lambda, int q, double theta_k,
                                                   double phi_k);

/// Angular coupling factor for the channel |H mH> -> |G mG> + photon(lambda):
///   (2G+1)^{-1/2} sum_q <H mH; 1 -q | G mG> (-1)^q eps_q^(lambda)(Omega_k).
/// Its phi_k dependence is exactly exp(i (mH - mG) phi_k).
std::complex<double> coupling_amplitude(const TransitionSpec& spec, HalfInteger mG,
                                        HalfInteger mH, Polarization lambda, double theta_k,
                                        double phi_k);

/// d/d(theta_k) of coupling_amplitude.
std::complex<double> coupling_amplitude_dtheta(const TransitionSpec& spec, HalfInteger mG,
                                               HalfInteger mH, Polarization lambda,
                                               double theta_k, double phi_k);

/// Branching ratio |H mH> -> |G mG|: <G mG; 1 (mH-mG) | H mH>^2. Sums to 1
/// over mG.
double branching_ratio(const TransitionSpec& spec, HalfInteger mG, HalfInteger mH);

}  // namespace emission
