#include "emission/observables.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "emission/angular_algebra.hpp"
#include "emission/errors.hpp"
#include "emission/quadrature.hpp"

namespace emission {

using std::numbers::pi;
using cd = std::complex<double>;

namespace {

void check_tau(double tau) {
  if (!(tau >= 0.0)) throw ConfigError("tau must be non-negative");
}

// Fraction of emitted photons by time tau.
double emitted_fraction(double tau) { return wwa_line_integral(tau) / pi; }

}  // namespace

EnergyBreakdown energies(const TransitionSpec& spec, const InitialState& state, double tau,
                         const WWAScheme& scheme) {
  check_tau(tau);
  scheme.validate(spec.omega0_over_gamma);
  double excited = 0.0;
  for (const auto& [m, c] : state.amplitudes()) excited += std::norm(c);
  const double atom = excited * std::exp(-2.0 * tau);
  if (scheme.is_pure()) {
    return EnergyBreakdown::from_parts(atom, excited * emitted_fraction(tau), 0.0);
  }
  // Field energy weights each mode by omega_k / omega0 = 1 + delta / ratio.
  const auto moments = scheme_line_moments(tau, scheme);
  const double detuning_part = moments.first / spec.omega0_over_gamma;
  const double field = excited * (moments.weight + detuning_part) / pi;
  const double interaction = -excited * detuning_part / pi;
  return EnergyBreakdown::from_parts(atom, field, interaction);
}

double atom_bracket(HalfIntegerJ H, HalfIntegerJ G) {
  const double h = H.value();
  if (H.twice() == G.twice() + 2) return (h - 1.0) / h;
  if (H.twice() == G.twice()) return (h * (h + 1.0) - 1.0) / (h * (h + 1.0));
  if (H.twice() + 2 == G.twice()) return (h + 2.0) / (h + 1.0);
  throw ConfigError("atom_bracket: not a dipole transition");
}

double field_bracket(HalfIntegerJ H, HalfIntegerJ G, HgCoefficient coefficient) {
  const double h = H.value();
  if (H.twice() == G.twice() + 2) return 1.0 / h;
  if (H.twice() + 2 == G.twice()) return -1.0 / (h + 1.0);
  if (H.twice() == G.twice()) {
    if (coefficient == HgCoefficient::AsPrinted) return 1.0 / (h * (h + 1.0) * (2.0 * h + 1.0));
    return 1.0 / (h * (h + 1.0));
  }
  throw ConfigError("field_bracket: not a dipole transition");
}

double atom_angmom_z(const TransitionSpec& spec, const InitialState& state, double tau) {
  check_tau(tau);
  const double m0 = state.population_moment();
  if (m0 == 0.0) return 0.0;
  const double e = std::exp(-2.0 * tau);
  return e * m0 + (1.0 - e) * atom_bracket(spec.H, spec.G) * m0;
}

double field_angmom_z_closed(const TransitionSpec& spec, const InitialState& state, double tau,
                             HgCoefficient coefficient) {
  check_tau(tau);
  const double m0 = state.population_moment();
  if (m0 == 0.0) return 0.0;
  return emitted_fraction(tau) * field_bracket(spec.H, spec.G, coefficient) * m0;
}

PhotonAngularIntegrals photon_angular_integrals(const TransitionSpec& spec,
                                                const InitialState& state,
                                                std::size_t theta_nodes, std::size_t phi_nodes) {
  const auto& u_rule = quadrature::gauss_legendre(theta_nodes);
  const auto phi_rule = quadrature::periodic_trapezoid(phi_nodes);
  const auto ground = spec.G.projections();

  PhotonAngularIntegrals acc;
  for (std::size_t iu = 0; iu < u_rule.nodes.size(); ++iu) {
    const double u = u_rule.nodes[iu];
    const double theta = std::acos(u);
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - u * u));
    const double cos_t = u;
    for (std::size_t ip = 0; ip < phi_rule.nodes.size(); ++ip) {
      const double phi = phi_rule.nodes[ip];
      const double w = u_rule.weights[iu] * phi_rule.weights[ip];
      const std::array<double, 3> e_theta = {cos_t * std::cos(phi), cos_t * std::sin(phi), -sin_t};
      const std::array<double, 3> e_phi = {-std::sin(phi), std::cos(phi), 0.0};
      const std::array<double, 3> d_e_phi = {-std::cos(phi), -std::sin(phi), 0.0};

      for (const auto mG : ground) {
        cd a_th, a_ph, dth_a_th, dph_a_th, dph_a_ph;
        for (const auto& [mH, c] : state.amplitudes()) {
          const cd v_th = coupling_amplitude(spec, mG, mH, Polarization::theta, theta, phi);
          const cd v_ph = coupling_amplitude(spec, mG, mH, Polarization::phi, theta, phi);
          const cd dv_th = coupling_amplitude_dtheta(spec, mG, mH, Polarization::theta, theta, phi);
          // The phi dependence of every coupling is exp(i (mH - mG) phi).
          const cd iq(0.0, (mH - mG).value());
          a_th += c * v_th;
          a_ph += c * v_ph;
          dth_a_th += c * dv_th;
          dph_a_th += c * iq * v_th;
          dph_a_ph += c * iq * v_ph;
        }
        const cd d_sin_a_th = cos_t * a_th + sin_t * dth_a_th;  // d_theta(sin th A_theta)

        acc.norm += w * (std::norm(a_th) + std::norm(a_ph));
        acc.divergence += w * (std::conj(a_ph) * (d_sin_a_th + dph_a_ph)).imag();
        acc.gradient += -w * (-std::conj(a_th) * dph_a_th + std::conj(a_ph) * d_sin_a_th).imag();
        acc.spin += w * 2.0 * (std::conj(a_th) * a_ph).imag() * cos_t;

        double orbital = 0.0;
        for (int j = 0; j < 3; ++j) {
          const cd cj = a_th * e_theta[j] + a_ph * e_phi[j];
          const cd dcj = dph_a_th * e_theta[j] + a_th * cos_t * e_phi[j] + dph_a_ph * e_phi[j] +
                         a_ph * d_e_phi[j];
          orbital += (std::conj(cj) * dcj).imag();
        }
        acc.orbital += w * orbital;
      }
    }
  }
  // Per-photon normalization fixed by the decay rate: the solid-angle sum of
  // |coupling|^2 equals 8 pi / [3 (2H+1)].
  const double scale = 3.0 * (spec.H.twice() + 1.0) / (8.0 * pi);
  acc.norm *= scale;
  acc.divergence *= scale;
  acc.gradient *= scale;
  acc.spin *= scale;
  acc.orbital *= scale;
  return acc;
}

PhotonAngularIntegrals photon_angular_integrals(const TransitionSpec& spec,
                                                const InitialState& state,
                                                const AngularQuadratureOptions& options) {
  const auto coarse =
      photon_angular_integrals(spec, state, options.theta_nodes, options.phi_nodes);
  if (!options.check_convergence) return coarse;
  const auto fine =
      photon_angular_integrals(spec, state, 2 * options.theta_nodes, 2 * options.phi_nodes);
  const double worst = std::max({std::abs(coarse.norm - fine.norm),
                                 std::abs(coarse.divergence - fine.divergence),
                                 std::abs(coarse.gradient - fine.gradient),
                                 std::abs(coarse.spin - fine.spin),
                                 std::abs(coarse.orbital - fine.orbital)});
  if (worst > options.tolerance) {
    throw ConvergenceError("angular quadrature not converged: node doubling changed a result by " +
                           std::to_string(worst));
  }
  return fine;
}

double field_angmom_z_numeric(const TransitionSpec& spec, const InitialState& state, double tau,
                              const AngularQuadratureOptions& options) {
  check_tau(tau);
  return emitted_fraction(tau) * photon_angular_integrals(spec, state, options).total();
}

SpinOrbital spin_orbital_angmom_z(const TransitionSpec& spec, const InitialState& state,
                                  double tau, const AngularQuadratureOptions& options) {
  check_tau(tau);
  const auto integrals = photon_angular_integrals(spec, state, options);
  const double f = emitted_fraction(tau);
  return {f * integrals.spin, f * integrals.orbital};
}

AngularMomentumBreakdown angular_momenta(const TransitionSpec& spec, const InitialState& state,
                                         double tau, const AngularQuadratureOptions& options) {
  check_tau(tau);
  const auto integrals = photon_angular_integrals(spec, state, options);
  const double f = emitted_fraction(tau);
  AngularMomentumBreakdown b;
  b.atom_z = atom_angmom_z(spec, state, tau);
  b.field_z = f * integrals.total();
  b.spin_z = f * integrals.spin;
  b.orbital_z = f * integrals.orbital;
  b.initial_atom_z = state.population_moment();
  return b;
}

}  // namespace emission
