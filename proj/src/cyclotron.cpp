#include "emission/cyclotron.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "emission/errors.hpp"
#include "emission/quadrature.hpp"

namespace emission {

using std::numbers::pi;
using cd = std::complex<double>;

namespace {

void check_tau(double tau) {
  if (!(tau >= 0.0)) throw ConfigError("tau must be non-negative");
}

CyclotronFieldIntegrals angular_sums(const CyclotronSpec& spec, std::size_t theta_nodes,
                                     std::size_t phi_nodes) {
  const auto& u_rule = quadrature::gauss_legendre(theta_nodes);
  const auto phi_rule = quadrature::periodic_trapezoid(phi_nodes);
  const double A = 0.5 * spec.a();
  const cd i(0.0, 1.0);
  CyclotronFieldIntegrals s;
  for (std::size_t iu = 0; iu < u_rule.nodes.size(); ++iu) {
    const double c = u_rule.nodes[iu];
    const double sn2 = 1.0 - c * c;
    for (std::size_t ip = 0; ip < phi_rule.nodes.size(); ++ip) {
      const double w = u_rule.weights[iu] * phi_rule.weights[ip];
      const cd phase = std::polar(1.0, phi_rule.nodes[ip]);
      const cd c_theta = A * c * phase;
      const cd c_phi = i * A * phase;
      const cd d_sin_c_theta = A * (c * c - sn2) * phase;  // d_theta(sin th c_theta)
      const cd d_phi_c_phi = i * c_phi;
      s.energy += w * (std::norm(c_theta) + std::norm(c_phi));
      s.angmom_z += w * (std::conj(c_phi) * (d_sin_c_theta + d_phi_c_phi)).imag();
      s.printed_line += w * (std::conj(c_phi) * (c_theta * (c * c - sn2) - i * c_phi)).imag();
    }
  }
  return s;
}

}  // namespace

CyclotronSpec CyclotronSpec::make(double q_charge, double B_field, double mass) {
  if (!(q_charge > 0.0) || !(B_field > 0.0) || !(mass > 0.0)) {
    throw ConfigError("cyclotron q_charge, B_field and mass must be positive");
  }
  CyclotronSpec spec{q_charge, B_field, mass};
  const double ratio = cyclotron_decay_rate(spec) / spec.omega_c();
  if (ratio > kMaxCyclotronWidthRatio) {
    throw ConfigError("gamma_c / omega_c = " + std::to_string(ratio) +
                      " exceeds 1e-3; the Weisskopf-Wigner treatment does not apply");
  }
  return spec;
}

double CyclotronSpec::a() const { return std::sqrt(2.0 / (q_charge * B_field)); }

double cyclotron_decay_rate(const CyclotronSpec& spec) {
  const double w = spec.omega_c();
  return spec.q_charge * spec.q_charge * w * w / (6.0 * pi * spec.mass);
}

EnergyBreakdown cyclotron_energies(const CyclotronSpec&, double tau) {
  check_tau(tau);
  const double e = std::exp(-2.0 * tau);
  return EnergyBreakdown::from_parts(e, -std::expm1(-2.0 * tau), 0.0);
}

double cyclotron_field_angmom_z(const CyclotronSpec&, double tau) {
  check_tau(tau);
  return -std::expm1(-2.0 * tau);
}

CyclotronFieldIntegrals cyclotron_field_quadrature(const CyclotronSpec& spec, double tau) {
  check_tau(tau);
  const auto coarse = angular_sums(spec, 32, 16);
  const auto fine = angular_sums(spec, 64, 32);
  const double scale = std::max(std::abs(fine.energy), 1e-300);
  const double worst = std::max({std::abs(coarse.energy - fine.energy),
                                 std::abs(coarse.angmom_z - fine.angmom_z),
                                 std::abs(coarse.printed_line - fine.printed_line)}) /
                       scale;
  if (worst > 1e-10) {
    throw ConvergenceError("cyclotron angular quadrature not converged: relative change " +
                           std::to_string(worst));
  }
  const double w = spec.omega_c();
  const double prefactor = spec.q_charge * spec.q_charge * w * w * w /
                           (16.0 * pi * pi * pi * cyclotron_decay_rate(spec));
  const double time = prefactor * wwa_line_integral(tau);
  return {time * fine.energy, time * fine.angmom_z, time * fine.printed_line};
}

double cyclotron_classical_field_angmom_z(double tau) {
  check_tau(tau);
  return kClassicalTransferFraction * -std::expm1(-2.0 * tau);
}

}  // namespace emission
