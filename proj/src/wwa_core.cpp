#include "emission/wwa_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "emission/errors.hpp"
#include "emission/quadrature.hpp"

namespace emission {

using std::numbers::pi;

TransitionSpec TransitionSpec::make(HalfIntegerJ H, HalfIntegerJ G, double omega0_over_gamma) {
  if (std::abs(H.twice() - G.twice()) > 2) {
    throw ConfigError("dipole selection rule violated: |H - G| > 1 (H=" + H.str() +
                      ", G=" + G.str() + ")");
  }
  if (H.twice() == 0 && G.twice() == 0) {
    throw ConfigError("dipole selection rule violated: H = G = 0");
  }
  if ((H.twice() - G.twice()) % 2 != 0) {
    throw ConfigError("H and G must both be integer or both half-integer");
  }
  if (!(omega0_over_gamma >= 1e3) || !std::isfinite(omega0_over_gamma)) {
    throw ConfigError("omega0_over_gamma must be >= 1e3");
  }
  return TransitionSpec{H, G, omega0_over_gamma};
}

InitialState InitialState::make(HalfIntegerJ H,
                                 std::map<HalfInteger, std::complex<double>> amplitudes) {
  if (amplitudes.empty()) throw ConfigError("initial state has no amplitudes");
  double norm = 0.0;
  for (const auto& [m, c] : amplitudes) {
    if (!H.admits(m)) {
      throw ConfigError("sublevel m=" + m.str() + " is not a projection of H=" + H.str());
    }
    norm += std::norm(c);
  }
  if (std::abs(norm - 1.0) > 1e-12) {
    throw ConfigError("initial state norm is " + std::to_string(norm) + ", expected 1");
  }
  InitialState s;
  s.H_ = H;
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

InitialState InitialState::basis(HalfIntegerJ H, HalfInteger mH) {
  return make(H, {{mH, {1.0, 0.0}}});
}

std::complex<double> InitialState::amplitude(HalfInteger mH) const {
  auto it = amplitudes_.find(mH);
  return it == amplitudes_.end() ? std::complex<double>{} : it->second;
}

double InitialState::population_moment() const {
  double m0 = 0.0;
  for (const auto& [m, c] : amplitudes_) m0 += m.value() * std::norm(c);
  return m0;
}

WWAScheme WWAScheme::modified(double lower, double upper) {
  if (!(lower > 0.0) || !(upper > 0.0)) throw ConfigError("WWA cutoffs must be positive");
  return WWAScheme{Variant::Modified, lower, upper};
}

void WWAScheme::validate(double omega0_over_gamma) const {
  if (is_pure()) return;
  if (!(lower_cutoff_in_gamma > 0.0) || !(upper_cutoff_in_gamma > 0.0)) {
    throw ConfigError("WWA cutoffs must be positive");
  }
  if (lower_cutoff_in_gamma > omega0_over_gamma) {
    throw ConfigError("lower cutoff exceeds omega0/gamma (negative mode frequencies)");
  }
}

double decay_rate_gamma(double mu_sq, double omega0, HalfIntegerJ H) {
  if (!(omega0 > 0.0)) throw ConfigError("omega0 must be positive");
  if (mu_sq < 0.0) throw ConfigError("|mu|^2 must be non-negative");
  return omega0 * omega0 * omega0 * mu_sq / (6.0 * (H.twice() + 1.0) * pi);
}

std::complex<double> excited_amplitude(const InitialState& state, HalfInteger mH, double tau) {
  if (tau < 0.0) throw ConfigError("tau must be non-negative");
  return state.amplitude(mH) * std::exp(-tau);
}

std::complex<double> photon_amplitude_kernel(double delta, double tau) {
  return (std::polar(1.0, -delta * tau) - std::exp(-tau)) / std::complex<double>(1.0, -delta);
}

double kernel_norm_sq(double delta, double tau) {
  const double e = std::exp(-tau);
  return (1.0 + e * e - 2.0 * std::cos(delta * tau) * e) / (1.0 + delta * delta);
}

double wwa_line_integral(double tau) { return pi * (1.0 - std::exp(-2.0 * tau)); }

namespace {

double oscillation_period(double tau) { return tau > 0.0 ? 2.0 * pi / tau : 0.0; }

quadrature::Result<std::complex<double>> kernel_moment(double tau, double a, double b,
                                                       int power) {
  return quadrature::integrate_oscillatory(
      [tau, power](double d) {
        const double w = kernel_norm_sq(d, tau);
        return std::complex<double>(power == 0 ? w : d * w, 0.0);
      },
      a, b, oscillation_period(tau), 1e-12);
}

}  // namespace

LineIntegralQuadrature wwa_line_integral_quadrature(double tau, double half_width) {
  LineIntegralQuadrature q;
  if (tau <= 0.0) return q;
  const auto r = kernel_moment(tau, -half_width, half_width, 0);
  q.truncated = r.value.real();
  q.abs_error = r.abs_error;
  q.tail = (1.0 + std::exp(-2.0 * tau)) * (pi - 2.0 * std::atan(half_width));
  q.total = q.truncated + q.tail;
  return q;
}

LineMoments scheme_line_moments(double tau, const WWAScheme& scheme) {
  if (tau <= 0.0) return {};
  if (scheme.is_pure()) return {wwa_line_integral(tau), 0.0};
  const double lo = -scheme.lower_cutoff_in_gamma;
  const double hi = scheme.upper_cutoff_in_gamma;
  return {kernel_moment(tau, lo, hi, 0).value.real(), kernel_moment(tau, lo, hi, 1).value.real()};
}

}  // namespace emission
