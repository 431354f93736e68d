#include "emission/radial_fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "emission/errors.hpp"
#include "emission/parallel.hpp"
#include "emission/quadrature.hpp"

namespace emission {

using std::numbers::pi;
using cd = std::complex<double>;

namespace {

constexpr std::array<double, 3> kAlphaWeights = {2.0, 3.0, 1.0};
constexpr double kPureHalfWidth = 1e4;
constexpr double kSeriesSwitch = 0.5;

void check_alpha(int alpha) {
  if (alpha < 0 || alpha > 2) throw ConfigError("alpha must be 0, 1 or 2");
}

double bessel_series(int alpha, double x) {
  // j_n(x) = x^n / (2n+1)!! * sum_k (-x^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
  double lead = 1.0;
  for (int i = 1; i <= alpha; ++i) lead *= x / (2.0 * i + 1.0);
  const double y = -0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= y / (k * (2.0 * alpha + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

struct Band {
  double lower;
  double upper;
};

Band frequency_band(const WWAScheme& scheme, double ratio) {
  if (scheme.is_pure()) {
    const double w = std::min(kPureHalfWidth, ratio);
    return {w, w};
  }
  return {scheme.lower_cutoff_in_gamma, scheme.upper_cutoff_in_gamma};
}

// int_0^inf e^{-b t} / (c - s t) dt for b > 0 and Im c != 0.
cd laplace_tail(double b, cd c, double s) {
  const auto r = quadrature::integrate(
      [=](double u) { return std::exp(-u) / (c - s * u / b); }, 0.0, 50.0, 1e-16, 1e-13);
  return r.value / b;
}

// F(a) = int_{-lower}^{upper} e^{-i delta a} / (1 - i delta) d delta.
// For |a| * cutoff large the two tails beyond the cutoffs are subtracted from
// the full-line value 2 pi e^{-a} Theta(a), each evaluated on a contour
// rotated into the half plane where e^{-i delta a} decays.
cd lorentz_fourier(double a, const Band& band) {
  const double L = band.lower;
  const double U = band.upper;
  if (std::abs(a) * std::min(L, U) < 200.0) {
    const double period = a == 0.0 ? 0.0 : 2.0 * pi / std::abs(a);
    const auto f = [a](double d) { return std::exp(cd(0.0, -d * a)) / cd(1.0, -d); };
    return quadrature::integrate_oscillatory(f, -L, U, period, 1e-11).value;
  }
  const double sigma = a > 0.0 ? 1.0 : -1.0;
  const double b = std::abs(a);
  const cd i(0.0, 1.0);
  const cd upper_tail = -i * sigma * std::exp(cd(0.0, -U * a)) * laplace_tail(b, cd(1.0, -U), sigma);
  const cd lower_tail = i * sigma * std::exp(cd(0.0, L * a)) * laplace_tail(b, cd(1.0, L), sigma);
  const double full = a > 0.0 ? 2.0 * pi * std::exp(-a) : 0.0;
  return full - upper_tail - lower_tail;
}

// Full-line value of F; Theta(0) = 1/2 by symmetric truncation.
double lorentz_fourier_pure(double a) {
  if (a > 0.0) return 2.0 * pi * std::exp(-a);
  if (a == 0.0) return pi;
  return 0.0;
}

// I(s) = int [e^{-i delta (tau - s)} - e^{-tau} e^{i delta s}] / (1 - i delta).
cd hankel_time_factor(double s, double tau, const WWAScheme& scheme, double ratio) {
  if (scheme.is_pure()) {
    return lorentz_fourier_pure(tau - s) - std::exp(-tau) * lorentz_fourier_pure(-s);
  }
  const Band band = frequency_band(scheme, ratio);
  return lorentz_fourier(tau - s, band) - std::exp(-tau) * lorentz_fourier(-s, band);
}

double hankel_norm_sq(int alpha, double x) {
  const double j = spherical_bessel(alpha, x);
  const double y = spherical_neumann(alpha, x);
  return j * j + y * y;
}

cd q_alpha_direct(int alpha, double x, double tau, const WWAScheme& scheme, double ratio) {
  const Band band = frequency_band(scheme, ratio);
  const auto f = [=](double d) {
    return photon_amplitude_kernel(d, tau) * spherical_bessel(alpha, std::max(0.0, x * (1.0 + d / ratio)));
  };
  cd q = quadrature::integrate_oscillatory(f, -band.lower, band.upper, 2.0 * pi / tau, 1e-10)
             .value;
  if (scheme.is_pure()) {
    // Beyond +-W the kernel is dominated by -e^{-tau} / (1 - i delta), whose
    // symmetric tails integrate to pi - 2 atan W.
    q -= std::exp(-tau) * spherical_bessel(alpha, x) * (pi - 2.0 * std::atan(band.upper));
  }
  return q;
}

// Optical-cycle average of the density beyond the Hankel threshold.
double cycle_averaged_density(double x, double tau, const WWAScheme& scheme, double ratio) {
  const double s = x / ratio;
  const double time_part = std::norm(hankel_time_factor(s, tau, scheme, ratio)) +
                           std::norm(hankel_time_factor(-s, tau, scheme, ratio));
  double angular = 0.0;
  for (int alpha = 0; alpha < 3; ++alpha) {
    angular += kAlphaWeights[alpha] * x * x * hankel_norm_sq(alpha, x);
  }
  return angular * 0.25 * time_part / (3.0 * pi * pi);
}

void check_tau(double tau) {
  if (!(tau >= 0.0)) throw ConfigError("tau must be non-negative");
}

void check_x(double x) {
  if (!(x >= 0.0)) throw ConfigError("x must be non-negative");
}

}  // namespace

double spherical_bessel(int alpha, double x) {
  check_alpha(alpha);
  check_x(x);
  if (x < kSeriesSwitch) return bessel_series(alpha, x);
  const double s = std::sin(x);
  const double c = std::cos(x);
  switch (alpha) {
    case 0: return s / x;
    case 1: return s / (x * x) - c / x;
    default: return (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
  }
}

double spherical_neumann(int alpha, double x) {
  check_alpha(alpha);
  if (!(x > 0.0)) throw DomainError("spherical_neumann requires x > 0");
  const double s = std::sin(x);
  const double c = std::cos(x);
  switch (alpha) {
    case 0: return -c / x;
    case 1: return -c / (x * x) - s / x;
    default: return (1.0 - 3.0 / (x * x)) * c / x - 3.0 * s / (x * x);
  }
}

cd q_alpha(int alpha, double x, double tau, const WWAScheme& scheme, double ratio) {
  check_alpha(alpha);
  check_x(x);
  check_tau(tau);
  scheme.validate(ratio);
  if (tau == 0.0) return 0.0;
  if (x <= kHankelThreshold) return q_alpha_direct(alpha, x, tau, scheme, ratio);
  // j = (h1 + h2) / 2 with amplitudes frozen at x; the phases e^{+-i x delta/ratio}
  // shift the time argument by -+ x/ratio.
  const double s = x / ratio;
  const cd h1(spherical_bessel(alpha, x), spherical_neumann(alpha, x));
  return 0.5 * (h1 * hankel_time_factor(s, tau, scheme, ratio) +
                std::conj(h1) * hankel_time_factor(-s, tau, scheme, ratio));
}

double energy_density_wwa(double x, double tau) {
  check_x(x);
  check_tau(tau);
  double sum = 0.0;
  for (int alpha = 0; alpha < 3; ++alpha) {
    const double j = spherical_bessel(alpha, x);
    sum += kAlphaWeights[alpha] * j * j;
  }
  return x * x / 3.0 * std::exp(-2.0 * tau) * sum;
}

double energy_density_quadrature(double x, double tau, const WWAScheme& scheme, double ratio) {
  double sum = 0.0;
  for (int alpha = 0; alpha < 3; ++alpha) {
    sum += kAlphaWeights[alpha] * std::norm(q_alpha(alpha, x, tau, scheme, ratio));
  }
  return x * x / (3.0 * pi * pi) * sum;
}

double energy_density_farfield(double x, double tau, double ratio) {
  check_x(x);
  check_tau(tau);
  const double retarded = tau - x / ratio;
  return retarded >= 0.0 ? 2.0 * std::exp(-2.0 * retarded) : 0.0;
}

double energy_density_classical(double x, double tau, double ratio) {
  if (!(x > 0.0)) throw DomainError("classical dipole density diverges at x = 0");
  const double x2 = x * x;
  return energy_density_farfield(x, tau, ratio) * (1.0 + 1.0 / x2 + 1.5 / (x2 * x2));
}

double total_field_energy_from_density(double tau, const WWAScheme& scheme, double ratio) {
  check_tau(tau);
  scheme.validate(ratio);
  if (tau == 0.0) return 0.0;

  // Near zone x in [0, 100]: direct density, fixed Gauss-Legendre.
  const auto& rule = quadrature::gauss_legendre(64);
  std::vector<double> near(rule.nodes.size());
  parallel_for(near.size(), [&](std::size_t k) {
    const double x = 0.5 * kHankelThreshold * (rule.nodes[k] + 1.0);
    near[k] = rule.weights[k] * energy_density_quadrature(x, tau, scheme, ratio);
  });
  double total = 0.0;
  for (double v : near) total += v;
  total *= 0.5 * kHankelThreshold / ratio;

  // Radiation zone in s = x / ratio, split at the retardation front s = tau.
  const double s0 = kHankelThreshold / ratio;
  const double s_end = tau + 10.0;
  std::vector<double> cuts = {s0, 0.02, tau - 0.02, tau, tau + 0.02, s_end};
  std::erase_if(cuts, [&](double c) { return c < s0 || c > s_end; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> pieces(cuts.size() - 1);
  parallel_for(pieces.size(), [&](std::size_t k) {
    const quadrature::RealFn f = [&](double s) {
      return cycle_averaged_density(s * ratio, tau, scheme, ratio);
    };
    pieces[k] = quadrature::integrate(f, cuts[k], cuts[k + 1], 1e-7, 1e-7).value;
  });
  for (double v : pieces) total += v;
  return total;
}

const char* density_method_name(DensityMethod method) {
  switch (method) {
    case DensityMethod::ClosedSmallX: return "closed";
    case DensityMethod::QuadratureQ: return "quadrature";
    case DensityMethod::FarField: return "farfield";
    case DensityMethod::Classical: return "classical";
  }
  return "unknown";
}

std::vector<double> grid_with_front(std::vector<double> xs, double tau, double ratio) {
  if (tau > 0.0) {
    const double front = ratio * tau;
    xs.push_back(front * (1.0 - 1e-3));
    xs.push_back(front * (1.0 + 1e-3));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

RadialProfile make_profile(DensityMethod method, const std::vector<double>& xs, double tau,
                           const WWAScheme& scheme, double ratio) {
  check_tau(tau);
  scheme.validate(ratio);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    check_x(xs[i]);
    if (i > 0 && !(xs[i] > xs[i - 1])) throw ConfigError("x grid must be strictly increasing");
  }
  RadialProfile profile;
  profile.tau = tau;
  profile.scheme = scheme;
  profile.method = method;

  std::vector<double> values(xs.size());
  std::vector<char> keep(xs.size(), 1);
  parallel_for(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    switch (method) {
      case DensityMethod::ClosedSmallX:
        if (x > kHankelThreshold) {
          keep[i] = 0;
        } else {
          values[i] = energy_density_wwa(x, tau);
        }
        break;
      case DensityMethod::QuadratureQ:
        values[i] = energy_density_quadrature(x, tau, scheme, ratio);
        break;
      case DensityMethod::FarField:
        values[i] = energy_density_farfield(x, tau, ratio);
        break;
      case DensityMethod::Classical:
        if (x <= 0.0) {
          keep[i] = 0;
        } else {
          values[i] = energy_density_classical(x, tau, ratio);
        }
        break;
    }
  });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (keep[i]) {
      profile.points.push_back({xs[i], values[i]});
      continue;
    }
    const std::string where = "x=" + std::to_string(xs[i]);
    profile.warnings.push_back(method == DensityMethod::Classical
                                   ? where + ": classical density diverges at the origin"
                                   : where + ": closed small-x form is valid only for x <= 100");
  }
  return profile;
}

}  // namespace emission
