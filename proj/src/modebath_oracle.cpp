#include "emission/modebath_oracle.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <complex>
#include <numbers>
#include <string>

#include "emission/errors.hpp"

namespace emission {

using std::numbers::pi;
using cd = std::complex<double>;

const char* spectral_profile_name(SpectralProfile profile) {
  return profile == SpectralProfile::Flat ? "flat" : "cubic";
}

ModeGridSpec ModeGridSpec::make(std::size_t n_modes, double half_span_in_gamma,
                                SpectralProfile profile, double ratio) {
  if (n_modes < 100) throw ConfigError("n_modes must be at least 100");
  if (!(half_span_in_gamma >= 50.0)) throw ConfigError("half_span_in_gamma must be at least 50");
  ModeGridSpec g{n_modes, half_span_in_gamma, profile, ratio};
  if (g.spacing() > 0.2) {
    throw ConfigError("mode spacing " + std::to_string(g.spacing()) +
                      " exceeds 0.2 gamma; increase n_modes or reduce the span");
  }
  if (!(ratio > half_span_in_gamma)) throw ConfigError("ratio must exceed half_span_in_gamma");
  return g;
}

double ModeGridSpec::detuning(std::size_t j) const {
  return -half_span_in_gamma + (static_cast<double>(j) + 0.5) * spacing();
}

double ModeGridSpec::coupling(std::size_t j) const {
  double w = 1.0;
  if (profile == SpectralProfile::Cubic) w = std::pow(1.0 + detuning(j) / ratio, 3);
  return std::sqrt(w * spacing() / pi);
}

double ModeGridSpec::recurrence_time() const { return 2.0 * pi / spacing(); }

namespace {

struct State {
  cd excited;
  std::vector<cd> modes;
};

// Right-hand side at time tau; phase[j] = e^{i delta_j tau}.
void derivative(const std::vector<double>& g, const std::vector<cd>& phase, const State& y,
                State& dy) {
  const cd minus_i(0.0, -1.0);
  cd sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    sum += g[j] * std::conj(phase[j]) * y.modes[j];
    dy.modes[j] = minus_i * g[j] * phase[j] * y.excited;
  }
  dy.excited = minus_i * sum;
}

void axpy(const State& y, double h, const State& k, State& out) {
  out.excited = y.excited + h * k.excited;
  for (std::size_t j = 0; j < y.modes.size(); ++j) out.modes[j] = y.modes[j] + h * k.modes[j];
}

double norm_of(const State& y) {
  double n = std::norm(y.excited);
  for (const auto& c : y.modes) n += std::norm(c);
  return n;
}

void fill_phase(const std::vector<double>& delta, double tau, std::vector<cd>& phase) {
  for (std::size_t j = 0; j < delta.size(); ++j) phase[j] = std::polar(1.0, delta[j] * tau);
}

void record(const ModeGridSpec& grid, const std::vector<double>& delta, double tau,
            const State& y, DecayTrajectory& traj) {
  double energy = 0.0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    energy += (1.0 + delta[j] / grid.ratio) * std::norm(y.modes[j]);
  }
  traj.times.push_back(tau);
  traj.excited_pop.push_back(std::norm(y.excited));
  traj.field_energy.push_back(energy);
}

// Solves the 3x3 system m x = r by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> r) {
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int i = c + 1; i < 3; ++i) {
      if (std::abs(m[i][c]) > std::abs(m[p][c])) p = i;
    }
    if (std::abs(m[p][c]) < 1e-300) throw ConvergenceError("Lorentzian fit: singular system");
    std::swap(m[c], m[p]);
    std::swap(r[c], r[p]);
    for (int i = c + 1; i < 3; ++i) {
      const double f = m[i][c] / m[c][c];
      for (int k = c; k < 3; ++k) m[i][k] -= f * m[c][k];
      r[i] -= f * r[c];
    }
  }
  std::array<double, 3> x{};
  for (int i = 2; i >= 0; --i) {
    double s = r[i];
    for (int k = i + 1; k < 3; ++k) s -= m[i][k] * x[k];
    x[i] = s / m[i][i];
  }
  return x;
}

}  // namespace

DecayTrajectory simulate(const ModeGridSpec& grid, double tau_end, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(tau_end >= 0.0) || tau_end > 10.0) throw ConfigError("tau_end must lie in [0, 10]");
  if (tau_end >= grid.recurrence_time()) {
    throw ConfigError("tau_end " + std::to_string(tau_end) + " reaches the recurrence time " +
                      std::to_string(grid.recurrence_time()) + " of the mode grid");
  }

  const std::size_t n = grid.n_modes;
  std::vector<double> delta(n), g(n);
  for (std::size_t j = 0; j < n; ++j) {
    delta[j] = grid.detuning(j);
    g[j] = grid.coupling(j);
  }

  DecayTrajectory traj;
  traj.grid = grid;
  traj.detunings = delta;

  const auto samples = static_cast<std::size_t>(std::ceil(tau_end / dt - 1e-9));
  const double sample_dt = samples > 0 ? tau_end / static_cast<double>(samples) : 0.0;
  const auto substeps = static_cast<std::size_t>(
      std::max(1.0, std::ceil(sample_dt * grid.half_span_in_gamma / kMaxPhasePerStep)));
  const double h = sample_dt / static_cast<double>(substeps);

  // Half-step phase advance per mode; phases are re-synchronized at every sample.
  std::vector<cd> half_turn(n);
  for (std::size_t j = 0; j < n; ++j) half_turn[j] = std::polar(1.0, 0.5 * delta[j] * h);

  State y{1.0, std::vector<cd>(n, 0.0)};
  State k1 = y, k2 = y, k3 = y, k4 = y, tmp = y;
  std::vector<cd> phase0(n), phase_mid(n), phase1(n);
  record(grid, delta, 0.0, y, traj);

  for (std::size_t sample = 0; sample < samples; ++sample) {
    const double t_sample = sample_dt * static_cast<double>(sample);
    fill_phase(delta, t_sample, phase1);
    for (std::size_t sub = 0; sub < substeps; ++sub) {
      phase0.swap(phase1);
      for (std::size_t j = 0; j < n; ++j) {
        phase_mid[j] = phase0[j] * half_turn[j];
        phase1[j] = phase_mid[j] * half_turn[j];
      }

      derivative(g, phase0, y, k1);
      axpy(y, 0.5 * h, k1, tmp);
      derivative(g, phase_mid, tmp, k2);
      axpy(y, 0.5 * h, k2, tmp);
      derivative(g, phase_mid, tmp, k3);
      axpy(y, h, k3, tmp);
      derivative(g, phase1, tmp, k4);

      y.excited += h / 6.0 * (k1.excited + 2.0 * k2.excited + 2.0 * k3.excited + k4.excited);
      for (std::size_t j = 0; j < n; ++j) {
        y.modes[j] +=
            h / 6.0 * (k1.modes[j] + 2.0 * k2.modes[j] + 2.0 * k3.modes[j] + k4.modes[j]);
      }
    }

    const double t = sample + 1 == samples ? tau_end : t_sample + sample_dt;
    const double drift = std::abs(norm_of(y) - 1.0);
    traj.norm_drift = std::max(traj.norm_drift, drift);
    if (drift > kMaxNormDrift) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "norm drift %.3g at tau=%.6g with RK4 step %.6g exceeds %.0e; use a smaller dt",
                    drift, t, h, kMaxNormDrift);
      throw ConvergenceError(msg);
    }
    record(grid, delta, t, y, traj);
  }

  traj.mode_pops.resize(n);
  for (std::size_t j = 0; j < n; ++j) traj.mode_pops[j] = std::norm(y.modes[j]);
  return traj;
}

double fitted_decay_rate(const DecayTrajectory& traj) {
  constexpr double lo = 0.5;
  constexpr double hi = 3.0;
  if (traj.times.empty() || traj.times.front() > lo || traj.times.back() < hi - 1e-12) {
    throw ConfigError("trajectory must cover tau in [0.5, 3] for the decay-rate fit");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  double previous = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < lo - 1e-12 || t > hi + 1e-12) continue;
    const double p = traj.excited_pop[i];
    if (count > 0 && p > previous) {
      throw ConvergenceError("excited population is not monotonic at tau=" + std::to_string(t));
    }
    if (!(p > 0.0)) throw ConvergenceError("excited population vanished in the fit window");
    previous = p;
    const double v = std::log(p);
    sx += t;
    sy += v;
    sxx += t * t;
    sxy += t * v;
    ++count;
  }
  if (count < 2) throw ConfigError("fewer than two samples in the decay-rate fit window");
  const double nd = static_cast<double>(count);
  const double slope = (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
  return -0.5 * slope;
}

LorentzianFit spectrum_lorentzian_check(const DecayTrajectory& traj) {
  if (traj.times.empty() || traj.times.back() < 5.0 - 1e-12) {
    throw ConfigError("spectrum fit needs a trajectory evolved to tau >= 5");
  }
  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < traj.detunings.size(); ++j) {
    if (std::abs(traj.detunings[j]) <= 10.0 && traj.mode_pops[j] > 0.0) {
      xs.push_back(traj.detunings[j]);
      ys.push_back(traj.mode_pops[j]);
    }
  }
  if (xs.size() < 3) throw ConvergenceError("Lorentzian fit: fewer than three spectral points");

  // Start: 1/y = a + b x + c x^2, weighted by y^2 so residuals are relative.
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::array<double, 3> basis = {1.0, xs[i], xs[i] * xs[i]};
    const double w = ys[i] * ys[i];
    for (int p = 0; p < 3; ++p) {
      r[p] += w * basis[p] / ys[i];
      for (int q = 0; q < 3; ++q) m[p][q] += w * basis[p] * basis[q];
    }
  }
  const auto abc = solve3(m, r);
  if (!(abc[2] > 0.0)) throw ConvergenceError("Lorentzian fit: spectrum is not peaked");
  double center = -abc[1] / (2.0 * abc[2]);
  const double inv_amp = abc[0] - abc[1] * abc[1] / (4.0 * abc[2]);
  if (!(inv_amp > 0.0)) throw ConvergenceError("Lorentzian fit: non-positive amplitude");
  double amp = 1.0 / inv_amp;
  double width = std::sqrt(inv_amp / abc[2]);

  // Gauss-Newton refinement on relative residuals (y - model) / y.
  for (int iter = 0; iter < 50; ++iter) {
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double u = (xs[i] - center) / width;
      const double den = 1.0 + u * u;
      const double model = amp / den;
      const std::array<double, 3> grad = {1.0 / den, model * 2.0 * u / (width * den),
                                          model * 2.0 * u * u / (width * den)};
      const double inv_y = 1.0 / ys[i];
      const double res = (ys[i] - model) * inv_y;
      for (int p = 0; p < 3; ++p) {
        jtr[p] += grad[p] * inv_y * res;
        for (int q = 0; q < 3; ++q) jtj[p][q] += grad[p] * grad[q] * inv_y * inv_y;
      }
    }
    const auto step = solve3(jtj, jtr);
    amp += step[0];
    center += step[1];
    width += step[2];
    if (!(amp > 0.0) || !(width > 0.0)) throw ConvergenceError("Lorentzian fit diverged");
    if (std::abs(step[1]) < 1e-12 && std::abs(step[2]) < 1e-12 * width &&
        std::abs(step[0]) < 1e-12 * amp) {
      break;
    }
  }

  LorentzianFit fit{center, width, amp, 0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double u = (xs[i] - center) / width;
    const double model = amp / (1.0 + u * u);
    fit.max_rel_dev = std::max(fit.max_rel_dev, std::abs(ys[i] - model) / model);
  }
  return fit;
}

}  // namespace emission
