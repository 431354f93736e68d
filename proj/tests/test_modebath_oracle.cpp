#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "emission/errors.hpp"
#include "emission/modebath_oracle.hpp"

using namespace emission;
using std::numbers::pi;

namespace {

// Exact pole of the flat band of half-width S: kappa = 1 + 2 / (pi S).
double finite_band_rate(double S) { return 1.0 + 2.0 / (pi * S); }

DecayTrajectory synthetic(double rate, double tau_end = 4.0) {
  DecayTrajectory t;
  for (double tau = 0.0; tau <= tau_end + 1e-12; tau += 0.05) {
    t.times.push_back(tau);
    t.excited_pop.push_back(std::exp(-2 * rate * tau));
  }
  return t;
}

const DecayTrajectory& default_run() {
  static const DecayTrajectory traj = simulate(ModeGridSpec{}, 5.0, 0.005);
  return traj;
}

}  // namespace

TEST_CASE("grid validation and couplings") {
  CHECK_THROWS_AS(ModeGridSpec::make(99, 50, SpectralProfile::Flat, 1e6), ConfigError);
  CHECK_THROWS_AS(ModeGridSpec::make(1000, 40, SpectralProfile::Flat, 1e6), ConfigError);
  CHECK_THROWS_AS(ModeGridSpec::make(1000, 200, SpectralProfile::Flat, 1e6), ConfigError);
  CHECK_THROWS_AS(ModeGridSpec::make(1000, 100, SpectralProfile::Flat, 50), ConfigError);
  const auto g = ModeGridSpec::make(1000, 100, SpectralProfile::Flat, 1e6);
  CHECK(g.spacing() == doctest::Approx(0.2));
  CHECK(g.detuning(0) == doctest::Approx(-99.9));
  CHECK(g.detuning(999) == doctest::Approx(99.9));
  double sum = 0.0;
  for (std::size_t j = 0; j < g.n_modes; ++j) sum += g.coupling(j) * g.coupling(j);
  CHECK(sum == doctest::Approx(2 * 100 / pi).epsilon(1e-12));
  const auto c = ModeGridSpec::make(1000, 100, SpectralProfile::Cubic, 1e3);
  CHECK(c.coupling(999) * c.coupling(999) ==
        doctest::Approx(0.2 / pi * std::pow(1 + 99.9 / 1e3, 3)).epsilon(1e-12));
  CHECK(g.recurrence_time() == doctest::Approx(2 * pi / 0.2));
}

TEST_CASE("simulate guards") {
  const auto g = ModeGridSpec::make(1000, 100, SpectralProfile::Flat, 1e6);
  CHECK_THROWS_AS(simulate(g, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(simulate(g, -1.0, 0.01), ConfigError);
  CHECK_THROWS_AS(simulate(g, 10.5, 0.01), ConfigError);
  // A validated grid cannot recur before tau = 10; an aggregate-built one can.
  const ModeGridSpec coarse{100, 50.0, SpectralProfile::Flat, 1e6};
  CHECK(coarse.recurrence_time() < 7.0);
  CHECK_THROWS_AS(simulate(coarse, 7.0, 0.01), ConfigError);
}

TEST_CASE("tau_end = 0 gives the initial state") {
  const auto t = simulate(ModeGridSpec::make(1000, 100, SpectralProfile::Flat, 1e6), 0.0, 0.01);
  REQUIRE(t.excited_pop.size() == 1);
  CHECK(t.excited_pop[0] == 1.0);
  CHECK(t.field_energy[0] == 0.0);
  CHECK_THROWS_AS(spectrum_lorentzian_check(t), ConfigError);
  CHECK_THROWS_AS(fitted_decay_rate(t), ConfigError);
}

TEST_CASE("fitted decay rate of synthetic trajectories") {
  CHECK(fitted_decay_rate(synthetic(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fitted_decay_rate(synthetic(0.7)) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK_THROWS_AS(fitted_decay_rate(synthetic(1.0, 2.0)), ConfigError);
  auto bumpy = synthetic(1.0);
  bumpy.excited_pop[30] = 0.9;
  CHECK_THROWS_AS(fitted_decay_rate(bumpy), ConvergenceError);
}

TEST_CASE("default grid: finite-band rate, Lorentzian spectrum, unitarity") {
  const auto& t = default_run();
  CHECK(t.norm_drift <= kMaxNormDrift);
  CHECK(fitted_decay_rate(t) == doctest::Approx(finite_band_rate(200.0)).epsilon(2e-4));
  CHECK(fitted_decay_rate(t) == doctest::Approx(1.0).epsilon(1e-2));
  const auto fit = spectrum_lorentzian_check(t);
  CHECK(std::abs(fit.center) < 0.05);
  CHECK(fit.width == doctest::Approx(1.0).epsilon(0.02));
  CHECK(fit.max_rel_dev < 0.05);
  const double bound = t.grid.half_span_in_gamma / t.grid.ratio;
  for (std::size_t i = 0; i < t.times.size(); ++i)
    CHECK(std::abs(t.field_energy[i] - (1 - t.excited_pop[i])) <= bound);
  for (std::size_t i = 1; i < t.times.size(); ++i)
    CHECK(t.excited_pop[i] <= t.excited_pop[i - 1]);
}

TEST_CASE("rate shift halves with the band half-width") {
  const auto t = simulate(ModeGridSpec::make(1000, 100, SpectralProfile::Flat, 1e6), 3.5, 0.01);
  CHECK(fitted_decay_rate(t) == doctest::Approx(finite_band_rate(100.0)).epsilon(3e-4));
  CHECK(fitted_decay_rate(default_run()) - 1.0 ==
        doctest::Approx((fitted_decay_rate(t) - 1.0) / 2).epsilon(0.1));
}

TEST_CASE("cubic profile is indistinguishable from flat at ratio 1e6") {
  const auto flat = simulate(ModeGridSpec::make(1000, 100, SpectralProfile::Flat, 1e6), 3.5, 0.01);
  const auto cubic =
      simulate(ModeGridSpec::make(1000, 100, SpectralProfile::Cubic, 1e6), 3.5, 0.01);
  CHECK(fitted_decay_rate(cubic) == doctest::Approx(fitted_decay_rate(flat)).epsilon(1e-3));
  CHECK(fitted_decay_rate(cubic) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("doubling the mode count moves the width by less than 0.005") {
  const auto a = simulate(ModeGridSpec::make(1000, 100, SpectralProfile::Flat, 1e6), 5.0, 0.01);
  const auto b = simulate(ModeGridSpec::make(2000, 100, SpectralProfile::Flat, 1e6), 5.0, 0.01);
  CHECK(std::abs(spectrum_lorentzian_check(a).width - spectrum_lorentzian_check(b).width) < 0.005);
}
