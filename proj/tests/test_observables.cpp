#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "emission/errors.hpp"
#include "emission/observables.hpp"

using namespace emission;
using std::numbers::pi;

namespace {

HalfIntegerJ J(int twice) { return HalfIntegerJ::from_twice(twice); }
HalfInteger M(int twice) { return HalfInteger::from_twice(twice); }
constexpr double kLate = 40.0;

// Every dipole-allowed (H, G) pair with 2H, 2G <= 6.
std::vector<TransitionSpec> transitions() {
  std::vector<TransitionSpec> out;
  for (int tH = 1; tH <= 6; ++tH)
    for (int tG = tH >= 2 ? tH - 2 : tH; tG <= std::min(tH + 2, 6); tG += 2) {
      if (tH == 0 && tG == 0) continue;
      out.push_back(TransitionSpec::make(J(tH), J(tG)));
    }
  return out;
}

}  // namespace

TEST_CASE("pure energies") {
  const auto spec = TransitionSpec::make(J(2), J(0));
  const auto st = InitialState::basis(J(2), M(0));
  auto e = energies(spec, st, 0.0);
  CHECK(e.atom == 1.0);
  CHECK(e.field == 0.0);
  CHECK(e.interaction == 0.0);
  e = energies(spec, st, std::log(2.0) / 2);
  CHECK(e.atom == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(e.field == doctest::Approx(0.5).epsilon(1e-14));
  e = energies(spec, st, kLate);
  CHECK(e.atom == doctest::Approx(0.0));
  CHECK(e.field == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& s : transitions())
    for (double tau : {0.0, 0.3, 1.0, 4.0}) {
      const auto b = energies(s, InitialState::basis(s.H, s.H.as_half_integer()), tau);
      CHECK(std::abs(b.total - 1.0) < 1e-12);
    }
}

TEST_CASE("modified energies lose only the truncated Lorentzian tails") {
  const auto spec = TransitionSpec::make(J(2), J(0));
  const auto st = InitialState::basis(J(2), M(2));
  for (double tau : {0.5, 1.0, 5.0}) {
    const auto e = energies(spec, st, tau, WWAScheme::modified());
    CHECK(e.total == doctest::Approx(e.atom + e.field + e.interaction).epsilon(1e-15));
    CHECK(std::abs(e.interaction) < 1e-12);
    const double lost = (1 + std::exp(-2 * tau)) * (pi - 2 * std::atan(1000.0)) / pi;
    // The tail estimate holds to the oscillatory remainder 4 e^{-tau} / (tau L^2 pi).
    CHECK(std::abs((1.0 - e.total) - lost) < 2 * std::exp(-tau) / (tau * 1e6));
    CHECK(1.0 - e.total > 6e-4);
  }
}

TEST_CASE("angular momentum brackets") {
  CHECK(atom_bracket(J(2), J(0)) == 0.0);
  CHECK(atom_bracket(J(4), J(2)) == doctest::Approx(0.5));
  CHECK(atom_bracket(J(2), J(2)) == doctest::Approx(0.5));
  CHECK(atom_bracket(J(2), J(4)) == doctest::Approx(1.5));
  CHECK(field_bracket(J(2), J(0)) == doctest::Approx(1.0));
  CHECK(field_bracket(J(2), J(4)) == doctest::Approx(-0.5));
  CHECK(field_bracket(J(2), J(2)) == doctest::Approx(0.5));
  CHECK(field_bracket(J(2), J(2), HgCoefficient::AsPrinted) == doctest::Approx(1.0 / 6));
  CHECK(field_bracket(J(4), J(4)) == doctest::Approx(1.0 / 6));
  CHECK(field_bracket(J(4), J(4), HgCoefficient::AsPrinted) == doctest::Approx(1.0 / 30));
  for (const auto& s : transitions())
    CHECK(atom_bracket(s.H, s.G) + field_bracket(s.H, s.G) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closed-form endpoints") {
  const auto s10 = TransitionSpec::make(J(2), J(0));
  for (int tm : {-2, 0, 2})
    CHECK(std::abs(atom_angmom_z(s10, InitialState::basis(J(2), M(tm)), kLate)) < 1e-15);
  const auto s21 = TransitionSpec::make(J(4), J(2));
  CHECK(atom_angmom_z(s21, InitialState::basis(J(4), M(4)), kLate) == doctest::Approx(1.0));
  const auto s11 = TransitionSpec::make(J(2), J(2));
  CHECK(atom_angmom_z(s11, InitialState::basis(J(2), M(2)), kLate) == doctest::Approx(0.5));
  CHECK(field_angmom_z_closed(s10, InitialState::basis(J(2), M(2)), kLate) == doctest::Approx(1.0));
  const auto s12 = TransitionSpec::make(J(2), J(4));
  CHECK(field_angmom_z_closed(s12, InitialState::basis(J(2), M(2)), kLate) ==
        doctest::Approx(-0.5));
  CHECK(field_angmom_z_closed(s11, InitialState::basis(J(2), M(2)), kLate) ==
        doctest::Approx(0.5));
  CHECK(field_angmom_z_closed(s11, InitialState::basis(J(2), M(2)), kLate,
                              HgCoefficient::AsPrinted) == doctest::Approx(1.0 / 6));
}

TEST_CASE("numeric oracle settles the H = G coefficient") {
  const auto s11 = TransitionSpec::make(J(2), J(2));
  const double v = field_angmom_z_numeric(s11, InitialState::basis(J(2), M(2)), kLate);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::abs(v - 1.0 / 6) > 0.3);
}

TEST_CASE("numeric oracle agrees with the closed form and conserves J_z, H, G <= 3") {
  for (const auto& s : transitions()) {
    for (auto m : s.H.projections()) {
      const auto st = InitialState::basis(s.H, m);
      const auto I = photon_angular_integrals(s, st);
      CHECK(I.norm == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(I.gradient) < 1e-10);
      for (double tau : {0.0, 0.5, 2.0, kLate}) {
        const auto am = angular_momenta(s, st, tau);
        const double closed = field_angmom_z_closed(s, st, tau);
        CHECK(std::abs(am.field_z - closed) < 1e-8);
        CHECK(std::abs(am.atom_z + closed - am.initial_atom_z) < 1e-9);
        CHECK(std::abs(am.atom_z + am.field_z - am.initial_atom_z) < 1e-9);
        CHECK(std::abs(am.spin_z - am.field_z / 2) < 1e-8);
        CHECK(std::abs(am.orbital_z - am.field_z / 2) < 1e-8);
      }
    }
  }
}

TEST_CASE("spin and orbital halves") {
  const auto s10 = TransitionSpec::make(J(2), J(0));
  auto so = spin_orbital_angmom_z(s10, InitialState::basis(J(2), M(2)), kLate);
  CHECK(so.spin == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(so.orbital == doctest::Approx(0.5).epsilon(1e-10));
  so = spin_orbital_angmom_z(s10, InitialState::basis(J(2), M(2)), 0.0);
  CHECK(so.spin == 0.0);
  CHECK(so.orbital == 0.0);
  const auto s21 = TransitionSpec::make(J(4), J(2));
  so = spin_orbital_angmom_z(s21, InitialState::basis(J(4), M(4)), kLate);
  CHECK(so.spin == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(so.orbital == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(field_angmom_z_numeric(s10, InitialState::basis(J(2), M(0)), 1.0) ==
        doctest::Approx(0.0));
}

TEST_CASE("z-observables depend only on populations") {
  std::mt19937 rng(20261016);
  std::uniform_real_distribution<double> phase(0.0, 2 * pi);
  const auto spec = TransitionSpec::make(J(4), J(4));
  const std::vector<double> pops = {0.1, 0.3, 0.2, 0.15, 0.25};
  const auto ms = spec.H.projections();
  std::map<HalfInteger, std::complex<double>> real_amps;
  for (std::size_t i = 0; i < ms.size(); ++i) real_amps[ms[i]] = std::sqrt(pops[i]);
  const auto ref = angular_momenta(spec, InitialState::make(spec.H, real_amps), 1.3);
  for (int trial = 0; trial < 3; ++trial) {
    auto amps = real_amps;
    for (auto& [m, c] : amps) c *= std::polar(1.0, phase(rng));
    const auto am = angular_momenta(spec, InitialState::make(spec.H, amps), 1.3);
    CHECK(std::abs(am.field_z - ref.field_z) < 1e-12);
    CHECK(std::abs(am.spin_z - ref.spin_z) < 1e-12);
    CHECK(std::abs(am.orbital_z - ref.orbital_z) < 1e-12);
    CHECK(std::abs(am.atom_z - ref.atom_z) < 1e-14);
  }
}

TEST_CASE("time profile is 1 - e^{-2 tau} for every transition") {
  for (const auto& s : transitions()) {
    const auto st = InitialState::basis(s.H, s.H.as_half_integer());
    const double late = field_angmom_z_closed(s, st, kLate);
    if (late == 0.0) continue;
    for (double tau : {0.2, 1.0, 3.0})
      CHECK(field_angmom_z_closed(s, st, tau) / late ==
            doctest::Approx(1 - std::exp(-2 * tau)).epsilon(1e-14));
  }
}
