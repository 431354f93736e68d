#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "emission/angular_algebra.hpp"
#include "emission/errors.hpp"
#include "emission/quadrature.hpp"
#include "emission/wwa_core.hpp"
#include "racah_oracle.hpp"

using namespace emission;
using std::numbers::pi;

namespace {

HalfIntegerJ J(int twice) { return HalfIntegerJ::from_twice(twice); }
HalfInteger M(int twice) { return HalfInteger::from_twice(twice); }

double cg(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  return clebsch_gordan(J(tj1), M(tm1), J(tj2), M(tm2), J(tJ), M(tM));
}

}  // namespace

TEST_CASE("HalfInteger parsing and projections") {
  CHECK(HalfInteger::parse("3/2").twice() == 3);
  CHECK(HalfInteger::parse("-1/2").twice() == -1);
  CHECK(HalfInteger::parse("1.5").twice() == 3);
  CHECK(HalfInteger::parse("-2").twice() == -4);
  CHECK_THROWS_AS(HalfInteger::parse("1/3"), ConfigError);
  CHECK_THROWS_AS(HalfInteger::parse("0.3"), ConfigError);
  CHECK_THROWS_AS(HalfInteger::parse("x"), ConfigError);
  CHECK_THROWS_AS(HalfIntegerJ::from_twice(-1), ConfigError);
  CHECK(J(3).projections().size() == 4);
  CHECK(J(2).admits(M(-2)));
  CHECK_FALSE(J(2).admits(M(1)));
  CHECK(HalfInteger::from_twice(-3).str() == "-3/2");
}

TEST_CASE("Clebsch-Gordan spot values") {
  CHECK(cg(2, 2, 2, 0, 2, 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(cg(2, 2, 2, 2, 2, 2) == 0.0);
  CHECK(cg(2, 2, 2, -2, 0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(cg(2, 0, 2, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  // Triangle violation and invalid projections give 0.
  CHECK(cg(2, 0, 2, 0, 6, 0) == 0.0);
  CHECK(cg(2, 4, 2, 0, 2, 4) == 0.0);
  CHECK(cg(1, 1, 1, -1, 0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("Clebsch-Gordan against the exact rational Racah oracle, j <= 4") {
  double worst = 0.0;
  for (int tj1 = 0; tj1 <= 8; ++tj1)
    for (int tj2 = 0; tj2 <= 8; ++tj2)
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
          for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
            const int tM = tm1 + tm2;
            if (std::abs(tM) > tJ) continue;
            const double ref = racah::cg(tj1, tm1, tj2, tm2, tJ, tM);
            const double got = cg(tj1, tm1, tj2, tm2, tJ, tM);
            worst = std::max(worst, std::abs(got - ref) / std::max(1.0, std::abs(ref)));
          }
  CHECK(worst < 1e-13);
}

TEST_CASE("Clebsch-Gordan orthogonality, j <= 4") {
  double worst = 0.0;
  for (int tj1 = 0; tj1 <= 8; ++tj1)
    for (int tj2 = 0; tj2 <= 8; ++tj2)
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2)
          for (int tM = -std::min(tJ, tJp); tM <= std::min(tJ, tJp); tM += 2) {
            double sum = 0.0;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
              const int tm2 = tM - tm1;
              if (std::abs(tm2) > tj2) continue;
              sum += cg(tj1, tm1, tj2, tm2, tJ, tM) * cg(tj1, tm1, tj2, tm2, tJp, tM);
            }
            worst = std::max(worst, std::abs(sum - (tJ == tJp ? 1.0 : 0.0)));
          }
  CHECK(worst < 1e-12);
}

TEST_CASE("Clebsch-Gordan at j = 20 stays within 1e-13 of the oracle") {
  const int pairs[][6] = {{40, 2, 2, 0, 40, 2}, {40, -10, 2, 2, 38, -8}, {39, 1, 2, -2, 41, -1}};
  for (const auto& p : pairs) {
    const double ref = racah::cg(p[0], p[1], p[2], p[3], p[4], p[5]);
    CHECK(cg(p[0], p[1], p[2], p[3], p[4], p[5]) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("spherical polarization components") {
  CHECK(std::abs(spherical_polarization(Polarization::phi, 0, 0.3, 1.1)) == 0.0);
  CHECK(spherical_polarization(Polarization::theta, 0, pi / 2, 0.0).real() ==
        doctest::Approx(-1.0));
  const auto e = spherical_polarization(Polarization::theta, 1, 0.4, 0.7);
  const auto expected = -std::cos(0.4) / std::sqrt(2.0) * std::polar(1.0, 0.7);
  CHECK(std::abs(e - expected) < 1e-15);
  const auto f = spherical_polarization(Polarization::phi, -1, 0.4, 0.7);
  CHECK(std::abs(f - std::complex<double>(0, -1) / std::sqrt(2.0) * std::polar(1.0, -0.7)) < 1e-15);
  CHECK_THROWS_AS(spherical_polarization(Polarization::theta, 2, 0.0, 0.0), ConfigError);
  for (double th : {0.0, 0.3, 1.2, 2.9}) {
    for (double ph : {0.0, 1.0, 4.0}) {
      double sum = 0.0;
      for (auto lam : kPolarizations)
        for (int q = -1; q <= 1; ++q) sum += std::norm(spherical_polarization(lam, q, th, ph));
      CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("coupling amplitude examples and theta derivative") {
  const auto spec = TransitionSpec::make(J(2), J(0));
  const double th = 0.8;
  const auto v = coupling_amplitude(spec, M(0), M(0), Polarization::theta, th, 0.3);
  // Magnitude sin(theta)/sqrt(3); the overall sign follows the Condon-Shortley bracket.
  CHECK(std::abs(v) == doctest::Approx(std::sin(th) / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(std::abs(coupling_amplitude(spec, M(0), M(0), Polarization::phi, th, 0.3)) == 0.0);

  const auto spec2 = TransitionSpec::make(J(4), J(2));
  const double h = 1e-6;
  for (auto lam : kPolarizations) {
    const auto d = coupling_amplitude_dtheta(spec2, M(0), M(2), lam, th, 0.5);
    const auto fd = (coupling_amplitude(spec2, M(0), M(2), lam, th + h, 0.5) -
                     coupling_amplitude(spec2, M(0), M(2), lam, th - h, 0.5)) /
                    (2 * h);
    CHECK(std::abs(d - fd) < 1e-8);
  }
}

TEST_CASE("solid-angle sum of |coupling|^2 is 8 pi / [3 (2H+1)] for every mH") {
  const auto& u = quadrature::gauss_legendre(32);
  const auto phi = quadrature::periodic_trapezoid(64);
  for (int tH = 0; tH <= 6; ++tH) {
    for (int tG = tH >= 2 ? tH - 2 : tH; tG <= tH + 2; tG += 2) {
      if (tH == 0 && tG == 0) continue;
      const auto spec = TransitionSpec::make(J(tH), J(tG));
      const double expected = 8 * pi / (3.0 * (tH + 1));
      for (auto mH : spec.H.projections()) {
        double total = 0.0;
        for (std::size_t i = 0; i < u.nodes.size(); ++i) {
          const double th = std::acos(u.nodes[i]);
          for (std::size_t k = 0; k < phi.nodes.size(); ++k) {
            for (auto mG : spec.G.projections())
              for (auto lam : kPolarizations)
                total += u.weights[i] * phi.weights[k] *
                         std::norm(coupling_amplitude(spec, mG, mH, lam, th, phi.nodes[k]));
          }
        }
        CHECK(total == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("coupling magnitude is independent of phi") {
  const auto spec = TransitionSpec::make(J(6), J(4));
  for (auto mH : spec.H.projections())
    for (auto mG : spec.G.projections())
      for (auto lam : kPolarizations) {
        const double a = std::abs(coupling_amplitude(spec, mG, mH, lam, 1.1, 0.0));
        for (double ph : {0.7, 2.5, 5.9}) {
          CHECK(std::abs(std::abs(coupling_amplitude(spec, mG, mH, lam, 1.1, ph)) - a) < 1e-14);
        }
      }
}

TEST_CASE("branching ratios sum to one and agree with both bracket orderings") {
  for (int tH = 0; tH <= 6; ++tH)
    for (int tG = tH >= 2 ? tH - 2 : tH; tG <= tH + 2; tG += 2) {
      if (tH == 0 && tG == 0) continue;
      const auto spec = TransitionSpec::make(J(tH), J(tG));
      for (auto mH : spec.H.projections()) {
        double sum = 0.0;
        for (auto mG : spec.G.projections()) {
          const double b = branching_ratio(spec, mG, mH);
          sum += b;
          // <G mG; 1 q | H mH>^2 = (2H+1)/(2G+1) <H mH; 1 -q | G mG>^2.
          const int tq = mH.twice() - mG.twice();
          if (std::abs(tq) > 2) continue;
          const double alt = clebsch_gordan(spec.H, mH, J(2), HalfInteger::from_twice(-tq),
                                            spec.G, mG);
          CHECK(b == doctest::Approx(alt * alt * (tH + 1.0) / (tG + 1.0)).epsilon(1e-12));
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
      }
    }
}
