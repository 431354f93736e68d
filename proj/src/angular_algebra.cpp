#include "emission/angular_algebra.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "emission/errors.hpp"

namespace emission {

// ---------------------------------------------------------------------------
// HalfInteger / HalfIntegerJ

HalfInteger HalfInteger::parse(std::string_view text) {
  auto fail = [&] {
    return ConfigError("not an integer or half-integer: '" + std::string(text) + "'");
  };
  auto to_int = [&](std::string_view s) {
    int v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw fail();
    return v;
  };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (to_int(text.substr(slash + 1)) != 2) throw fail();
    const int num = to_int(text.substr(0, slash));
    if (num % 2 == 0) throw fail();
    return from_twice(num);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size()) throw fail();
    const double twice = 2.0 * v;
    if (std::abs(twice - std::round(twice)) > 1e-12) throw fail();
    return from_twice(static_cast<int>(std::lround(twice)));
  }
  return from_int(to_int(text));
}

std::string HalfInteger::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

HalfIntegerJ HalfIntegerJ::from_twice(int twice_j) {
  if (twice_j < 0) throw ConfigError("angular momentum must be non-negative");
  HalfIntegerJ j;
  j.twice_ = twice_j;
  return j;
}

HalfIntegerJ HalfIntegerJ::parse(std::string_view text) {
  return from_twice(HalfInteger::parse(text).twice());
}

std::vector<HalfInteger> HalfIntegerJ::projections() const {
  std::vector<HalfInteger> ms;
  ms.reserve(twice_ + 1);
  for (int tm = -twice_; tm <= twice_; tm += 2) ms.push_back(HalfInteger::from_twice(tm));
  return ms;
}

// ---------------------------------------------------------------------------
// Clebsch-Gordan

namespace {

constexpr int kMaxFactorial = 170;

// n! for n <= 25 is built by exact integer multiplication in long double
// (64-bit mantissa holds these products exactly); beyond that each entry is
// correctly rounded from the previous one.
const std::array<long double, kMaxFactorial + 1>& factorials() {
  static const auto table = [] {
    std::array<long double, kMaxFactorial + 1> f{};
    f[0] = 1.0L;
    for (int n = 1; n <= kMaxFactorial; ++n) f[n] = f[n - 1] * static_cast<long double>(n);
    return f;
  }();
  return table;
}

long double fact(int n) { return factorials()[static_cast<std::size_t>(n)]; }

}  // namespace

double clebsch_gordan(HalfIntegerJ j1, HalfInteger m1, HalfIntegerJ j2, HalfInteger m2,
                      HalfIntegerJ J, HalfInteger M) {
  if (!j1.admits(m1) || !j2.admits(m2) || !J.admits(M)) return 0.0;
  if (m1.twice() + m2.twice() != M.twice()) return 0.0;
  const int tj1 = j1.twice(), tj2 = j2.twice(), tJ = J.twice();
  if ((tj1 + tj2 + tJ) % 2 != 0) return 0.0;
  if (tJ > tj1 + tj2 || tJ < std::abs(tj1 - tj2)) return 0.0;
  if ((tj1 + tj2 + tJ) / 2 + 1 > kMaxFactorial) {
    throw ConfigError("clebsch_gordan: angular momenta too large");
  }

  const int tm1 = m1.twice(), tm2 = m2.twice(), tM = M.twice();
  // All factorial arguments below are integers.
  const int a = (tj1 + tj2 - tJ) / 2;   // j1 + j2 - J
  const int b = (tj1 - tj2 + tJ) / 2;   // j1 - j2 + J
  const int c = (-tj1 + tj2 + tJ) / 2;  // -j1 + j2 + J
  const int d = (tj1 + tj2 + tJ) / 2 + 1;
  const int j1pm1 = (tj1 + tm1) / 2, j1mm1 = (tj1 - tm1) / 2;
  const int j2pm2 = (tj2 + tm2) / 2, j2mm2 = (tj2 - tm2) / 2;
  const int JpM = (tJ + tM) / 2, JmM = (tJ - tM) / 2;

  const long double pref = (tJ + 1) * fact(a) * fact(b) * fact(c) / fact(d) * fact(j1pm1) *
                           fact(j1mm1) * fact(j2pm2) * fact(j2mm2) * fact(JpM) * fact(JmM);

  // Denominator arguments: k, a - k, j1 - m1 - k, j2 + m2 - k,
  // J - j2 + m1 + k, J - j1 - m2 + k.
  const int e = (tJ - tj2 + tm1) / 2;
  const int g = (tJ - tj1 - tm2) / 2;
  const int kmin = std::max({0, -e, -g});
  const int kmax = std::min({a, j1mm1, j2pm2});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term =
        1.0L / (fact(k) * fact(a - k) * fact(j1mm1 - k) * fact(j2pm2 - k) * fact(e + k) *
                fact(g + k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(std::sqrt(pref) * sum);
}

// ---------------------------------------------------------------------------
// Polarizations and couplings

namespace {

using cd = std::complex<double>;
constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_q(int q) {
  if (q < -1 || q > 1) throw ConfigError("spherical component q must be -1, 0 or 1");
}

}  // namespace

cd spherical_polarization(Polarization lambda, int q, double theta_k, double phi_k) {
  check_q(q);
  if (lambda == Polarization::theta) {
    if (q == 0) return {-std::sin(theta_k), 0.0};
    const double c = std::cos(theta_k) * kInvSqrt2;
    return q == 1 ? -c * std::polar(1.0, phi_k) : c * std::polar(1.0, -phi_k);
  }
  if (q == 0) return {0.0, 0.0};
  return cd(0.0, -kInvSqrt2) * std::polar(1.0, q * phi_k);
}

cd spherical_polarization_dtheta(Polarization lambda, int q, double theta_k, double phi_k) {
  check_q(q);
  if (lambda == Polarization::phi) return {0.0, 0.0};
  if (q == 0) return {-std::cos(theta_k), 0.0};
  const double s = std::sin(theta_k) * kInvSqrt2;
  return q == 1 ? s * std::polar(1.0, phi_k) : -s * std::polar(1.0, -phi_k);
}

namespace {

const HalfIntegerJ kOne = HalfIntegerJ::from_int(1);

template <typename Eps>
cd coupling_sum(const TransitionSpec& spec, HalfInteger mG, HalfInteger mH, Eps&& eps) {
  // Only q = mH - mG survives the CG selection rule.
  const int twice_q = mH.twice() - mG.twice();
  if (twice_q % 2 != 0 || twice_q < -2 || twice_q > 2) return {0.0, 0.0};
  const int q = twice_q / 2;
  const double cg = clebsch_gordan(spec.H, mH, kOne, HalfInteger::from_int(-q), spec.G, mG);
  if (cg == 0.0) return {0.0, 0.0};
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  return cg * sign * eps(q) / std::sqrt(spec.G.twice() + 1.0);
}

}  // namespace

cd coupling_amplitude(const TransitionSpec& spec, HalfInteger mG, HalfInteger mH,
                      Polarization lambda, double theta_k, double phi_k) {
  return coupling_sum(spec, mG, mH,
                      [&](int q) { return spherical_polarization(lambda, q, theta_k, phi_k); });
}

cd coupling_amplitude_dtheta(const TransitionSpec& spec, HalfInteger mG, HalfInteger mH,
                             Polarization lambda, double theta_k, double phi_k) {
  return coupling_sum(spec, mG, mH, [&](int q) {
    return spherical_polarization_dtheta(lambda, q, theta_k, phi_k);
  });
}

double branching_ratio(const TransitionSpec& spec, HalfInteger mG, HalfInteger mH) {
  const double cg = clebsch_gordan(spec.G, mG, kOne, mH - mG, spec.H, mH);
  return cg * cg;
}

}  // namespace emission
