#include "emission/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "emission/errors.hpp"

namespace emission::quadrature {

namespace {

template <std::size_t N>
Rule expand_rule() {
  // Boost stores the non-negative half of the symmetric rule.
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.nodes.push_back(0.0);
      r.weights.push_back(w[i]);
      continue;
    }
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

constexpr int kMaxDepth = 40;

// One 21-point Kronrod panel with its embedded 10-point Gauss error estimate.
template <typename T>
Result<T> kronrod_panel(const std::function<T(double)>& f, double a, double b) {
  double err = 0.0;
  const T v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &err);
  // Boost reports |K - G| on the rule mapped to [-1, 1].
  return {v, err * 0.5 * (b - a)};
}

template <typename T>
void bisect(const std::function<T(double)>& f, double a, double b, const Result<T>& whole,
            double tol, int depth, Result<T>& acc) {
  if (whole.abs_error <= tol || depth >= kMaxDepth) {
    acc.value += whole.value;
    acc.abs_error += whole.abs_error;
    return;
  }
  const double mid = 0.5 * (a + b);
  const auto left = kronrod_panel(f, a, mid);
  const auto right = kronrod_panel(f, mid, b);
  bisect(f, a, mid, left, 0.5 * tol, depth + 1, acc);
  bisect(f, mid, b, right, 0.5 * tol, depth + 1, acc);
}

template <typename T>
Result<T> checked_gk(const std::function<T(double)>& f, double a, double b, double abs_tol,
                     double rel_tol) {
  if (b == a) return {};
  const auto first = kronrod_panel(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::abs(first.value));
  Result<T> acc{};
  bisect(f, a, b, first, tol, 0, acc);
  if (!std::isfinite(std::abs(acc.value)) ||
      acc.abs_error > std::max(tol, rel_tol * std::abs(acc.value))) {
    throw ConvergenceError("Gauss-Kronrod failed on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]: error estimate " +
                           std::to_string(acc.abs_error));
  }
  return acc;
}

}  // namespace

const Rule& gauss_legendre(std::size_t n) {
  static const std::map<std::size_t, Rule> rules = {
      {16, expand_rule<16>()},   {32, expand_rule<32>()},   {64, expand_rule<64>()},
      {128, expand_rule<128>()}, {256, expand_rule<256>()},
  };
  auto it = rules.find(n);
  if (it == rules.end()) {
    throw ConfigError("unsupported Gauss-Legendre size " + std::to_string(n) +
                      " (use 16, 32, 64, 128 or 256)");
  }
  return it->second;
}

Rule periodic_trapezoid(std::size_t n) {
  if (n == 0) throw ConfigError("trapezoid rule needs at least one node");
  Rule r;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.nodes.push_back(h * static_cast<double>(i));
    r.weights.push_back(h);
  }
  return r;
}

Result<double> integrate(const RealFn& f, double a, double b, double abs_tol, double rel_tol) {
  return checked_gk<double>(f, a, b, abs_tol, rel_tol);
}

Result<std::complex<double>> integrate(const ComplexFn& f, double a, double b, double abs_tol,
                                       double rel_tol) {
  return checked_gk<std::complex<double>>(f, a, b, abs_tol, rel_tol);
}

Result<std::complex<double>> integrate_oscillatory(const ComplexFn& f, double a, double b,
                                                   double period, double abs_tol) {
  const double length = b - a;
  if (length <= 0.0) return {};
  std::size_t panels = 1;
  if (period > 0.0 && period < length) {
    panels = static_cast<std::size_t>(std::ceil(length / period));
  }
  // Panel tolerance is shared so the summed error stays within abs_tol.
  const double panel_tol = abs_tol / static_cast<double>(panels);
  Result<std::complex<double>> total;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = a + length * static_cast<double>(i) / static_cast<double>(panels);
    const double hi = (i + 1 == panels)
                          ? b
                          : a + length * static_cast<double>(i + 1) / static_cast<double>(panels);
    const auto r = checked_gk<std::complex<double>>(f, lo, hi, panel_tol, 1e-13);
    total.value += r.value;
    total.abs_error += r.abs_error;
  }
  if (!(total.abs_error <= std::max(abs_tol, 1e-13 * std::abs(total.value)))) {
    throw ConvergenceError("oscillatory quadrature error estimate " +
                           std::to_string(total.abs_error) + " exceeds tolerance " +
                           std::to_string(abs_tol));
  }
  return total;
}

}  // namespace emission::quadrature
