#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace emission::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1]. Supported sizes: 16, 32, 64, 128, 256.
const Rule& gauss_legendre(std::size_t n);

/// Uniform trapezoid on the periodic interval [0, 2 pi).
Rule periodic_trapezoid(std::size_t n);

template <typename T>
struct Result {
  T value{};
  double abs_error = 0.0;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

/// Adaptive Gauss-Kronrod (21 points) on [a, b]. Throws ConvergenceError
/// when the error estimate exceeds max(abs_tol, rel_tol * |I|).
Result<double> integrate(const RealFn& f, double a, double b, double abs_tol,
                         double rel_tol = 1e-12);
Result<std::complex<double>> integrate(const ComplexFn& f, double a, double b, double abs_tol,
                                       double rel_tol = 1e-12);

/// As above but with the interval first cut into panels of length `period`
/// (the oscillation period of the integrand) so each Kronrod panel sees at
/// most one cycle. `period <= 0` or a period longer than the interval
/// disables the panelling.
Result<std::complex<double>> integrate_oscillatory(const ComplexFn& f, double a, double b,
                                                   double period, double abs_tol);

}  // namespace emission::quadrature
