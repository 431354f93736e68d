#pragma once

#include "emission/half_integer.hpp"

namespace emission {

/// Electric-dipole transition H -> G with the dimensionless ratio omega0/gamma.
struct TransitionSpec {
  HalfIntegerJ H;
  HalfIntegerJ G;
  double omega0_over_gamma = 1e6;

  /// Validates the dipole selection rules (|H-G| <= 1, not 0 -> 0) and
  /// omega0_over_gamma >= 1e3; throws ConfigError otherwise.
  static TransitionSpec make(HalfIntegerJ H, HalfIntegerJ G, double omega0_over_gamma = 1e6);
};

}  // namespace emission
