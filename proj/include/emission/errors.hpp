#pragma once

#include <stdexcept>
#include <string>

namespace emission {

/// Invalid user-supplied parameters (bad quantum numbers, non-normalized
/// states, grids that violate their invariants).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its stated accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside the domain where a formula is finite.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace emission
