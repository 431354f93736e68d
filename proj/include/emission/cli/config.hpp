#pragma once

// Run configuration: a flat key = value text file with [section] headers.
//
//   [transition]  H, G, omega0_over_gamma
//   [state]       amplitude[m] = re [im]        (default: all population in m = H)
//   [scheme]      variant = pure|modified, lower_cutoff, upper_cutoff
//   [grid]        tau, x: comma lists or linspace(a, b, n)
//   [density]     methods = closed, quadrature, farfield, classical
//   [oracle]      n_modes, half_span, profile = flat|cubic, ratio, tau_end, dt
//   [cyclotron]   q_charge, B_field, mass
//   [output]      format = csv|json, path, hg_coefficient = conservation|as_printed
//
// '#' and ';' start comments. Unknown sections or keys are errors.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emission/cyclotron.hpp"
#include "emission/modebath_oracle.hpp"
#include "emission/observables.hpp"
#include "emission/radial_fields.hpp"
#include "emission/transition.hpp"
#include "emission/wwa_core.hpp"

namespace emission::cli {

enum class OutputFormat { Csv, Json };

struct OracleConfig {
  ModeGridSpec grid;
  double tau_end = 5.0;
  double dt = 0.005;
};

struct OutputConfig {
  OutputFormat format = OutputFormat::Csv;
  std::string path;  // empty: standard output
};

struct RunConfig {
  TransitionSpec transition;
  InitialState initial_state;
  WWAScheme scheme;
  std::vector<double> time_grid;
  std::vector<double> radial_grid;
  std::vector<DensityMethod> density_methods;
  std::optional<OracleConfig> oracle;
  std::optional<CyclotronSpec> cyclotron;
  HgCoefficient hg_coefficient = HgCoefficient::Conservation;
  OutputConfig output;
};

/// Command-line values that replace their config-file counterparts.
struct Overrides {
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> scheme;
  bool as_printed_hg_coefficient = false;
};

/// Parses config text. Errors are ConfigError with "<source>:<line>: ...".
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");

/// Reads and parses a file; an unreadable file is a ConfigError.
RunConfig load_config(const std::filesystem::path& path);

void apply_overrides(RunConfig& config, const Overrides& overrides);

/// Parses "0, 0.5, 1" or "linspace(0, 5, 11)".
std::vector<double> parse_grid(std::string_view text);

OutputFormat parse_format(std::string_view text);

}  // namespace emission::cli
