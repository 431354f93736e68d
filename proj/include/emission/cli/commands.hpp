#pragma once

#include <string>
#include <vector>

#include "emission/cli/config.hpp"
#include "emission/cli/output.hpp"

namespace emission::cli {

struct CommandResult {
  Document document;
  /// Numerical failures that left blank cells; a non-empty list maps to the
  /// convergence-failure exit code after the output is written.
  std::vector<std::string> failures;
};

CommandResult cmd_energy(const RunConfig& config);
CommandResult cmd_angmom(const RunConfig& config);
CommandResult cmd_density(const RunConfig& config);
CommandResult cmd_oracle(const RunConfig& config);
CommandResult cmd_cyclotron(const RunConfig& config);

/// Dispatches by subcommand name; throws ConfigError for an unknown name.
CommandResult run_command(const std::string& name, const RunConfig& config);

}  // namespace emission::cli
