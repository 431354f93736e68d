#include <CLI11.hpp>
#include <iostream>

#include "emission/cli/commands.hpp"
#include "emission/errors.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitConvergence = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace emission;

  CLI::App app{"Spontaneous-emission observables under the Weisskopf-Wigner approximation"};
  app.require_subcommand(1);
  std::string config_path;
  cli::Overrides overrides;
  const std::pair<const char*, const char*> commands[] = {
      {"energy", "atom, field and interaction energies over the tau grid"},
      {"angmom", "atom and field angular momentum, closed form and angular quadrature"},
      {"density", "radial energy-density profiles"},
      {"oracle", "discrete-mode Schroedinger integration without the WWA"},
      {"cyclotron", "charged particle in a magnetic field"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option_function<std::string>(
        "--out", [&](const std::string& v) { overrides.out = v; }, "output path (default: stdout)");
    sub->add_option_function<std::string>(
           "--format", [&](const std::string& v) { overrides.format = v; }, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option_function<std::string>(
           "--scheme", [&](const std::string& v) { overrides.scheme = v; }, "pure or modified")
        ->check(CLI::IsMember({"pure", "modified"}));
    sub->add_flag("--as-printed-hg-coefficient", overrides.as_printed_hg_coefficient,
                  "use 1/[H(H+1)(2H+1)] for H = G in the closed-form field angular momentum");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    auto config = cli::load_config(config_path);
    cli::apply_overrides(config, overrides);
    const auto result = cli::run_command(command, config);
    cli::emit(result.document, config.output, std::cout);
    if (!result.failures.empty()) {
      for (const auto& f : result.failures) std::cerr << "emission: " << f << '\n';
      return kExitConvergence;
    }
    return 0;
  } catch (const ConvergenceError& e) {
    std::cerr << "emission: numerical failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const ConfigError& e) {
    std::cerr << "emission: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "emission: domain error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "emission: " << e.what() << '\n';
    return kExitConfig;
  }
}
