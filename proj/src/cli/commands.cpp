#include "emission/cli/commands.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <optional>

#include "emission/errors.hpp"
#include "emission/parallel.hpp"

namespace emission::cli {

namespace {

void require_grid(const std::vector<double>& grid, const char* key) {
  if (grid.empty()) {
    throw ConfigError(std::string("[grid] ") + key + " is missing or empty");
  }
}

std::string describe_state(const InitialState& state) {
  std::string out;
  for (const auto& [m, c] : state.amplitudes()) {
    if (!out.empty()) out += ";";
    out += m.str() + ":(" + format_number(c.real(), 17) + "," + format_number(c.imag(), 17) + ")";
  }
  return out;
}

void add_transition_metadata(const RunConfig& c, Document& doc) {
  doc.metadata.push_back({"H", c.transition.H.str()});
  doc.metadata.push_back({"G", c.transition.G.str()});
  doc.metadata.push_back({"omega0_over_gamma", c.transition.omega0_over_gamma});
  doc.metadata.push_back({"initial_state", describe_state(c.initial_state)});
}

void add_scheme_metadata(const WWAScheme& scheme, Document& doc) {
  doc.metadata.push_back({"scheme", std::string(scheme.name())});
  if (!scheme.is_pure()) {
    doc.metadata.push_back({"lower_cutoff", scheme.lower_cutoff_in_gamma});
    doc.metadata.push_back({"upper_cutoff", scheme.upper_cutoff_in_gamma});
  }
}

double excited_norm(const InitialState& state) {
  double n = 0.0;
  for (const auto& [m, c] : state.amplitudes()) n += std::norm(c);
  return n;
}

}  // namespace

CommandResult cmd_energy(const RunConfig& c) {
  require_grid(c.time_grid, "tau");
  CommandResult result;
  auto& doc = result.document;
  doc.command = "energy";
  add_transition_metadata(c, doc);
  add_scheme_metadata(c.scheme, doc);

  Table t{"energy", {"tau", "atom", "field", "interaction", "total", "conservation_residual"}, {}};
  const double initial = excited_norm(c.initial_state);
  std::vector<EnergyBreakdown> values(c.time_grid.size());
  parallel_for(values.size(), [&](std::size_t i) {
    values[i] = energies(c.transition, c.initial_state, c.time_grid[i], c.scheme);
  });
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& e = values[i];
    t.add_row({c.time_grid[i], e.atom, e.field, e.interaction, e.total, e.total - initial});
  }
  doc.tables.push_back(std::move(t));
  return result;
}

CommandResult cmd_angmom(const RunConfig& c) {
  require_grid(c.time_grid, "tau");
  CommandResult result;
  auto& doc = result.document;
  doc.command = "angmom";
  add_transition_metadata(c, doc);
  doc.metadata.push_back({"hg_coefficient", std::string(c.hg_coefficient == HgCoefficient::AsPrinted
                                                            ? "as_printed"
                                                            : "conservation")});

  std::optional<PhotonAngularIntegrals> integrals;
  std::string failure;
  try {
    integrals = photon_angular_integrals(c.transition, c.initial_state);
  } catch (const ConvergenceError& e) {
    failure = e.what();
    result.failures.push_back(failure);
  }

  Table t{"angmom",
          {"tau", "atom_z", "field_z_closed", "field_z_numeric", "spin_z", "orbital_z",
           "conservation_residual", "closed_minus_numeric", "status"},
          {}};
  const double m0 = c.initial_state.population_moment();
  for (double tau : c.time_grid) {
    const double atom = atom_angmom_z(c.transition, c.initial_state, tau);
    const double closed =
        field_angmom_z_closed(c.transition, c.initial_state, tau, c.hg_coefficient);
    std::vector<Cell> row = {tau, atom, closed};
    if (integrals) {
      const double f = wwa_line_integral(tau) / std::numbers::pi;
      const double numeric = f * integrals->total();
      row.insert(row.end(), {numeric, f * integrals->spin, f * integrals->orbital,
                             atom + closed - m0, closed - numeric, std::string("ok")});
    } else {
      row.insert(row.end(), {Blank{}, Blank{}, Blank{}, atom + closed - m0, Blank{}, failure});
    }
    t.add_row(std::move(row));
  }
  doc.tables.push_back(std::move(t));
  return result;
}

CommandResult cmd_density(const RunConfig& c) {
  require_grid(c.time_grid, "tau");
  require_grid(c.radial_grid, "x");
  if (c.density_methods.empty()) throw ConfigError("[density] methods is empty");
  CommandResult result;
  auto& doc = result.document;
  doc.command = "density";
  const double ratio = c.transition.omega0_over_gamma;
  doc.metadata.push_back({"omega0_over_gamma", ratio});
  doc.metadata.push_back({"emitter", std::string("H=1 G=0 mH=0")});
  add_scheme_metadata(c.scheme, doc);

  std::vector<std::string> columns = {"tau", "x"};
  for (auto m : c.density_methods) columns.push_back(std::string("w_") + density_method_name(m));
  Table t{"density", columns, {}};

  bool needs_front = false;
  for (auto m : c.density_methods) needs_front |= m != DensityMethod::ClosedSmallX;

  for (double tau : c.time_grid) {
    const auto xs = needs_front ? grid_with_front(c.radial_grid, tau, ratio) : c.radial_grid;
    std::vector<std::map<double, double>> by_method;
    for (auto m : c.density_methods) {
      const auto profile = make_profile(m, xs, tau, c.scheme, ratio);
      std::map<double, double> values;
      for (const auto& p : profile.points) values[p.x] = p.w;
      by_method.push_back(std::move(values));
    }
    for (double x : xs) {
      std::vector<Cell> row = {tau, x};
      for (const auto& values : by_method) {
        const auto it = values.find(x);
        row.push_back(it == values.end() ? Cell{Blank{}} : Cell{it->second});
      }
      t.add_row(std::move(row));
    }
  }
  doc.tables.push_back(std::move(t));
  return result;
}

CommandResult cmd_oracle(const RunConfig& c) {
  if (!c.oracle) throw ConfigError("the oracle command needs an [oracle] section");
  const auto& o = *c.oracle;
  CommandResult result;
  auto& doc = result.document;
  doc.command = "oracle";
  doc.metadata.push_back({"n_modes", static_cast<double>(o.grid.n_modes)});
  doc.metadata.push_back({"half_span", o.grid.half_span_in_gamma});
  doc.metadata.push_back({"profile", std::string(spectral_profile_name(o.grid.profile))});
  doc.metadata.push_back({"ratio", o.grid.ratio});
  doc.metadata.push_back({"tau_end", o.tau_end});
  doc.metadata.push_back({"dt", o.dt});

  const auto traj = simulate(o.grid, o.tau_end, o.dt);

  Table trajectory{"trajectory",
                   {"tau", "excited_pop", "wwa_excited_pop", "field_energy",
                    "energy_bookkeeping_residual"},
                   {}};
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    trajectory.add_row({traj.times[i], traj.excited_pop[i], std::exp(-2.0 * traj.times[i]),
                        traj.field_energy[i], traj.field_energy[i] - (1.0 - traj.excited_pop[i])});
  }

  std::optional<LorentzianFit> fit;
  if (o.tau_end >= 5.0) fit = spectrum_lorentzian_check(traj);
  Table spectrum{"spectrum", {"delta", "population", "lorentzian_fit"}, {}};
  for (std::size_t j = 0; j < traj.detunings.size(); ++j) {
    Cell model = Blank{};
    if (fit) {
      const double u = (traj.detunings[j] - fit->center) / fit->width;
      model = fit->amplitude / (1.0 + u * u);
    }
    spectrum.add_row({traj.detunings[j], traj.mode_pops[j], model});
  }

  Table summary{"summary",
                {"gamma_fit", "lorentzian_center", "lorentzian_width", "lorentzian_max_rel_dev",
                 "norm_drift"},
                {}};
  Cell gamma_fit = Blank{};
  if (o.tau_end >= 3.0) gamma_fit = fitted_decay_rate(traj);
  summary.add_row({gamma_fit, fit ? Cell{fit->center} : Cell{Blank{}},
                   fit ? Cell{fit->width} : Cell{Blank{}},
                   fit ? Cell{fit->max_rel_dev} : Cell{Blank{}}, traj.norm_drift});

  doc.tables.push_back(std::move(trajectory));
  doc.tables.push_back(std::move(spectrum));
  doc.tables.push_back(std::move(summary));
  return result;
}

CommandResult cmd_cyclotron(const RunConfig& c) {
  if (!c.cyclotron) throw ConfigError("the cyclotron command needs a [cyclotron] section");
  require_grid(c.time_grid, "tau");
  const auto& spec = *c.cyclotron;
  CommandResult result;
  auto& doc = result.document;
  doc.command = "cyclotron";
  doc.metadata.push_back({"q_charge", spec.q_charge});
  doc.metadata.push_back({"B_field", spec.B_field});
  doc.metadata.push_back({"mass", spec.mass});
  doc.metadata.push_back({"omega_c", spec.omega_c()});
  doc.metadata.push_back({"gamma_c", cyclotron_decay_rate(spec)});

  Table t{"cyclotron",
          {"tau", "charge_energy", "field_energy", "energy_residual", "field_Lz",
           "field_Lz_quadrature", "printed_line_Lz", "classical_field_Lz", "angmom_residual"},
          {}};
  for (double tau : c.time_grid) {
    const auto e = cyclotron_energies(spec, tau);
    const double lz = cyclotron_field_angmom_z(spec, tau);
    const auto q = cyclotron_field_quadrature(spec, tau);
    const double charge_lz = std::exp(-2.0 * tau);
    t.add_row({tau, e.atom, e.field, e.total - 1.0, lz, q.angmom_z, q.printed_line,
               cyclotron_classical_field_angmom_z(tau), charge_lz + lz - 1.0});
  }
  doc.tables.push_back(std::move(t));
  return result;
}

CommandResult run_command(const std::string& name, const RunConfig& config) {
  if (name == "energy") return cmd_energy(config);
  if (name == "angmom") return cmd_angmom(config);
  if (name == "density") return cmd_density(config);
  if (name == "oracle") return cmd_oracle(config);
  if (name == "cyclotron") return cmd_cyclotron(config);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace emission::cli
