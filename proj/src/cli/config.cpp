#include "emission/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "emission/errors.hpp"

namespace emission::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"transition", {"H", "G", "omega0_over_gamma"}},
      {"state", {"normalize"}},  // plus amplitude[m]
      {"scheme", {"variant", "lower_cutoff", "upper_cutoff"}},
      {"grid", {"tau", "x"}},
      {"density", {"methods"}},
      {"oracle", {"n_modes", "half_span", "profile", "ratio", "tau_end", "dt"}},
      {"cyclotron", {"q_charge", "B_field", "mass"}},
      {"output", {"format", "path", "hg_coefficient"}},
  };
  return keys;
}

class Reader {
 public:
  Reader(std::string_view text, std::string source) : source_(std::move(source)) {
    std::string current;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
      ++line_no;
      std::string_view line = raw;
      if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "malformed section header");
        current = std::string(trim(line.substr(1, line.size() - 2)));
        if (!known_keys().count(current)) fail(line_no, "unknown section [" + current + "]");
        if (!sections_.emplace(current, Section{}).second) {
          fail(line_no, "duplicate section [" + current + "]");
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected key = value");
      if (current.empty()) fail(line_no, "key outside of any section");
      const std::string key(trim(line.substr(0, eq)));
      const auto& allowed = known_keys().at(current);
      const bool is_amplitude = current == "state" && key.rfind("amplitude[", 0) == 0;
      if (!is_amplitude && std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(line_no, "unknown key '" + key + "' in [" + current + "]");
      }
      auto& section = sections_[current];
      if (section.count(key)) fail(line_no, "duplicate key '" + key + "'");
      section[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
    }
  }

  [[noreturn]] void fail(int line, const std::string& message) const {
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + message);
  }

  bool has_section(const std::string& name) const { return sections_.count(name) > 0; }

  const Section* section(const std::string& name) const {
    const auto it = sections_.find(name);
    return it == sections_.end() ? nullptr : &it->second;
  }

  const Entry* find(const std::string& sec, const std::string& key) const {
    const auto* s = section(sec);
    if (s == nullptr) return nullptr;
    const auto it = s->find(key);
    return it == s->end() ? nullptr : &it->second;
  }

  // Runs fn(value) and prefixes any ConfigError with the key's location.
  template <typename Fn>
  auto with_entry(const std::string& sec, const std::string& key, const Entry& e, Fn fn) const {
    try {
      return fn(e.value);
    } catch (const ConfigError& err) {
      fail(e.line, "[" + sec + "] " + key + ": " + err.what());
    }
  }

  double number(const std::string& sec, const std::string& key, double fallback) const {
    const auto* e = find(sec, key);
    if (e == nullptr) return fallback;
    return with_entry(sec, key, *e, [](const std::string& v) { return parse_number(v); });
  }

  std::string text(const std::string& sec, const std::string& key,
                   const std::string& fallback) const {
    const auto* e = find(sec, key);
    return e == nullptr ? fallback : e->value;
  }

  int line_of(const std::string& sec, const std::string& key) const {
    const auto* e = find(sec, key);
    return e == nullptr ? 0 : e->line;
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, Section> sections_;
};

// Re-raises a ConfigError from a validating constructor at the given line.
template <typename Fn>
auto at_line(const Reader& r, int line, const std::string& what, Fn fn) {
  try {
    return fn();
  } catch (const ConfigError& err) {
    if (line > 0) r.fail(line, what + ": " + err.what());
    throw ConfigError(r.source() + ": " + what + ": " + err.what());
  }
}

bool parse_bool(std::string_view text) {
  const auto v = lower(trim(text));
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("expected true or false, got '" + std::string(text) + "'");
}

std::complex<double> parse_amplitude(std::string_view text) {
  std::string cleaned(text);
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<std::string> parts;
  for (std::string p; in >> p;) parts.push_back(p);
  if (parts.empty() || parts.size() > 2) {
    throw ConfigError("amplitude must be 're' or 're im', got '" + std::string(text) + "'");
  }
  const double re = parse_number(parts[0]);
  const double im = parts.size() == 2 ? parse_number(parts[1]) : 0.0;
  return {re, im};
}

DensityMethod parse_method(std::string_view text) {
  const auto v = lower(trim(text));
  if (v == "closed") return DensityMethod::ClosedSmallX;
  if (v == "quadrature") return DensityMethod::QuadratureQ;
  if (v == "farfield") return DensityMethod::FarField;
  if (v == "classical") return DensityMethod::Classical;
  throw ConfigError("unknown density method '" + std::string(text) +
                    "' (closed, quadrature, farfield, classical)");
}

WWAScheme parse_scheme(std::string_view variant, double lower_cutoff, double upper_cutoff) {
  const auto v = lower(trim(variant));
  if (v == "pure") return WWAScheme::pure();
  if (v == "modified") return WWAScheme::modified(lower_cutoff, upper_cutoff);
  throw ConfigError("scheme must be 'pure' or 'modified', got '" + std::string(variant) + "'");
}

void check_sorted(const std::vector<double>& grid, const std::string& name) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError(name + " grid must be strictly increasing");
  }
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> grid;
  if (text.empty()) return grid;
  if (text.rfind("linspace", 0) == 0) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
        !trim(text.substr(close + 1)).empty()) {
      throw ConfigError("malformed linspace(a, b, n)");
    }
    const auto args = split(text.substr(open + 1, close - open - 1), ',');
    if (args.size() != 3) throw ConfigError("linspace takes three arguments (a, b, n)");
    const double a = parse_number(args[0]);
    const double b = parse_number(args[1]);
    const double n = parse_number(args[2]);
    if (n < 1 || n != std::floor(n) || n > 1e7) {
      throw ConfigError("linspace count must be a positive integer");
    }
    const auto count = static_cast<std::size_t>(n);
    if (count == 1) return {a};
    for (std::size_t i = 0; i < count; ++i) {
      grid.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    grid.back() = b;
    return grid;
  }
  for (auto part : split(text, ',')) grid.push_back(parse_number(part));
  return grid;
}

OutputFormat parse_format(std::string_view text) {
  const auto v = lower(trim(text));
  if (v == "csv") return OutputFormat::Csv;
  if (v == "json") return OutputFormat::Json;
  throw ConfigError("format must be 'csv' or 'json', got '" + std::string(text) + "'");
}

RunConfig parse_config(std::string_view text, const std::string& source) {
  const Reader r(text, source);
  RunConfig c;

  const auto parse_j = [](const std::string& v) { return HalfIntegerJ::parse(v); };
  const auto* h_entry = r.find("transition", "H");
  const auto* g_entry = r.find("transition", "G");
  const auto H = h_entry ? r.with_entry("transition", "H", *h_entry, parse_j)
                         : HalfIntegerJ::from_int(1);
  const auto G = g_entry ? r.with_entry("transition", "G", *g_entry, parse_j)
                         : HalfIntegerJ::from_int(0);
  const double ratio = r.number("transition", "omega0_over_gamma", 1e6);
  c.transition = at_line(r, r.line_of("transition", "H"), "[transition]",
                         [&] { return TransitionSpec::make(H, G, ratio); });

  // Initial state.
  std::map<HalfInteger, std::complex<double>> amps;
  int state_line = 0;
  if (const auto* sec = r.section("state")) {
    for (const auto& [key, entry] : *sec) {
      if (key.rfind("amplitude[", 0) != 0) continue;
      state_line = state_line == 0 ? entry.line : std::min(state_line, entry.line);
      if (key.back() != ']') r.fail(entry.line, "malformed key '" + key + "'");
      const auto m = r.with_entry("state", key, entry, [&](const std::string&) {
        return HalfInteger::parse(key.substr(10, key.size() - 11));
      });
      amps[m] = r.with_entry("state", key, entry, parse_amplitude);
    }
  }
  if (amps.empty()) {
    c.initial_state = InitialState::basis(H, H.as_half_integer());
  } else {
    const auto* norm_entry = r.find("state", "normalize");
    if (norm_entry && r.with_entry("state", "normalize", *norm_entry, parse_bool)) {
      double n = 0.0;
      for (const auto& [m, a] : amps) n += std::norm(a);
      if (!(n > 0.0)) r.fail(norm_entry->line, "cannot normalize a zero state");
      for (auto& [m, a] : amps) a /= std::sqrt(n);
    }
    c.initial_state =
        at_line(r, state_line, "[state]", [&] { return InitialState::make(H, amps); });
  }

  // Scheme.
  const int scheme_line = r.line_of("scheme", "variant");
  c.scheme = at_line(r, scheme_line, "[scheme]", [&] {
    auto s = parse_scheme(r.text("scheme", "variant", "pure"),
                          r.number("scheme", "lower_cutoff", 1000.0),
                          r.number("scheme", "upper_cutoff", 1000.0));
    s.validate(ratio);
    return s;
  });

  // Grids.
  if (const auto* e = r.find("grid", "tau")) {
    c.time_grid = r.with_entry("grid", "tau", *e, [](const std::string& v) {
      auto g = parse_grid(v);
      if (g.empty()) throw ConfigError("tau grid is empty");
      check_sorted(g, "tau");
      for (double t : g) {
        if (t < 0.0) throw ConfigError("tau values must be non-negative");
      }
      return g;
    });
  }
  if (const auto* e = r.find("grid", "x")) {
    c.radial_grid = r.with_entry("grid", "x", *e, [](const std::string& v) {
      auto g = parse_grid(v);
      if (g.empty()) throw ConfigError("x grid is empty");
      check_sorted(g, "x");
      for (double x : g) {
        if (x < 0.0) throw ConfigError("x values must be non-negative");
      }
      return g;
    });
  }

  // Density methods.
  c.density_methods = {DensityMethod::ClosedSmallX, DensityMethod::QuadratureQ,
                       DensityMethod::FarField, DensityMethod::Classical};
  if (const auto* e = r.find("density", "methods")) {
    c.density_methods = r.with_entry("density", "methods", *e, [](const std::string& v) {
      std::vector<DensityMethod> methods;
      for (auto part : split(v, ',')) {
        const auto m = parse_method(part);
        if (std::find(methods.begin(), methods.end(), m) != methods.end()) {
          throw ConfigError("density method listed twice");
        }
        methods.push_back(m);
      }
      return methods;
    });
  }

  // Oracle.
  if (r.has_section("oracle")) {
    OracleConfig o;
    const double n = r.number("oracle", "n_modes", 4000);
    if (n < 0 || n != std::floor(n)) r.fail(r.line_of("oracle", "n_modes"), "n_modes must be an integer");
    const auto profile_text = lower(r.text("oracle", "profile", "flat"));
    SpectralProfile profile = SpectralProfile::Flat;
    if (profile_text == "cubic") {
      profile = SpectralProfile::Cubic;
    } else if (profile_text != "flat") {
      r.fail(r.line_of("oracle", "profile"), "profile must be 'flat' or 'cubic'");
    }
    o.grid = at_line(r, r.line_of("oracle", "n_modes"), "[oracle]", [&] {
      return ModeGridSpec::make(static_cast<std::size_t>(n), r.number("oracle", "half_span", 200.0),
                                profile, r.number("oracle", "ratio", ratio));
    });
    o.tau_end = r.number("oracle", "tau_end", 5.0);
    o.dt = r.number("oracle", "dt", 0.005);
    if (!(o.dt > 0.0)) r.fail(r.line_of("oracle", "dt"), "dt must be positive");
    if (!(o.tau_end >= 0.0) || o.tau_end > 10.0) {
      r.fail(r.line_of("oracle", "tau_end"), "tau_end must lie in [0, 10]");
    }
    if (o.tau_end >= o.grid.recurrence_time()) {
      r.fail(r.line_of("oracle", "tau_end"),
             "tau_end reaches the recurrence time 2 pi / spacing = " +
                 std::to_string(o.grid.recurrence_time()));
    }
    c.oracle = o;
  }

  // Cyclotron.
  if (r.has_section("cyclotron")) {
    c.cyclotron = at_line(r, r.line_of("cyclotron", "B_field"), "[cyclotron]", [&] {
      return CyclotronSpec::make(r.number("cyclotron", "q_charge", 1.0),
                                 r.number("cyclotron", "B_field", 1e-3),
                                 r.number("cyclotron", "mass", 1.0));
    });
  }

  // Output.
  if (const auto* e = r.find("output", "format")) {
    c.output.format = r.with_entry("output", "format", *e, parse_format);
  }
  c.output.path = r.text("output", "path", "");
  const auto hg = lower(r.text("output", "hg_coefficient", "conservation"));
  if (hg == "as_printed") {
    c.hg_coefficient = HgCoefficient::AsPrinted;
  } else if (hg != "conservation") {
    r.fail(r.line_of("output", "hg_coefficient"),
           "hg_coefficient must be 'conservation' or 'as_printed'");
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

void apply_overrides(RunConfig& config, const Overrides& overrides) {
  if (overrides.out) config.output.path = *overrides.out;
  if (overrides.format) config.output.format = parse_format(*overrides.format);
  if (overrides.scheme) {
    config.scheme = parse_scheme(*overrides.scheme, config.scheme.lower_cutoff_in_gamma,
                                 config.scheme.upper_cutoff_in_gamma);
    config.scheme.validate(config.transition.omega0_over_gamma);
  }
  if (overrides.as_printed_hg_coefficient) config.hg_coefficient = HgCoefficient::AsPrinted;
}

}  // namespace emission::cli
