// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/config.hpp"

#include <cerrno>
#include <cstdint>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rumin {

namespace {

struct Default {
  const char* section;
  const char* key;
  const char* value;
  const char* help;
  char type;  // s string, d double, i int, u unsigned, b bool, l int list, f double list
};

// clang-format off
const Default kSchema[] = {
  {"run", "seed", "7", "seed for random test data", 'u'},
  {"run", "output", "rumin-out", "output directory", 's'},

  {"grid", "n", "1", "Heisenberg dimension", 'i'},
  {"grid", "L", "4.0", "half-width of the horizontal axes", 'd'},
  {"grid", "points", "33", "points per axis (odd)", 'i'},
  {"grid", "t_points", "0", "points on the t axis, 0 = points", 'i'},
  {"grid", "t_scale", "0.3", "t half-width = t_scale * L^2 unless Lt > 0", 'd'},
  {"grid", "Lt", "0", "t half-width, 0 = derived from t_scale", 'd'},

  {"heat", "degree", "0", "form degree h", 'i'},
  {"heat", "dt", "0.01", "time step", 'd'},
  {"heat", "final_time", "0.1", "evolution time", 'd'},
  {"heat", "stepper", "crank-nicolson", "crank-nicolson | implicit-euler", 's'},
  {"heat", "solver", "block", "block | cg", 's'},
  {"heat", "solver_tol", "1e-10", "CG relative residual, < 1e-8", 'd'},
  {"heat", "boundary_threshold", "1e-4", "boundary mass that aborts a run", 'd'},
  {"heat", "abort_on_boundary", "true", "abort when the threshold is exceeded", 'b'},
  {"heat", "snapshot_every", "0", "steps between snapshots, 0 = first and last", 'i'},
  {"heat", "initial", "gaussian", "gaussian | mollifier", 's'},
  {"heat", "initial_width", "0.5", "horizontal width of the initial Gaussian", 'd'},
  {"heat", "initial_width_t", "0.5", "t width of the initial Gaussian", 'd'},

  {"verify", "resolutions", "17,25,33", "grid points per axis for refinement studies", 'l'},
  {"verify", "scaling_degree", "0", "degree for the scaling suite", 'i'},
  {"verify", "scaling_time", "0.1", "kernel time s", 'd'},
  {"verify", "scaling_r", "2", "dilation factor", 'd'},
  {"verify", "mollifier_cells", "2", "mollifier width in grid spacings", 'd'},
  {"verify", "kernel_steps", "20", "CN steps per kernel evaluation", 'i'},
  {"verify", "symmetry_degree", "1", "degree for the symmetry suite", 'i'},
  {"verify", "symmetry_time", "0.02", "kernel time for the symmetry suite", 'd'},
  {"verify", "symmetry_eps", "0.5", "horizontal mollifier width (fixed across grids)", 'd'},
  {"verify", "symmetry_eps_t", "2.0", "t mollifier width", 'd'},
  {"verify", "semigroup_s", "0.05", "first leg", 'd'},
  {"verify", "semigroup_sigma", "0.05", "second leg", 'd'},
  {"verify", "semigroup_dt", "0.01,0.005,0.0025", "step sizes for the order study", 'f'},
  {"verify", "pde_dt", "0.004,0.002,0.001", "step sizes for the residual study", 'f'},
  {"verify", "inverse_degree", "0", "degree for the inverse suite", 'i'},
  {"verify", "inverse_width", "0.6", "width of the right-hand side", 'd'},
  {"verify", "inverse_dt", "0.01", "base step of the s ladder", 'd'},
  {"verify", "inverse_M", "400", "largest cutoff", 'd'},
  {"verify", "inverse_tail", "1e-3", "tail estimate that fixes the cutoff", 'd'},
  {"verify", "tolerance", "0.05", "error bound at the finest resolution", 'd'},

  {"calderon", "degree", "2", "form degree h >= 1", 'i'},
  {"calderon", "L", "4.0", "horizontal half-width for this study, 0 = grid.L", 'd'},
  {"calderon", "t_scale", "0.3", "t half-width = t_scale * L^2, 0 = grid.t_scale", 'd'},
  {"calderon", "dt", "1e-4", "base step; s_min = 2 dt", 'd'},
  {"calderon", "s_max", "50", "upper end of the s quadrature", 'd'},
  {"calderon", "rho", "1.2", "largest ratio of consecutive s nodes", 'd'},
  {"calderon", "sign", "1", "+1 or -1 in front of the integral", 'i'},
  {"calderon", "reading", "kernel", "kernel | form", 's'},
  {"calderon", "head_correction", "true", "trapezoid on [0, s_min] with the s = 0 integrand", 'b'},
  {"calderon", "damping_steps", "4", "implicit Euler substeps at restarts, 0 = plain CN", 'i'},
  {"calderon", "f_time", "1.0", "s at which the two orders of F are compared", 'd'},
  {"calderon", "bumps", "3", "Gaussian bumps per component of beta", 'i'},
  {"calderon", "width", "0.8", "horizontal bump width", 'd'},
  {"calderon", "width_t", "0.8", "t bump width", 'd'},
  {"calderon", "spread", "0.2", "bump centres within spread * L", 'd'},
  {"calderon", "tolerance", "0.1", "recovery error bound", 'd'},
};
// clang-format on

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::defaults() {
  Config c;
  for (const auto& d : kSchema) {
    c.index_[std::string(d.section) + "." + d.key] = c.entries_.size();
    c.entries_.push_back({d.section, d.key, d.value, d.help, "default", d.type});
  }
  return c;
}

Config Config::parse(const std::string& text, const std::string& source) {
  Config c = defaults();
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    std::string t = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(where + ": malformed section header '" + t + "'");
      section = trim(t.substr(1, t.size() - 2));
      bool known = false;
      for (const auto& e : c.entries_) known = known || e.section == section;
      if (!known) throw ConfigError(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value', got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty()) throw ConfigError(where + ": key '" + key + "' appears before any [section]");
    if (key.empty()) throw ConfigError(where + ": empty key");
    const std::string dotted = section + "." + key;
    if (!c.has(dotted)) throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
    c.set(dotted, value, where);
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

bool Config::has(const std::string& dotted) const { return index_.count(dotted) > 0; }

const Config::Entry& Config::entry(const std::string& dotted) const {
  auto it = index_.find(dotted);
  if (it == index_.end()) throw ConfigError("unknown config key '" + dotted + "'");
  return entries_[it->second];
}

Config::Entry& Config::entry(const std::string& dotted) {
  auto it = index_.find(dotted);
  if (it == index_.end()) throw ConfigError("unknown config key '" + dotted + "'");
  return entries_[it->second];
}

void Config::set(const std::string& dotted, const std::string& value, const std::string& origin) {
  Entry& e = entry(dotted);
  e.value = value;
  e.origin = origin;
  check(e);
}

void Config::check(const Entry& e) const {
  const std::string dotted = e.section + "." + e.key;
  switch (e.type) {
    case 'd': get_double(dotted); break;
    case 'i': get_int(dotted); break;
    case 'u': get_unsigned(dotted); break;
    case 'b': get_bool(dotted); break;
    case 'l': get_int_list(dotted); break;
    case 'f': get_double_list(dotted); break;
    default: {
      // Enumerations are documented as "a | b | c" in the help text.
      const std::string& h = e.help;
      if (h.find(" | ") == std::string::npos) break;
      std::istringstream in(h);
      std::string word;
      bool found = false;
      while (in >> word) found = found || (word != "|" && word == e.value);
      if (!found) fail(e, "expected one of " + h);
    }
  }
}

void Config::fail(const Entry& e, const std::string& msg) const {
  throw ConfigError(e.origin + ": key '" + e.key + "' in [" + e.section + "]: " + msg + " (got '" + e.value + "')");
}

std::string Config::get_string(const std::string& dotted) const { return entry(dotted).value; }

double Config::get_double(const std::string& dotted) const {
  const Entry& e = entry(dotted);
  const char* s = e.value.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s, &end);
  if (e.value.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) fail(e, "expected a finite number");
  return v;
}

int Config::get_int(const std::string& dotted) const {
  const Entry& e = entry(dotted);
  const char* s = e.value.c_str();
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(s, &end, 10);
  if (e.value.empty() || *end != '\0' || errno == ERANGE || v < INT32_MIN || v > INT32_MAX) fail(e, "expected an integer");
  return static_cast<int>(v);
}

unsigned Config::get_unsigned(const std::string& dotted) const {
  const int v = get_int(dotted);
  if (v < 0) fail(entry(dotted), "expected a nonnegative integer");
  return static_cast<unsigned>(v);
}

bool Config::get_bool(const std::string& dotted) const {
  const Entry& e = entry(dotted);
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  fail(e, "expected true or false");
}

std::vector<int> Config::get_int_list(const std::string& dotted) const {
  const Entry& e = entry(dotted);
  std::vector<int> out;
  std::stringstream ss(e.value);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    char* end = nullptr;
    const long v = std::strtol(part.c_str(), &end, 10);
    if (part.empty() || *end != '\0') fail(e, "expected a comma-separated list of integers");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) fail(e, "expected at least one value");
  return out;
}

std::vector<double> Config::get_double_list(const std::string& dotted) const {
  const Entry& e = entry(dotted);
  std::vector<double> out;
  std::stringstream ss(e.value);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
      fail(e, "expected a comma-separated list of numbers");
    out.push_back(v);
  }
  if (out.empty()) fail(e, "expected at least one value");
  return out;
}

std::string Config::to_text(bool with_help) const {
  std::ostringstream os;
  std::string section;
  for (const auto& e : entries_) {
    if (e.section != section) {
      if (!section.empty()) os << "\n";
      section = e.section;
      os << "[" << section << "]\n";
    }
    os << e.key << " = " << e.value;
    if (with_help) os << "  # " << e.help;
    os << "\n";
  }
  return os.str();
}

nlohmann::json Config::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& e : entries_) j[e.section][e.key] = e.value;
  return j;
}

namespace {

template <class F>
auto in_section(const char* section, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("invalid [") + section + "] settings: " + ex.what());
  }
}

}  // namespace

GridSpec grid_from(const Config& c, int points_override) {
  return in_section("grid", [&] {
    const int n = c.get_int("grid.n");
    const double L = c.get_double("grid.L");
    const int pts = points_override > 0 ? points_override : c.get_int("grid.points");
    const int tp = c.get_int("grid.t_points");
    const double Lt = c.get_double("grid.Lt");
    if (tp == 0 && Lt == 0.0) return GridSpec::make(n, L, pts, c.get_double("grid.t_scale"));
    const double lt = Lt > 0.0 ? Lt : c.get_double("grid.t_scale") * L * L;
    return GridSpec::make(n, L, pts, tp > 0 ? tp : pts, lt);
  });
}

HeatConfig heat_from(const Config& c, int points_override) {
  GridSpec g = grid_from(c, points_override);
  return in_section("heat", [&] {
    HeatConfig h;
    h.n = g.n;
    h.grid = g;
    h.degree = c.get_int("heat.degree");
    h.dt = c.get_double("heat.dt");
    h.final_time = c.get_double("heat.final_time");
    h.stepper = stepper_from_string(c.get_string("heat.stepper"));
    const std::string solver = c.get_string("heat.solver");
    if (solver == "block") h.solver = SolverKind::BlockDirect;
    else if (solver == "cg") h.solver = SolverKind::CG;
    else throw std::invalid_argument("unknown solver '" + solver + "'");
    h.solver_tol = c.get_double("heat.solver_tol");
    h.boundary_threshold = c.get_double("heat.boundary_threshold");
    h.abort_on_boundary = c.get_bool("heat.abort_on_boundary");
    h.snapshot_every = c.get_int("heat.snapshot_every");
    h.validate();
    return h;
  });
}

CalderonConfig calderon_from(const Config& c, int points_override) {
  GridSpec g = grid_from(c, points_override);
  const double L = c.get_double("calderon.L"), ts = c.get_double("calderon.t_scale");
  if (L > 0.0 || ts > 0.0) {
    Config o = c;
    if (L > 0.0) o.set("grid.L", c.get_string("calderon.L"), "calderon.L");
    if (ts > 0.0) {
      o.set("grid.t_scale", c.get_string("calderon.t_scale"), "calderon.t_scale");
      o.set("grid.Lt", "0", "calderon.t_scale");
      o.set("grid.t_points", "0", "calderon.t_scale");
    }
    g = grid_from(o, points_override);
  }
  return in_section("calderon", [&] {
    CalderonConfig k;
    k.n = g.n;
    k.grid = g;
    k.degree = c.get_int("calderon.degree");
    k.dt = c.get_double("calderon.dt");
    k.s_max = c.get_double("calderon.s_max");
    k.rho = c.get_double("calderon.rho");
    k.sign = c.get_int("calderon.sign");
    const std::string reading = c.get_string("calderon.reading");
    if (reading == "kernel") k.reading = KernelReading::Kernel;
    else if (reading == "form") k.reading = KernelReading::Form;
    else throw std::invalid_argument("unknown reading '" + reading + "'");
    k.head_correction = c.get_bool("calderon.head_correction");
    k.damping_steps = c.get_int("calderon.damping_steps");
    k.f_time = c.get_double("calderon.f_time");
    k.validate();
    return k;
  });
}

TestFormOptions test_form_from(const Config& c) {
  TestFormOptions o;
  o.bumps = c.get_int("calderon.bumps");
  o.width = c.get_double("calderon.width");
  o.width_t = c.get_double("calderon.width_t");
  o.spread = c.get_double("calderon.spread");
  if (o.bumps < 1 || !(o.width > 0) || !(o.width_t > 0) || !(o.spread >= 0))
    throw ConfigError("invalid [calderon] test form settings: need bumps >= 1 and positive widths");
  return o;
}

}  // namespace rumin
