// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// rumin: command line entry point.
//   exit 0 pass, 1 identity or tolerance failure, 2 usage error

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rumin/calderon.hpp"
#include "rumin/config.hpp"
#include "rumin/grid.hpp"
#include "rumin/heat.hpp"
#include "rumin/manifest.hpp"
#include "rumin/suites.hpp"

namespace fs = std::filesystem;
using namespace rumin;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigOptions {
  std::string file;
  std::vector<std::string> sets;
  std::string output;
  bool print = false;

  void attach(CLI::App* app, bool file_required) {
    auto* o = app->add_option("--config", file, "key-value config file");
    if (file_required) o->required()->check(CLI::ExistingFile);
    else o->check(CLI::ExistingFile);
    app->add_option("--set", sets, "override, e.g. --set grid.points=49")->take_all();
    app->add_option("--output", output, "output directory (default: [run] output)");
    app->add_flag("--print-config", print, "print the resolved config and exit");
  }

  Config resolve() const {
    Config c = file.empty() ? Config::defaults() : Config::load(file);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects section.key=value, got '" + s + "'");
      c.set(s.substr(0, eq), s.substr(eq + 1), "--set " + s);
    }
    return c;
  }

  std::string out_dir(const Config& c) const { return output.empty() ? c.get_string("run.output") : output; }
};

void emit(const std::string& out_file, const std::string& content) {
  if (out_file.empty() || out_file == "-") std::cout << content;
  else write_text_file(out_file, content);
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

int cmd_dump(int n, int h, const std::string& format, const std::string& out) {
  emit(out, dump_complex(n, h, format));
  return kPass;
}

int cmd_verify_symbolic(int n, bool strict, bool fault, const std::string& out) {
  ComplexOptions opt;
  if (fault) opt.dtheta_sign = -kDThetaSign;
  const SymbolicReport r = verify_symbolic(n, opt, strict);
  emit(out, r.to_json().dump(2) + "\n");
  if (!r.pass()) {
    std::cerr << "FAIL: " << r.first_failure() << "\n";
    return kFail;
  }
  std::cerr << "PASS: n = " << n << ", dim E0 =";
  for (int d : r.e0_dims) std::cerr << " " << d;
  std::cerr << "\n";
  return kPass;
}

int cmd_heat_run(const Config& cfg, const std::string& dir, const std::string& cmd) {
  RunManifest man;
  man.command = cmd;
  man.config = cfg.to_json();
  man.started = utc_now();
  const HeatConfig hc = heat_from(cfg);
  HeatEngine eng(hc.n, hc.degree, hc.grid);
  const GridSection u0 = make_initial(cfg, eng);
  fs::create_directories(dir);
  write_text_file((fs::path(dir) / "config.txt").string(), cfg.to_text(false));
  man.add(dir, "config.txt");
  int code = kPass;
  HeatTrajectory tr;
  nlohmann::json diag;
  try {
    tr = evolve(u0, hc);
  } catch (const BoundaryMassError& e) {
    std::cerr << "FAIL: " << e.what() << "\n";
    diag["aborted"] = e.what();
    code = kFail;
  }
  diag["degree"] = hc.degree;
  diag["grid"] = hc.grid.to_json();
  diag["stepper"] = to_string(hc.stepper);
  diag["steps"] = nlohmann::json::array();
  for (const auto& s : tr.steps)
    diag["steps"].push_back({{"time", s.time}, {"l2", s.l2}, {"mass", s.mass}, {"iterations", s.iterations}});
  diag["snapshot_times"] = tr.times;
  diag["boundary_mass"] = tr.boundary_mass;
  diag["max_norm_increase"] = tr.max_norm_increase();
  for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04zu", k);
    write_binary(tr.snapshots[k], (fs::path(dir) / (std::string(name) + ".bin")).string());
    write_text_file((fs::path(dir) / (std::string(name) + ".json")).string(), sidecar(tr.snapshots[k]).dump(2) + "\n");
    man.add(dir, std::string(name) + ".bin");
    man.add(dir, std::string(name) + ".json");
  }
  write_text_file((fs::path(dir) / "diagnostics.json").string(), diag.dump(2) + "\n");
  man.add(dir, "diagnostics.json");
  man.write(dir);
  if (code == kPass && tr.max_norm_increase() > 1e-8) {
    std::cerr << "FAIL: L2 norm increased by " << tr.max_norm_increase() << " (relative)\n";
    code = kFail;
  }
  if (code == kPass) std::cerr << "PASS: " << tr.steps.size() - 1 << " steps written to " << dir << "\n";
  return code;
}

int cmd_verify_heat(const std::string& suite, const Config& cfg, const std::string& dir, const std::string& cmd) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite '" + suite + "'");
  RunManifest man;
  man.command = cmd;
  man.config = cfg.to_json();
  man.started = utc_now();
  const SuiteResult r = run_suite(suite, cfg);
  fs::create_directories(dir);
  write_text_file((fs::path(dir) / (suite + ".csv")).string(), r.to_csv());
  write_text_file((fs::path(dir) / (suite + ".json")).string(), r.to_json().dump(2) + "\n");
  man.add(dir, suite + ".csv");
  man.add(dir, suite + ".json");
  man.write(dir);
  std::cout << r.to_csv();
  std::cerr << (r.pass ? "PASS: " : "FAIL: ") << suite << ": " << r.verdict << "\n";
  return r.pass ? kPass : kFail;
}

int cmd_calderon(Config cfg, int n, int h, bool paper_sign, const std::string& dir, const std::string& cmd) {
  if (n > 0) cfg.set("grid.n", std::to_string(n), "--n");
  if (h >= 0) cfg.set("calderon.degree", std::to_string(h), "--degree");
  CalderonConfig cc = calderon_from(cfg);
  if (paper_sign) cc.sign = -cc.sign;
  RunManifest man;
  man.command = cmd;
  man.config = cfg.to_json();
  man.config["calderon"]["effective_sign"] = cc.sign;
  man.started = utc_now();
  HeatEngine top(cc.n, cc.degree, cc.grid);
  const GridSection alpha = make_closed_test_form(top, cfg.get_unsigned("run.seed"), test_form_from(cfg));
  const CalderonResult res = reproduce(alpha, cc);
  fs::create_directories(dir);
  write_text_file((fs::path(dir) / "calderon.json").string(), res.report.to_json().dump(2) + "\n");
  write_text_file((fs::path(dir) / "calderon.csv").string(), res.report.to_csv());
  man.add(dir, "calderon.json");
  man.add(dir, "calderon.csv");
  man.write(dir);
  const double tol = cfg.get_double("calderon.tolerance");
  const auto& r = res.report;
  std::cerr << "relative L2 recovery error " << r.rel_l2 << " (opposite sign " << r.rel_l2_opposite_sign
            << "), reproducing sign " << r.reproducing_sign() << "\n";
  if (!r.truncation.decaying) {
    std::cerr << "FAIL: integrand tail does not decay; s_max too small\n";
    return kFail;
  }
  if (r.rel_l2 > tol) {
    std::cerr << "FAIL: recovery error above " << tol << "\n";
    return kFail;
  }
  std::cerr << "PASS\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rumin complex and heat semigroup on Heisenberg groups"};
  app.require_subcommand(0, 1);
  bool print_defaults = false;
  app.add_flag("--print-config", print_defaults, "print every config key with its default");

  int n = 1, h = 0;
  std::string format = "json", out;
  auto* dump = app.add_subcommand("dump-complex", "E0 basis, d_c, d_c* and Laplacian of one degree");
  dump->add_option("--n", n, "Heisenberg dimension")->required()->check(CLI::Range(1, 3));
  dump->add_option("--degree", h, "form degree")->required();
  dump->add_option("--format", format, "json | text | csv")->check(CLI::IsMember({"json", "text", "csv"}));
  dump->add_option("--output", out, "file (default stdout)");

  int vn = 1;
  bool strict = false, fault = false;
  std::string vout;
  auto* vs = app.add_subcommand("verify-symbolic", "exact identities of the complex");
  vs->add_option("--n", vn, "Heisenberg dimension")->required()->check(CLI::Range(1, 3));
  vs->add_flag("--strict-intertwining", strict, "let the intertwining check decide the verdict");
  vs->add_flag("--inject-dtheta-fault", fault)->group("");
  vs->add_option("--output", vout, "report file (default stdout)");

  ConfigOptions heat_opts;
  auto* hr = app.add_subcommand("heat-run", "evolve an initial datum and write snapshots");
  heat_opts.attach(hr, false);

  ConfigOptions vh_opts;
  std::string suite;
  auto* vh = app.add_subcommand("verify-heat", "refinement studies of the heat engine");
  vh->add_option("--suite", suite, "scaling | semigroup | symmetry | pde | inverse")->required();
  vh_opts.attach(vh, false);

  ConfigOptions cal_opts;
  int cn = 0, ch = -1;
  bool paper_sign = false;
  auto* cal = app.add_subcommand("calderon-run", "reproducing formula on a closed test form");
  cal->add_option("--n", cn, "Heisenberg dimension")->check(CLI::Range(1, 3));
  cal->add_option("--degree", ch, "form degree");
  cal->add_flag("--paper-sign", paper_sign, "flip the sign in front of the integral");
  cal_opts.attach(cal, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  const std::string cmd = command_line(argc, argv);
  try {
    if (print_defaults) {
      std::cout << Config::defaults().to_text();
      return kPass;
    }
    if (*dump) return cmd_dump(n, h, format, out);
    if (*vs) return cmd_verify_symbolic(vn, strict, fault, vout);
    for (auto [sub, opts] : {std::pair{hr, &heat_opts}, std::pair{vh, &vh_opts}, std::pair{cal, &cal_opts}}) {
      if (!*sub) continue;
      const Config cfg = opts->resolve();
      if (opts->print) {
        std::cout << cfg.to_text();
        return kPass;
      }
      if (sub == hr) return cmd_heat_run(cfg, opts->out_dir(cfg), cmd);
      if (sub == vh) return cmd_verify_heat(suite, cfg, opts->out_dir(cfg), cmd);
      return cmd_calderon(cfg, cn, ch, paper_sign, opts->out_dir(cfg), cmd);
    }
    std::cerr << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
