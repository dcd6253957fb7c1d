// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rumin/leibniz.hpp"

namespace rumin {

namespace {

std::string covector_text(const Covector<Rational>& v) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : v.coefficients()) {
    const Rational mag = abs(c);
    if (first) os << (c < 0 ? "-" : "");
    else os << (c < 0 ? " - " : " + ");
    first = false;
    if (mag != 1) os << mag.get_str() << "*";
    os << CovectorBasisElement{v.n(), m}.name();
  }
  return first ? "0" : os.str();
}

std::string csv_rows(const std::string& object, const OperatorMatrix& op) {
  std::ostringstream os;
  for (int i = 0; i < op.rows(); ++i)
    for (int j = 0; j < op.cols(); ++j) os << object << "," << i + 1 << "," << j + 1 << ",\"" << op(i, j).to_string() << "\"\n";
  return os.str();
}

}  // namespace

std::string dump_complex(int n, int h, const std::string& format) {
  if (n < 1 || n > 3) throw std::invalid_argument("dump_complex: n must lie in 1..3");
  if (h < 0 || h > 2 * n + 1) throw std::invalid_argument("dump_complex: degree must lie in 0..2n+1");
  auto c = get_complex(n);
  const E0Basis& b = c->e0(h);
  const bool has_dc = h <= 2 * n, has_dcs = h >= 1;
  if (format == "json") {
    nlohmann::json j;
    j["n"] = n;
    j["degree"] = h;
    j["e0_dim"] = b.size();
    j["e0_basis"] = nlohmann::json::array();
    for (int i = 0; i < b.size(); ++i)
      j["e0_basis"].push_back({{"index", i + 1}, {"norm2", b.gram[i].get_str()}, {"covector", b.vectors[i].to_json()}});
    j["dc"] = has_dc ? c->dc(h).to_json() : nlohmann::json(nullptr);
    j["dc_star"] = has_dcs ? c->dc_star(h).to_json() : nlohmann::json(nullptr);
    j["laplacian"] = c->laplacian(h).to_json();
    j["laplacian_order"] = c->laplacian_order(h);
    return j.dump(2) + "\n";
  }
  if (format == "text") {
    std::ostringstream os;
    os << "H^" << n << " degree " << h << ": dim E0 = " << b.size() << "\n\n# E0 basis\n";
    for (int i = 0; i < b.size(); ++i)
      os << "xi_" << i + 1 << " = " << covector_text(b.vectors[i]) << "    |xi|^2 = " << b.gram[i].get_str() << "\n";
    if (has_dc) os << "\n# d_c : E0^" << h << " -> E0^" << h + 1 << "\n" << c->dc(h).to_text();
    if (has_dcs) os << "\n# d_c* : E0^" << h << " -> E0^" << h - 1 << "\n" << c->dc_star(h).to_text();
    os << "\n# Laplacian (order " << c->laplacian_order(h) << ")\n" << c->laplacian(h).to_text();
    return os.str();
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "object,row,col,entry\n";
    for (int i = 0; i < b.size(); ++i)
      os << "e0," << i + 1 << ",0,\"" << covector_text(b.vectors[i]) << "\"\n";
    if (has_dc) os << csv_rows("dc", c->dc(h));
    if (has_dcs) os << csv_rows("dc_star", c->dc_star(h));
    os << csv_rows("laplacian", c->laplacian(h));
    return os.str();
  }
  throw std::invalid_argument("dump_complex: format must be json, text or csv");
}

bool SymbolicReport::pass() const { return first_failure().empty(); }

std::string SymbolicReport::first_failure() const {
  for (const auto& c : checks)
    if (c.gating && !c.ok) return c.identity + " at degree " + std::to_string(c.degree);
  return "";
}

nlohmann::json SymbolicReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["pass"] = pass();
  j["first_failure"] = first_failure();
  j["e0_dims"] = e0_dims;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"identity", c.identity}, {"degree", c.degree}, {"ok", c.ok}, {"gating", c.gating}});
  return j;
}

SymbolicReport verify_symbolic(int n, ComplexOptions opt, bool strict_intertwining) {
  if (n < 1 || n > 3) throw std::invalid_argument("verify_symbolic: n must lie in 1..3");
  // A faulty complex must not come from (or pollute) the shared cache.
  std::shared_ptr<const RuminComplex> cp = get_complex(n, opt);
  const RuminComplex& c = *cp;
  SymbolicReport r;
  r.n = n;
  const int top = 2 * n + 1;
  auto add = [&](const std::string& id, int h, bool ok, bool gating = true) { r.checks.push_back({id, h, ok, gating}); };
  for (int h = 0; h <= top; ++h) r.e0_dims.push_back(c.e0_dim(h));
  for (int h = 0; h + 1 <= 2 * n; ++h) add("d_c d_c = 0", h, verify_dc_squared(c, h));
  for (int h = 0; h + 1 <= top; ++h) add("d d = 0", h, verify_full_d_squared(c, h));
  for (int h = 0; h <= top; ++h) add("dim E0", h, c.e0_dim(h) == expected_e0_dim(n, h));
  for (int h = 0; h <= top; ++h) add("E0 characterisation", h, verify_e0_characterisation(c, h));
  for (int h = 0; h <= top; ++h) add("E0 projector", h, verify_pi_e0_projector(c, h));
  for (int h = 0; h <= top; ++h) add("Hodge duality", h, verify_hodge_duality(c, h));
  for (int h = 0; h <= 2 * n; ++h) add("d_c homogeneity", h, verify_dc_homogeneity(c, h));
  for (int h = 0; h <= top; ++h) add("Laplacian homogeneity", h, verify_laplacian_homogeneity(c, h));
  for (int h = 0; h <= top; ++h) add("Laplacian symmetry", h, verify_laplacian_symmetry(c, h));
  if (n <= 2)
    for (int h = 0; h <= 2 * n; ++h) {
      bool ok = true;
      for (const auto& l : verify_leibniz_structure(c, h)) ok = ok && l.ok;
      add("Leibniz", h, ok);
    }
  for (int h = 1; h <= top; ++h) add("intertwining", h, verify_intertwining(c, h), strict_intertwining);
  return r;
}

std::string SuiteResult::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json j;
  j["suite"] = name;
  j["pass"] = pass;
  j["verdict"] = verdict;
  j["columns"] = columns;
  j["rows"] = rows;
  return j;
}

std::vector<std::string> suite_names() { return {"scaling", "semigroup", "symmetry", "pde", "inverse"}; }

GridSection make_initial(const Config& cfg, const HeatEngine& eng) {
  const GridSpec& g = eng.grid();
  const double w = cfg.get_double("heat.initial_width"), wt = cfg.get_double("heat.initial_width_t");
  const std::string kind = cfg.get_string("heat.initial");
  if (!(w > 0) || !(wt > 0)) throw ConfigError("invalid [heat] settings: initial widths must be positive");
  if (kind == "mollifier") return mollifier(g, w, wt, eng.degree(), eng.components(), 0);
  if (kind != "gaussian") throw ConfigError("invalid [heat] settings: initial must be gaussian or mollifier");
  GridSection u(g, eng.degree(), eng.components());
  for (int c = 0; c < eng.components(); ++c)
    u.fill(c, [&](const std::vector<double>& p) {
      double r2 = 0.0;
      for (int a = 0; a < 2 * g.n; ++a) r2 += p[a] * p[a];
      const double t = p[g.t_axis()];
      // distinct profiles per component
      const double shape = c == 0 ? 1.0 : p[(c - 1) % (2 * g.n)];
      return shape * std::exp(-r2 / (2 * w * w) - t * t / (2 * wt * wt));
    });
  return u;
}

namespace {

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// error column is the last; refinement verdict
void refinement_verdict(SuiteResult& r, const std::vector<double>& err, double tol) {
  const bool dec = strictly_decreasing(err);
  const bool small = !err.empty() && err.back() <= tol;
  r.pass = dec && small;
  r.verdict = std::string(dec ? "decreasing" : "not decreasing") + ", finest error " + fmt(err.back()) +
              (small ? " <= " : " > ") + fmt(tol);
}

void order_verdict(SuiteResult& r, const std::vector<double>& err, double min_order) {
  double worst = 1e300;
  for (std::size_t i = 1; i < err.size(); ++i) worst = std::min(worst, std::log2(err[i - 1] / err[i]));
  r.pass = err.size() >= 2 && worst >= min_order;
  r.verdict = "observed order " + fmt(worst) + (r.pass ? " >= " : " < ") + fmt(min_order);
}

}  // namespace

SuiteResult run_suite(const std::string& name, const Config& cfg) {
  SuiteResult r;
  r.name = name;
  const double tol = cfg.get_double("verify.tolerance");
  const int steps = cfg.get_int("verify.kernel_steps");
  if (name == "scaling") {
    const int h = cfg.get_int("verify.scaling_degree");
    const double s = cfg.get_double("verify.scaling_time"), rr = cfg.get_double("verify.scaling_r");
    const double cells = cfg.get_double("verify.mollifier_cells");
    r.columns = {"points", "spacing", "error", "boundary_mass"};
    std::vector<double> err;
    for (int m : cfg.get_int_list("verify.resolutions")) {
      const GridSpec g = grid_from(cfg, m);
      HeatEngine eng(g.n, h, g);
      const auto res = scaling_check(eng, s, rr, cells * g.spacing(0), cells * g.spacing(g.t_axis()), steps);
      r.rows.push_back({double(m), g.spacing(0), res.error, res.boundary_mass});
      err.push_back(res.error);
    }
    refinement_verdict(r, err, tol);
  } else if (name == "symmetry") {
    const int h = cfg.get_int("verify.symmetry_degree");
    const double s = cfg.get_double("verify.symmetry_time");
    const double eps = cfg.get_double("verify.symmetry_eps"), eps_t = cfg.get_double("verify.symmetry_eps_t");
    r.columns = {"points", "spacing", "discrepancy", "boundary_mass"};
    std::vector<double> err;
    for (int m : cfg.get_int_list("verify.resolutions")) {
      const GridSpec g = grid_from(cfg, m);
      HeatEngine eng(g.n, h, g);
      const KernelSample k = kernel_extract(eng, s, eps, eps_t, steps, Stepper::CrankNicolson);
      double bm = 0.0;
      for (const auto& col : k.columns) bm = std::max(bm, boundary_mass(col));
      const double d = symmetry_check(k).discrepancy;
      r.rows.push_back({double(m), g.spacing(0), d, bm});
      err.push_back(d);
    }
    refinement_verdict(r, err, tol);
  } else if (name == "semigroup") {
    HeatConfig hc = heat_from(cfg);
    HeatEngine eng(hc.n, hc.degree, hc.grid);
    const GridSection u0 = make_initial(cfg, eng);
    const double s = cfg.get_double("verify.semigroup_s"), sigma = cfg.get_double("verify.semigroup_sigma");
    r.columns = {"dt", "error", "commuted_error"};
    std::vector<double> err;
    for (double dt : cfg.get_double_list("verify.semigroup_dt")) {
      hc.dt = dt;
      const auto res = semigroup_check(u0, s, sigma, hc);
      r.rows.push_back({dt, res.error, res.commuted_error});
      err.push_back(res.error);
    }
    order_verdict(r, err, 1.7);
  } else if (name == "pde") {
    HeatConfig hc = heat_from(cfg);
    HeatEngine eng(hc.n, hc.degree, hc.grid);
    const GridSection u0 = make_initial(cfg, eng);
    const LinearMap lap = [&eng](const GridSection& u) { return eng.apply_laplacian(u); };
    r.columns = {"dt", "max_residual"};
    std::vector<double> err;
    for (double dt : cfg.get_double_list("verify.pde_dt")) {
      hc.dt = dt;
      hc.snapshot_every = 1;
      hc.abort_on_boundary = false;
      const HeatTrajectory tr = evolve(u0, hc);
      const auto res = pde_residual(tr, lap);
      const double worst = *std::max_element(res.begin(), res.end());
      r.rows.push_back({dt, worst});
      err.push_back(worst);
    }
    order_verdict(r, err, 1.7);
  } else if (name == "inverse") {
    const int h = cfg.get_int("verify.inverse_degree");
    const double w = cfg.get_double("verify.inverse_width");
    const double dt = cfg.get_double("verify.inverse_dt"), M = cfg.get_double("verify.inverse_M");
    const double stop = cfg.get_double("verify.inverse_tail");
    r.columns = {"points", "spacing", "cutoff", "error", "tail", "direct_discrepancy"};
    std::vector<double> err;
    double worst_direct = 0.0;
    for (int m : cfg.get_int_list("verify.resolutions")) {
      const GridSpec g = grid_from(cfg, m);
      HeatEngine eng(g.n, h, g);
      GridSection phi(g, h, eng.components());
      for (int c = 0; c < eng.components(); ++c)
        phi.fill(c, [&](const std::vector<double>& p) {
          double r2 = 0.0;
          for (int a = 0; a < 2 * g.n; ++a) r2 += p[a] * p[a];
          const double t = p[g.t_axis()];
          const double shape = c == 0 ? 1.0 : p[(c - 1) % (2 * g.n)];
          return shape * std::exp(-r2 / (2 * w * w) - t * t / (2 * w * w * w * w));
        });
      const InverseResult res = inverse_accumulate(eng, phi, M, dt, 4, Stepper::CrankNicolson, stop);
      r.rows.push_back({double(m), g.spacing(0), res.cutoffs.back(), res.final_error(), res.tail.back(), res.direct_error});
      err.push_back(res.final_error());
      worst_direct = std::max(worst_direct, res.direct_error);
    }
    const bool ok = err.back() <= tol && worst_direct <= tol;
    r.pass = ok;
    r.verdict = "finest error " + fmt(err.back()) + ", direct discrepancy " + fmt(worst_direct) + (ok ? " <= " : ", bound ") +
                fmt(tol);
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return r;
}

}  // namespace rumin
