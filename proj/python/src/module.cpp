// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Thin bindings; structured results cross as JSON text.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "rumin/calderon.hpp"
#include "rumin/config.hpp"
#include "rumin/heat.hpp"
#include "rumin/manifest.hpp"
#include "rumin/rumin_complex.hpp"
#include "rumin/suites.hpp"

namespace py = pybind11;
using namespace rumin;

namespace {

Config resolve(const std::string& text, const std::map<std::string, std::string>& overrides) {
  Config c = text.empty() ? Config::defaults() : Config::parse(text, "<python>");
  for (const auto& [k, v] : overrides) c.set(k, v, "python");
  return c;
}

py::array_t<double> to_array(const GridSection& u) {
  const GridSpec& g = u.grid();
  std::vector<py::ssize_t> shape{u.components()};
  for (int a = 0; a < g.axes(); ++a) shape.push_back(g.m[a]);
  py::array_t<double> out(shape);
  std::copy(u.data().begin(), u.data().end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rumin complex and heat semigroup on Heisenberg groups";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<BoundaryMassError>(m, "BoundaryMassError", PyExc_RuntimeError);

  m.def("e0_dim", &expected_e0_dim, py::arg("n"), py::arg("h"));
  m.def("dump_complex", &dump_complex, py::arg("n"), py::arg("h"), py::arg("format") = "json");
  m.def(
      "verify_symbolic",
      [](int n, bool strict) { return verify_symbolic(n, {}, strict).to_json().dump(); }, py::arg("n"),
      py::arg("strict_intertwining") = false);
  m.def("default_config", [] { return Config::defaults().to_text(); });
  m.def(
      "resolve_config", [](const std::string& text, const std::map<std::string, std::string>& o) {
        return resolve(text, o).to_text(false);
      },
      py::arg("text") = "", py::arg("overrides") = std::map<std::string, std::string>{});
  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, const std::string& text, const std::map<std::string, std::string>& o) {
        const Config c = resolve(text, o);
        py::gil_scoped_release release;
        return run_suite(name, c).to_json().dump();
      },
      py::arg("name"), py::arg("text") = "", py::arg("overrides") = std::map<std::string, std::string>{});
  m.def(
      "heat_run",
      [](const std::string& text, const std::map<std::string, std::string>& o) {
        const Config c = resolve(text, o);
        const HeatConfig hc = heat_from(c);
        HeatTrajectory tr;
        {
          py::gil_scoped_release release;
          HeatEngine eng(hc.n, hc.degree, hc.grid);
          tr = evolve(make_initial(c, eng), hc);
        }
        py::list snaps;
        for (const auto& s : tr.snapshots) snaps.append(to_array(s));
        std::vector<double> l2, mass;
        for (const auto& s : tr.steps) {
          l2.push_back(s.l2);
          mass.push_back(s.mass);
        }
        py::dict d;
        d["times"] = tr.times;
        d["snapshots"] = snaps;
        d["l2"] = l2;
        d["mass"] = mass;
        d["boundary_mass"] = tr.boundary_mass;
        d["max_norm_increase"] = tr.max_norm_increase();
        return d;
      },
      py::arg("text") = "", py::arg("overrides") = std::map<std::string, std::string>{});
  m.def(
      "calderon_run",
      [](const std::string& text, const std::map<std::string, std::string>& o) {
        const Config c = resolve(text, o);
        py::gil_scoped_release release;
        const CalderonConfig cc = calderon_from(c);
        HeatEngine top(cc.n, cc.degree, cc.grid);
        const GridSection alpha = make_closed_test_form(top, c.get_unsigned("run.seed"), test_form_from(c));
        return reproduce(alpha, cc).report.to_json().dump();
      },
      py::arg("text") = "", py::arg("overrides") = std::map<std::string, std::string>{});
  m.def("sha256", &sha256_hex, py::arg("data"));
}
