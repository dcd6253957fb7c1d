// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Report-producing drivers shared by the command line tool, the acceptance
// runner and the Python bindings.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rumin/calderon.hpp"
#include "rumin/config.hpp"
#include "rumin/heat.hpp"
#include "rumin/rumin_complex.hpp"

namespace rumin {

// E₀^h basis, d_c, d_c* and Δ_h as json | text | csv.
std::string dump_complex(int n, int h, const std::string& format);

struct SymbolicCheck {
  std::string identity;
  int degree = 0;
  bool ok = false;
  bool gating = true;  // informational checks do not affect the verdict
};

struct SymbolicReport {
  int n = 1;
  std::vector<int> e0_dims;
  std::vector<SymbolicCheck> checks;
  bool pass() const;
  std::string first_failure() const;  // empty when passing
  nlohmann::json to_json() const;
};

// Exact checks: d_c^2 = 0, d^2 = 0, E₀ dimensions and characterisation, Hodge
// duality, homogeneity, Laplacian symmetry, Leibniz structure. Intertwining is
// listed per degree and gates the verdict only when `strict_intertwining`.
SymbolicReport verify_symbolic(int n, ComplexOptions opt = {}, bool strict_intertwining = false);

struct SuiteResult {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  bool pass = false;
  std::string verdict;  // one line explaining pass/fail
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

// scaling | semigroup | symmetry | pde | inverse; unknown names throw std::invalid_argument.
SuiteResult run_suite(const std::string& name, const Config& cfg);
std::vector<std::string> suite_names();

// Initial datum of a heat run from the [heat] section.
GridSection make_initial(const Config& cfg, const HeatEngine& eng);

}  // namespace rumin
