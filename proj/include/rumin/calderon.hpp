// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Calderón reproducing formula for closed forms α = d_c β:
//   α = ∫_0^∞ d_c e^{-(s/2)Δ_{h-1}} d_c^* e^{-(s/2)Δ_h} α ds
// evaluated blockwise with a forward sweep in Δ_h and a Horner sweep in Δ_{h-1}.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rumin/heat.hpp"

namespace rumin {

enum class KernelReading { Kernel, Form };

struct CalderonConfig {
  int n = 1;
  int degree = 2;
  GridSpec grid = GridSpec::make(1, 4.0, 33, 0.3);
  double dt = 1e-4;        // base step; s_min = 2 dt
  double s_max = 50.0;
  double rho = 1.2;        // largest ratio between consecutive s nodes
  int sign = +1;
  bool head_correction = true;
  KernelReading reading = KernelReading::Kernel;
  Stepper stepper = Stepper::CrankNicolson;
  double f_time = 1.0;     // s at which both evaluation orders of F are compared
  int damping_steps = 4;   // implicit Euler substeps on the first interval; 0 disables restarts

  int ladder_p() const;
  void validate() const;
};

struct TestFormOptions {
  int bumps = 3;
  double width = 0.8;      // horizontal Gaussian width
  double width_t = 0.8;
  double spread = 0.2;     // centres within spread·L horizontally
};

// α = D_{h-1} β for seeded Gaussian bumps β of degree h-1.
GridSection make_closed_test_form(const HeatEngine& eng, unsigned seed, const TestFormOptions& opt = {});
GridSection test_potential(const HeatEngine& eng_below, unsigned seed, const TestFormOptions& opt = {});
// |D_h α| / |α|
double closedness(const HeatEngine& eng, const GridSection& alpha);

struct TruncationEstimate {
  double head = 0.0;      // s_min |g(s_min)|, size of the [0, s_min] piece
  double tail = 0.0;
  double exponent = 0.0;  // fitted decay s^{-q} of the integrand norm
  bool decaying = true;
};
// Integrand norms (relative to |α|) on increasing s nodes.
TruncationEstimate truncation_estimates(const std::vector<double>& s, const std::vector<double>& norms);

struct CalderonReport {
  int n = 1;
  int degree = 2;
  int sign = 1;
  std::string reading;
  std::vector<double> s;
  std::vector<double> weights;
  std::vector<double> integrand_norm;    // |D D^* e^{-sΔ}α| / |α|
  std::vector<double> cumulative_error;  // form reading, nodes up to s
  TruncationEstimate truncation;
  double rel_l2 = 0.0;                   // configured sign and reading
  double rel_l1 = 0.0;
  double rel_l2_opposite_sign = 0.0;
  double rel_l2_kernel = 0.0;
  double rel_l2_form = 0.0;
  double f_discrepancy = 0.0;            // two evaluation orders of F
  double closedness = 0.0;
  double alpha_norm = 0.0;
  std::string reproducing_sign() const;  // which sign reproduces α

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

struct CalderonResult {
  GridSection reconstruction;
  CalderonReport report;
};

CalderonResult reproduce(const GridSection& alpha, const CalderonConfig& cfg);

// F(s) = D^* e^{-(s/2)Δ_h} α and e^{-(s/2)Δ_{h-1}} D^* α, with CN steps of size dt.
struct BuildFResult {
  GridSection F;
  GridSection F_commuted;
  double discrepancy = 0.0;
};
BuildFResult build_F(const GridSection& alpha, double s, const CalderonConfig& cfg, int steps = 40);

}  // namespace rumin
