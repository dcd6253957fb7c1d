// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "rumin/heat.hpp"

using namespace rumin;

namespace {

GridSpec small_grid(int m = 17) { return GridSpec::make(1, 3.0, m, 0.5); }

HeatConfig config(int h, double dt, double T, int m = 17) {
  HeatConfig c;
  c.n = 1;
  c.degree = h;
  c.grid = small_grid(m);
  c.dt = dt;
  c.final_time = T;
  c.abort_on_boundary = false;
  return c;
}

GridSection bump(const GridSpec& g, int h, int ncomp, double w = 0.5) {
  GridSection u(g, h, ncomp);
  for (int c = 0; c < ncomp; ++c)
    u.fill(c, [&](const std::vector<double>& p) {
      return (1.0 + 0.3 * c + 0.2 * p[0] - 0.1 * p[1] * p[2]) *
             std::exp(-0.5 * (p[0] * p[0] + p[1] * p[1]) / (w * w) - 0.5 * p[2] * p[2] / (w * w));
    });
  return u;
}

int components(int h) { return HeatEngine(1, h, small_grid()).components(); }

}  // namespace

TEST_CASE("zero initial data stays zero") {
  for (int h = 0; h <= 3; ++h) {
    auto cfg = config(h, 0.01, 0.05);
    GridSection u(cfg.grid, h, components(h));
    auto tr = evolve(u, cfg);
    CHECK(l2_norm(tr.snapshots.back()) == 0.0);
  }
}

TEST_CASE("t-Fourier transform is invertible and satisfies Parseval") {
  auto g = small_grid();
  auto u = bump(g, 1, 2);
  TFourier tf(g);
  auto v = tf.inverse(tf.forward(u));
  CHECK(l2_norm(v - u) <= 1e-12 * l2_norm(u));
  double s = 0.0, m = 0.0;
  for (int b = 0; b < tf.blocks(); ++b) {
    const auto x = tf.forward_block(u, b);
    s += tf.block_norm2(b, x);
    m += tf.block_integral(b, x, 0);
  }
  CHECK(std::sqrt(s) == doctest::Approx(l2_norm(u)).epsilon(1e-12));
  CHECK(m == doctest::Approx(integral(u, 0)).epsilon(1e-12));
}

TEST_CASE("L2 norm is nonincreasing at every degree") {
  for (int h = 0; h <= 3; ++h)
    for (Stepper st : {Stepper::CrankNicolson, Stepper::ImplicitEuler}) {
      auto cfg = config(h, 0.002, 0.2);
      cfg.stepper = st;
      cfg.snapshot_every = 0;
      auto tr = evolve(bump(cfg.grid, h, components(h)), cfg);
      INFO("degree " << h << " stepper " << to_string(st));
      CHECK(tr.steps.size() == 101);
      CHECK(tr.max_norm_increase() <= 1e-8);
      CHECK(tr.steps.back().l2 < tr.steps.front().l2);
    }
}

TEST_CASE("degree-0 mass is conserved while the boundary mass is small") {
  auto cfg = config(0, 0.01, 0.2, 33);
  cfg.grid = GridSpec::make(1, 5.0, 33, 0.3);
  cfg.abort_on_boundary = true;
  auto tr = evolve(bump(cfg.grid, 0, 1, 0.4), cfg);
  for (double bm : tr.boundary_mass) CHECK(bm < 1e-4);
  const double m0 = tr.steps.front().mass;
  for (const auto& s : tr.steps) CHECK(std::abs(s.mass - m0) <= 1e-6 * std::abs(m0));
}

TEST_CASE("boundary mass guard") {
  auto cfg = config(0, 0.01, 0.05);
  cfg.abort_on_boundary = true;
  GridSection flat(cfg.grid, 0, 1);
  flat.fill(0, [](const std::vector<double>&) { return 1.0; });
  CHECK_THROWS_AS(evolve(flat, cfg), BoundaryMassError);
  cfg.abort_on_boundary = false;
  CHECK_NOTHROW(evolve(flat, cfg));
}

TEST_CASE("semigroup property") {
  for (int h : {0, 1}) {
    auto u = bump(small_grid(), h, components(h));
    auto cfg = config(h, 0.01, 0.1);
    CHECK(semigroup_check(u, 0.06, 0.0, cfg).error <= 1e-14);
    std::vector<double> e;
    for (double dt : {0.01, 0.005, 0.0025}) {
      cfg.dt = dt;
      auto r = semigroup_check(u, 0.06, 0.04, cfg);
      CHECK(r.commuted_error <= 1e-10);
      e.push_back(r.error);
    }
    INFO("degree " << h << " errors " << e[0] << " " << e[1] << " " << e[2]);
    CHECK(std::log2(e[0] / e[1]) >= 1.7);
    CHECK(std::log2(e[1] / e[2]) >= 1.7);
  }
}

TEST_CASE("PDE residual is second order and detects a wrong sign") {
  const int h = 1;
  std::vector<double> mid;
  HeatEngine eng(1, h, small_grid());
  for (double dt : {0.01, 0.005}) {
    auto cfg = config(h, dt, 0.1);
    cfg.snapshot_every = 1;
    auto tr = evolve(bump(cfg.grid, h, components(h), 0.8), cfg);
    auto r = pde_residual(tr, [&](const GridSection& u) { return eng.apply_laplacian(u); });
    mid.push_back(r[r.size() / 2]);
    if (dt == 0.01) {
      auto wrong = pde_residual(tr, [&](const GridSection& u) { return -1.0 * eng.apply_laplacian(u); });
      CHECK(wrong[wrong.size() / 2] > 1.5);
    }
  }
  INFO("residuals " << mid[0] << " " << mid[1]);
  CHECK(mid[0] / mid[1] > 3.5);
}

TEST_CASE("degree-0 kernel is a near-positive probability density") {
  auto g = GridSpec::make(1, 3.0, 25, 0.3);
  HeatEngine eng(1, 0, g);
  auto k = kernel_extract(eng, 0.1, 2 * g.spacing(0), 2 * g.spacing(2), 20, Stepper::CrankNicolson);
  const auto& c = k.columns[0];
  double mx = 0.0, mn = 0.0;
  for (std::size_t i = 0; i < c.nodes(); ++i) {
    mx = std::max(mx, c.comp(0)[i]);
    mn = std::min(mn, c.comp(0)[i]);
  }
  CHECK(mn >= -1e-3 * mx);
  CHECK(integral(c) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("degree-0 kernel symmetry under inversion improves with refinement") {
  std::vector<double> d;
  for (int m : {17, 25}) {
    HeatEngine eng(1, 0, small_grid(m));
    auto k = kernel_extract(eng, 0.05, 0.8, 1.2, 10, Stepper::CrankNicolson);
    d.push_back(symmetry_check(k).discrepancy);
  }
  INFO("discrepancies " << d[0] << " " << d[1]);
  CHECK(d[1] < d[0]);
  CHECK(d[1] < 0.01);
}

TEST_CASE("fundamental solution") {
  auto g = small_grid();
  HeatEngine eng(1, 0, g);
  GridSection zero(g, 0, 1);
  auto z = inverse_accumulate(eng, zero, 1.0, 0.01);
  CHECK(l2_norm(z.integral) == 0.0);
  auto phi = bump(g, 0, 1, 0.6);
  auto r = inverse_accumulate(eng, phi, 400.0, 0.01, 4, Stepper::CrankNicolson, 1e-3);
  CHECK(r.final_error() <= 2e-3);
  CHECK(r.direct_error <= 2e-3);
  for (std::size_t k = 1; k < r.tail.size(); ++k) CHECK(r.tail[k] <= r.tail[k - 1] * (1 + 1e-12));
}

TEST_CASE("CG and block solvers agree") {
  for (int h : {0, 1}) {
    auto cfg = config(h, 0.01, 0.05, 13);
    auto u = bump(cfg.grid, h, components(h));
    auto a = evolve(u, cfg);
    cfg.solver = SolverKind::CG;
    cfg.solver_tol = 1e-12;
    auto b = evolve(u, cfg);
    CHECK(l2_norm(a.snapshots.back() - b.snapshots.back()) <= 1e-8 * l2_norm(a.snapshots.back()));
    CHECK(b.steps.back().iterations > 0);
  }
}

TEST_CASE("ladder steps") {
  auto s = ladder_steps(0.1, 2, 1.0);
  double sum = 0.0;
  for (double x : s) sum += x;
  CHECK(sum >= 1.0 - 1e-12);
  CHECK(s.front() == 0.1);
  for (std::size_t k = 1; k < s.size(); ++k) CHECK((s[k] == s[k - 1] || s[k] == 2 * s[k - 1]));
  CHECK_THROWS(ladder_steps(0.0, 2, 1.0));
}

TEST_CASE("config validation") {
  auto cfg = config(0, -1.0, 0.1);
  CHECK_THROWS(cfg.validate());
  cfg = config(5, 0.01, 0.1);
  CHECK_THROWS(cfg.validate());
  CHECK(stepper_from_string(to_string(Stepper::ImplicitEuler)) == Stepper::ImplicitEuler);
  CHECK_THROWS(stepper_from_string("rk4"));
}
