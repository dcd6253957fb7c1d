// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "rumin/calderon.hpp"

using namespace rumin;

namespace {

CalderonConfig small_config(int m = 13) {
  CalderonConfig c;
  c.grid = GridSpec::make(1, 3.0, m, 0.3);
  c.dt = 1e-3;
  c.s_max = 20.0;
  c.rho = 1.5;
  return c;
}

}  // namespace

TEST_CASE("truncation estimates") {
  SUBCASE("pure power tail is recovered") {
    std::vector<double> s, g;
    for (double x = 0.1; x <= 40.0; x *= 1.3) {
      s.push_back(x);
      g.push_back(2.0 * std::pow(x, -1.5));
    }
    auto t = truncation_estimates(s, g);
    const double exact = 2.0 * std::pow(s.back(), -0.5) / 0.5;
    CHECK(t.decaying);
    CHECK(t.exponent == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(std::abs(t.tail - exact) <= 0.2 * exact);
    CHECK(t.head == doctest::Approx(s.front() * g.front()));
  }
  SUBCASE("zero integrand") {
    auto t = truncation_estimates({0.1, 0.2, 0.4}, {0.0, 0.0, 0.0});
    CHECK(t.head == 0.0);
    CHECK(t.tail == 0.0);
  }
  SUBCASE("slow decay is flagged") {
    std::vector<double> s{1, 2, 4, 8, 16}, g;
    for (double x : s) g.push_back(std::pow(x, -0.5));
    auto t = truncation_estimates(s, g);
    CHECK_FALSE(t.decaying);
    CHECK(std::isinf(t.tail));
  }
}

TEST_CASE("configuration checks") {
  auto c = small_config();
  CHECK_NOTHROW(c.validate());
  c.rho = 1.0;
  CHECK_THROWS(c.validate());
  c = small_config();
  c.sign = 0;
  CHECK_THROWS(c.validate());
  c = small_config();
  c.degree = 0;
  CHECK_THROWS(c.validate());
  c = small_config();
  CHECK(c.ladder_p() == 2);
  c.rho = 1.2;
  CHECK(c.ladder_p() == 5);
}

TEST_CASE("closed test forms") {
  HeatEngine eng(1, 2, GridSpec::make(1, 3.0, 17, 0.3));
  auto a = make_closed_test_form(eng, 7);
  auto b = make_closed_test_form(eng, 7);
  auto c = make_closed_test_form(eng, 8);
  CHECK(a.data() == b.data());
  CHECK(l2_norm(a - c) > 0.1 * l2_norm(a));
  CHECK(a.degree() == 2);
  std::vector<double> cl;
  for (int m : {13, 17, 25}) {
    HeatEngine e(1, 2, GridSpec::make(1, 3.0, m, 0.3));
    cl.push_back(closedness(e, make_closed_test_form(e, 7)));
  }
  CHECK(cl[1] < cl[0]);
  CHECK(cl[2] < cl[1]);
}

TEST_CASE("closed test form at the reference resolution") {
  HeatEngine e(1, 2, GridSpec::make(1, 3.0, 49, 0.4));
  CHECK(closedness(e, make_closed_test_form(e, 7)) <= 1e-2);
}

TEST_CASE("reproducing formula on a small grid") {
  auto cfg = small_config(13);
  HeatEngine eng(1, 2, cfg.grid);
  auto alpha = make_closed_test_form(eng, 7);

  SUBCASE("zero form") {
    GridSection zero(cfg.grid, 2, alpha.components());
    auto r = reproduce(zero, cfg);
    CHECK(l2_norm(r.reconstruction) == 0.0);
  }

  SUBCASE("linearity") {
    auto beta = make_closed_test_form(eng, 9);
    auto ra = reproduce(alpha, cfg).reconstruction;
    auto rb = reproduce(beta, cfg).reconstruction;
    auto rab = reproduce(alpha + 2.0 * beta, cfg).reconstruction;
    CHECK(l2_norm(rab - ra - 2.0 * rb) <= 1e-10 * l2_norm(rab));
  }

  SUBCASE("report structure and sign study") {
    auto r = reproduce(alpha, cfg).report;
    REQUIRE(r.s.size() == r.weights.size());
    REQUIRE(r.s.size() == r.integrand_norm.size());
    CHECK(r.s.front() >= 2 * cfg.dt * (1 - 1e-12));
    CHECK(r.s.back() <= cfg.s_max * (1 + 1e-12));
    for (std::size_t k = 1; k < r.s.size(); ++k) {
      CHECK(r.s[k] > r.s[k - 1]);
      CHECK(r.s[k] / r.s[k - 1] <= cfg.rho + 1e-12);
    }
    for (double w : r.weights) CHECK(w > 0.0);
    CHECK(r.truncation.decaying);
    // Both signs differ by 2α, so exactly one can be close.
    CHECK(std::abs(r.rel_l2_opposite_sign - 2.0) < r.rel_l2 + 1e-9);
    CHECK(r.rel_l2 < 0.5);
    CHECK(r.reproducing_sign() == "+1");
    auto j = r.to_json();
    CHECK(j["degree"] == 2);
    CHECK(r.to_csv().find("s,") == 0);
  }

  SUBCASE("longer cutoff shrinks the tail estimate") {
    auto a = reproduce(alpha, cfg).report.truncation.tail;
    auto c2 = cfg;
    c2.s_max = 2 * cfg.s_max;
    auto b = reproduce(alpha, c2).report.truncation.tail;
    CHECK(b < a);
  }
}

TEST_CASE("commuting the semigroup past the adjoint differential") {
  std::vector<double> d;
  for (int m : {13, 17}) {
    auto cfg = small_config(m);
    HeatEngine eng(1, 2, cfg.grid);
    d.push_back(build_F(make_closed_test_form(eng, 7), 0.5, cfg, 20).discrepancy);
  }
  INFO("discrepancies " << d[0] << " " << d[1]);
  CHECK(d[1] < d[0]);
}

TEST_CASE("quadrature ending before the F comparison time") {
  CalderonConfig c = small_config();
  c.s_max = 0.01;
  HeatEngine top(1, 2, c.grid);
  const auto r = reproduce(make_closed_test_form(top, 7), c).report;
  CHECK(std::isfinite(r.f_discrepancy));
  CHECK(std::isfinite(r.rel_l2));
  CHECK_FALSE(r.truncation.decaying);
}
