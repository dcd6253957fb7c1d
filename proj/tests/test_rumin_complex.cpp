// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "rumin/leibniz.hpp"
#include "rumin/rumin_complex.hpp"

using namespace rumin;

namespace {

WeylPolynomial gen(int n, int i) { return WeylPolynomial::generator(n, i); }

// Brute-force E₀ dimension: ker d₀(h) ∩ ker d₀(h-1)^T over Θ^h via a stacked rank.
int brute_e0_dim(const RuminComplex& c, int h) {
  const int dim = c.lambda_dim(h);
  RationalMatrix a = c.d0(h);
  if (h > 0) a = vstack(a, c.d0(h - 1).transpose());
  return dim - rank(a);
}

}  // namespace

TEST_CASE("E0 dimensions") {
  auto c1 = get_complex(1);
  std::vector<int> want{1, 2, 2, 1};
  for (int h = 0; h <= 3; ++h) {
    CHECK(c1->e0_dim(h) == want[h]);
    CHECK(brute_e0_dim(*c1, h) == want[h]);
  }
  auto c2 = get_complex(2);
  CHECK(c2->e0_dim(2) == 5);
  for (int n = 1; n <= 3; ++n) {
    auto c = get_complex(n);
    CHECK(c->e0_dim(1) == 2 * n);
    for (int h = 0; h <= 2 * n + 1; ++h) {
      CHECK(c->e0_dim(h) == expected_e0_dim(n, h));
      CHECK(c->e0_dim(h) == c->e0_dim(2 * n + 1 - h));
      CHECK(verify_e0_characterisation(*c, h));
      CHECK(verify_pi_e0_projector(*c, h));
      CHECK(c->e0(h).weight() == (h <= n ? h : h + 1));
    }
  }
}

TEST_CASE("E1 is the horizontal span") {
  for (int n = 1; n <= 3; ++n) {
    auto c = get_complex(n);
    for (const auto& v : c->e0(1).vectors)
      for (const auto& [m, coef] : v.coefficients()) CHECK_FALSE(CovectorBasisElement{n, m}.has_theta());
  }
}

TEST_CASE("d0 pseudo-inverse") {
  auto c = get_complex(1);
  // Λ^2 ordered: dx^dy, dx^θ, dy^θ. d₀⁻¹(dx∧dy) = -θ.
  const auto& p = c->d0_pinv(1);
  REQUIRE(p.rows() == 3);
  REQUIRE(p.cols() == 3);
  auto basis1 = c->lambda_basis(1);
  auto basis2 = c->lambda_basis(2);
  REQUIRE(basis2[0] == 0b011u);
  for (int i = 0; i < 3; ++i) {
    Rational expect = basis1[i] == 0b100u ? Rational(-1) : Rational(0);
    CHECK(p(i, 0) == expect);
  }
  for (int n = 1; n <= 3; ++n) {
    auto cc = get_complex(n);
    for (int h = 0; h <= 2 * n; ++h) {
      const auto& d = cc->d0(h);
      const auto& pi = cc->d0_pinv(h);
      CHECK(d * pi * d == d);
      CHECK(pi * d * pi == pi);
      CHECK((d * pi).transpose() == d * pi);
      CHECK((pi * d).transpose() == pi * d);
    }
  }
}

TEST_CASE("d_c at degree 0 is the horizontal gradient") {
  for (int n = 1; n <= 3; ++n) {
    auto c = get_complex(n);
    const auto& d = c->dc(0);
    REQUIRE(d.rows() == 2 * n);
    REQUIRE(d.cols() == 1);
    // E₀¹ basis: grams all one and vectors are the frame covectors (up to order).
    for (int i = 0; i < 2 * n; ++i) {
      const auto& v = c->e0(1).vectors[i];
      REQUIRE(v.coefficients().size() == 1);
      const auto [m, coef] = *v.coefficients().begin();
      const int j = std::countr_zero(m);
      CHECK(d(i, 0) == gen(n, j) * Rational(coef / c->e0(1).gram[i]));
    }
  }
}

TEST_CASE("d_c* at degree 1 is minus the divergence") {
  auto c = get_complex(1);
  const auto& s = c->dc_star(1);
  REQUIRE(s.rows() == 1);
  REQUIRE(s.cols() == 2);
  CHECK(s(0, 0) == -gen(1, 0));
  CHECK(s(0, 1) == -gen(1, 1));
  CHECK(s.adjoint() == c->dc(0));
}

TEST_CASE("d_c squared vanishes, d_c* squared vanishes") {
  for (int n = 1; n <= 3; ++n) {
    auto c = get_complex(n);
    for (int h = 0; h + 1 <= 2 * n; ++h) {
      CHECK(verify_dc_squared(*c, h));
      CHECK((c->dc_star(h + 1) * c->dc_star(h + 2)).is_zero());
    }
    for (int h = 0; h <= 2 * n + 1; ++h) CHECK(verify_full_d_squared(*c, h));
  }
}

TEST_CASE("orders and homogeneity") {
  auto c = get_complex(1);
  const auto& d1 = c->dc(1);
  for (int i = 0; i < d1.rows(); ++i)
    for (int j = 0; j < d1.cols(); ++j) {
      auto deg = homogeneous_degree(d1(i, j));
      REQUIRE(deg);
      CHECK(*deg == 2);
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto& e = c->laplacian(1)(i, j);
      if (e.is_zero()) continue;
      CHECK(homogeneous_degree(e) == 4);
    }
  for (int n = 1; n <= 2; ++n) {
    auto cc = get_complex(n);
    for (int h = 0; h <= 2 * n; ++h) {
      CHECK(verify_dc_homogeneity(*cc, h));
      CHECK(cc->dc(h).homogeneous_degree() == cc->dc_order(h));
    }
    for (int h = 0; h <= 2 * n + 1; ++h) {
      CHECK(verify_laplacian_homogeneity(*cc, h));
      CHECK(cc->laplacian(h).homogeneous_degree() == cc->laplacian_order(h));
      CHECK(verify_laplacian_symmetry(*cc, h));
    }
  }
}

TEST_CASE("degree-0 Laplacian is minus the sum of squares") {
  auto c = get_complex(1);
  auto X = gen(1, 0), Y = gen(1, 1);
  CHECK(c->laplacian(0)(0, 0) == -(X * X) - Y * Y);
}

TEST_CASE("Hodge duality of E0") {
  for (int n = 1; n <= 3; ++n) {
    auto c = get_complex(n);
    for (int h = 0; h <= 2 * n + 1; ++h) CHECK(verify_hodge_duality(*c, h));
  }
  auto dx = Covector<Rational>::basis(1, 0b001);
  auto s = hodge_star(dx);
  auto [lo, hi] = weight_split(s);
  CHECK(lo.is_zero());
  CHECK(s == Covector<Rational>::basis(1, 0b110));
}

TEST_CASE("intertwining holds off the middle degrees") {
  for (int n = 1; n <= 2; ++n) {
    auto c = get_complex(n);
    for (int h = 1; h <= 2 * n + 1; ++h) {
      const bool holds = verify_intertwining(*c, h);
      if (h == n || h == n + 2) CHECK_FALSE(holds);
      else CHECK(holds);
    }
    CHECK_THROWS(verify_intertwining(*c, 0));
    CHECK_THROWS(verify_intertwining(*c, 2 * n + 2));
  }
}

TEST_CASE("Leibniz order structure") {
  for (int n = 1; n <= 2; ++n) {
    auto c = get_complex(n);
    for (int h = 0; h <= 2 * n; ++h)
      for (const auto& r : verify_leibniz_structure(*c, h)) {
        INFO("n=" << n << " h=" << h << " zeta=" << r.zeta);
        CHECK(r.ok);
        CHECK(r.bound == (h == n ? 1 : 0));
      }
  }
}

TEST_CASE("wrong dθ sign breaks the complex") {
  ComplexOptions bad;
  bad.dtheta_sign = -kDThetaSign;
  auto c = get_complex(1, bad);
  bool any_fail = false;
  for (int h = 0; h + 1 <= 2; ++h) any_fail |= !verify_dc_squared(*c, h);
  CHECK(any_fail);
}

TEST_CASE("dc star is the adjoint of dc") {
  for (int n = 1; n <= 2; ++n) {
    auto c = get_complex(n);
    for (int h = 0; h <= 2 * n; ++h) {
      CHECK(c->dc_star(h + 1) == c->dc(h).adjoint());
      CHECK(c->dc_star(h + 1).adjoint() == c->dc(h));
    }
  }
}
