// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <map>
#include <random>

#include "pbw_oracle.hpp"
#include "rumin/weyl.hpp"

using namespace rumin;

namespace {

using oracle::monomials_upto;

WeylPolynomial random_poly(std::mt19937_64& rng, int n, int maxlen, int terms) {
  auto monos = monomials_upto(n, maxlen);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> coef(-5, 5);
  WeylPolynomial p(n);
  for (int k = 0; k < terms; ++k) p.add_term(monos[pick(rng)], make_rational(coef(rng), 1 + k % 3));
  return p;
}

WeylPolynomial g(int n, int i) { return WeylPolynomial::generator(n, i); }

}  // namespace

TEST_CASE("normal ordering examples") {
  const int n = 1;
  auto X = g(n, 0), Y = g(n, 1), T = g(n, 2);
  CHECK(Y * X == X * Y - T);
  CHECK((Y * X).to_string() == "X1*Y1 - T");

  auto X1 = g(2, 0), X2 = g(2, 1);
  CHECK(X1 * X2 == X2 * X1);
  CHECK((X1 * X2).terms().size() == 1);

  auto XY = X * Y;
  WeylPolynomial expect = WeylPolynomial(WeylMonomial(1, {2, 2, 0}), Rational(1)) +
                          WeylPolynomial(WeylMonomial(1, {1, 1, 1}), Rational(-1));
  CHECK(XY * XY == expect);
  CHECK((T * X) == (X * T));
  CHECK_THROWS_AS(X * g(2, 0), std::invalid_argument);
}

TEST_CASE("product agrees with brute-force free-algebra rewriting up to total degree 6") {
  for (int n = 1; n <= 2; ++n) {
    const auto r = oracle::sweep_products(n, 6);
    INFO("n = " << n);
    CHECK(r.checked > 100);
    CHECK(r.mismatches == 0);
  }
}

TEST_CASE("associativity, adjoint and degree properties on random polynomials") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 2;
    auto a = random_poly(rng, n, 2, 3), b = random_poly(rng, n, 2, 3), c = random_poly(rng, n, 2, 3);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(formal_adjoint(a * b) == formal_adjoint(b) * formal_adjoint(a));
    REQUIRE(formal_adjoint(formal_adjoint(a)) == a);
  }
  // Degree additivity on homogeneous pieces.
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 2;
    auto monos = monomials_upto(n, 3);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    auto ma = monos[pick(rng)], mb = monos[pick(rng)];
    WeylPolynomial a(ma, Rational(2)), b(mb, Rational(-3));
    auto da = homogeneous_degree(a), db = homogeneous_degree(b);
    REQUIRE(da);
    REQUIRE(db);
    auto dab = homogeneous_degree(a * b);
    REQUIRE(dab);
    REQUIRE(*dab == *da + *db);
  }
}

TEST_CASE("formal adjoint examples") {
  auto X = g(1, 0), Y = g(1, 1), T = g(1, 2);
  CHECK(formal_adjoint(X) == -X);
  CHECK(formal_adjoint(X * Y) == Y * X);
  CHECK(formal_adjoint(X * Y) == X * Y - T);
}

TEST_CASE("homogeneous degree") {
  auto X = g(1, 0), Y = g(1, 1), T = g(1, 2);
  CHECK(homogeneous_degree(X * Y * T) == 4);
  CHECK_FALSE(homogeneous_degree(X + T).has_value());
  CHECK(homogeneous_degree(WeylPolynomial(1, Rational(1))) == 0);
  CHECK_THROWS_AS(homogeneous_degree(WeylPolynomial(1)), std::invalid_argument);
}

TEST_CASE("text and json rendering") {
  auto X = g(1, 0), Y = g(1, 1), T = g(1, 2);
  auto p = X * X * Y - T * Rational(2);
  CHECK(p.to_string() == "X1^2*Y1 - 2*T");
  CHECK(WeylPolynomial::from_json(1, p.to_json()) == p);
  CHECK(WeylPolynomial(1).to_string() == "0");
  CHECK((X * Rational(-3, 2)).to_string() == "-3/2*X1");
}
