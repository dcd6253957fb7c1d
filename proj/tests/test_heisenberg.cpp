// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "rumin/heisenberg.hpp"

using namespace rumin;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  return make_rational(num(rng), den(rng));
}

RationalPoint random_point(std::mt19937_64& rng, int n) {
  std::vector<Rational> x(n), y(n);
  for (int j = 0; j < n; ++j) {
    x[j] = random_rational(rng);
    y[j] = random_rational(rng);
  }
  return RationalPoint(x, y, random_rational(rng));
}

RealPoint random_real(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> x(n), y(n);
  for (int j = 0; j < n; ++j) {
    x[j] = u(rng);
    y[j] = u(rng);
  }
  return RealPoint(x, y, u(rng));
}

}  // namespace

TEST_CASE("group law examples") {
  RationalPoint p({make_rational(1)}, {make_rational(2)}, make_rational(3));
  CHECK(group_mul(p, RationalPoint::identity(1)) == p);
  CHECK(group_mul(RationalPoint::identity(1), p) == p);

  RationalPoint a({make_rational(1)}, {make_rational(0)}, make_rational(0));
  RationalPoint b({make_rational(0)}, {make_rational(1)}, make_rational(0));
  CHECK(group_mul(a, b) == RationalPoint({make_rational(1)}, {make_rational(1)}, make_rational(1, 2)));

  CHECK(inverse(p) == RationalPoint({make_rational(-1)}, {make_rational(-2)}, make_rational(-3)));
  CHECK(inverse(RationalPoint::identity(2)) == RationalPoint::identity(2));
  CHECK_THROWS_AS(group_mul(p, RationalPoint::identity(2)), std::invalid_argument);
}

TEST_CASE("inverse and associativity on random exact triples") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 3;
    auto p = random_point(rng, n), q = random_point(rng, n), r = random_point(rng, n);
    REQUIRE(group_mul(group_mul(p, q), r) == group_mul(p, group_mul(q, r)));
    REQUIRE(group_mul(p, inverse(p)) == RationalPoint::identity(n));
    REQUIRE(inverse(inverse(p)) == p);
  }
}

TEST_CASE("dilations") {
  RationalPoint p({make_rational(1)}, {make_rational(1)}, make_rational(1));
  CHECK(dilate(make_rational(2), p) == RationalPoint({make_rational(2)}, {make_rational(2)}, make_rational(4)));
  CHECK(dilate(make_rational(1), p) == p);
  CHECK_THROWS_AS(dilate(make_rational(0), p), std::invalid_argument);
  CHECK_THROWS_AS(dilate(make_rational(-1), p), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    auto a = random_point(rng, n), b = random_point(rng, n);
    Rational lam = Rational(abs(random_rational(rng)) + make_rational(1, 3));
    Rational mu = Rational(abs(random_rational(rng)) + make_rational(1, 5));
    REQUIRE(dilate(lam, group_mul(a, b)) == group_mul(dilate(lam, a), dilate(lam, b)));
    REQUIRE(dilate(lam, dilate(mu, a)) == dilate(Rational(lam * mu), a));
    // ϱ(δ_λ p)^4 = λ^4 ϱ(p)^4 exactly
    REQUIRE(koranyi_norm4(dilate(lam, a)) == lam * lam * lam * lam * koranyi_norm4(a));
  }
}

TEST_CASE("Koranyi gauge and distance") {
  CHECK(koranyi_norm(RealPoint({1.0}, {0.0}, 0.0)) == doctest::Approx(1.0));
  CHECK(koranyi_norm(RealPoint({0.0}, {0.0}, 1.0)) == doctest::Approx(2.0));
  CHECK(koranyi_norm(RealPoint::identity(2)) == 0.0);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 3;
    auto p = random_real(rng, n), q = random_real(rng, n), g = random_real(rng, n), r = random_real(rng, n);
    REQUIRE(koranyi_norm(dilate(3.0, p)) == doctest::Approx(3.0 * koranyi_norm(p)).epsilon(1e-12));
    REQUIRE(koranyi_dist(group_mul(g, p), group_mul(g, q)) == doctest::Approx(koranyi_dist(p, q)).epsilon(1e-10));
    REQUIRE(koranyi_dist(p, q) == doctest::Approx(koranyi_dist(q, p)).epsilon(1e-12));
    REQUIRE(koranyi_dist(p, r) <= koranyi_dist(p, q) + koranyi_dist(q, r) + 1e-12);
  }
}

TEST_CASE("homogeneous dimension") {
  for (int n = 1; n <= 3; ++n) CHECK(GroupDims{n}.homogeneous() == 2 * n + 2);
}
