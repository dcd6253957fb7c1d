// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Operators with polynomial coefficients, Σ c_I(x,y,t) W^I, used to check the
// order structure of commutators [d_c, ζ] with multiplication operators.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "rumin/rumin_complex.hpp"

namespace rumin {

// Commutative polynomial in the coordinates (x_1..x_n, y_1..y_n, t).
class CoordinatePolynomial {
 public:
  explicit CoordinatePolynomial(int n = 1) : n_(n) {}
  static CoordinatePolynomial constant(int n, const Rational& c);
  static CoordinatePolynomial monomial(int n, std::vector<int> exps, const Rational& c = Rational(1));

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  void add(const std::vector<int>& e, const Rational& c);

  CoordinatePolynomial& operator+=(const CoordinatePolynomial& o);
  friend CoordinatePolynomial operator*(const CoordinatePolynomial& a, const CoordinatePolynomial& b);
  CoordinatePolynomial partial(int axis) const;
  // Apply the left-invariant frame field W_g to the polynomial.
  CoordinatePolynomial apply_generator(int g) const;
  std::string to_string() const;

 private:
  int n_;
  std::map<std::vector<int>, Rational> terms_;
};

class PolyCoefficientOperator {
 public:
  explicit PolyCoefficientOperator(int n = 1) : n_(n) {}
  static PolyCoefficientOperator multiplication(const CoordinatePolynomial& z);

  const std::map<WeylMonomial, CoordinatePolynomial>& terms() const { return terms_; }
  void add(const WeylMonomial& m, const CoordinatePolynomial& c);
  PolyCoefficientOperator& operator+=(const PolyCoefficientOperator& o);
  PolyCoefficientOperator scaled(const Rational& s) const;
  // W_g ∘ (this), via W_g(c W^J) = (W_g c) W^J + c W_g W^J.
  PolyCoefficientOperator left_generator(int g) const;
  bool is_zero() const { return terms_.empty(); }
  // Largest homogeneous degree d(J) of a monomial carrying a nonzero coefficient.
  int max_degree() const;

 private:
  int n_;
  std::map<WeylMonomial, CoordinatePolynomial> terms_;
};

// [P, ζ] = P∘ζ - ζ∘P.
PolyCoefficientOperator commutator(const WeylPolynomial& p, const CoordinatePolynomial& zeta);

struct LeibnizReport {
  int degree = 0;
  std::string zeta;
  int max_order = 0;   // highest homogeneous degree in [d_c, ζ]
  int bound = 0;       // 0 for h ≠ n, 1 for h = n
  bool ok = false;
};

// Commutator order check of d_c on E₀^h against all coordinate monomials of degree ≤ 2.
std::vector<LeibnizReport> verify_leibniz_structure(const RuminComplex& c, int h);
std::vector<CoordinatePolynomial> coordinate_monomials_upto2(int n);

}  // namespace rumin
