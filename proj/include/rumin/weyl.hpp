// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Left-invariant differential operators on H^n as polynomials in the frame
// W_1..W_{2n+1} = X_1..X_n, Y_1..Y_n, T, kept in PBW normal order
// X_1^a1 .. X_n^an Y_1^b1 .. Y_n^bn T^c. The only nontrivial relation is
// [X_j, Y_j] = T, with T central.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rumin/rational.hpp"

namespace rumin {

enum class FrameKind { X, Y, T };

// 0-based frame index i in [0, 2n]; the printed name uses the 1-based convention.
struct FrameIndex {
  int n = 1;
  int i = 0;

  FrameKind kind() const { return i < n ? FrameKind::X : (i < 2 * n ? FrameKind::Y : FrameKind::T); }
  int dhom() const { return kind() == FrameKind::T ? 2 : 1; }
  std::string name() const;
};

class WeylMonomial {
 public:
  explicit WeylMonomial(int n = 1) : exps_(2 * n + 1, 0) {}
  WeylMonomial(int n, std::vector<int> exps);

  static WeylMonomial generator(int n, int i);

  int n() const { return static_cast<int>(exps_.size() - 1) / 2; }
  int size() const { return static_cast<int>(exps_.size()); }
  int operator[](int i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  // Total number of generators |I|.
  int length() const;
  // Homogeneous degree d(I): X, Y count 1, T counts 2.
  int degree() const;
  bool is_one() const { return length() == 0; }

  bool operator<(const WeylMonomial& o) const { return exps_ < o.exps_; }
  bool operator==(const WeylMonomial& o) const { return exps_ == o.exps_; }

  std::string to_string() const;

 private:
  std::vector<int> exps_;
};

class WeylPolynomial {
 public:
  using Terms = std::map<WeylMonomial, Rational>;

  explicit WeylPolynomial(int n = 1) : n_(n) {}
  WeylPolynomial(int n, const Rational& c);
  WeylPolynomial(const WeylMonomial& m, const Rational& c);

  static WeylPolynomial generator(int n, int i) {
    return WeylPolynomial(WeylMonomial::generator(n, i), Rational(1));
  }

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const WeylMonomial& m) const;

  void add_term(const WeylMonomial& m, const Rational& c);

  WeylPolynomial& operator+=(const WeylPolynomial& o);
  WeylPolynomial& operator-=(const WeylPolynomial& o);
  WeylPolynomial& operator*=(const Rational& c);
  WeylPolynomial operator-() const;

  friend WeylPolynomial operator+(WeylPolynomial a, const WeylPolynomial& b) { return a += b; }
  friend WeylPolynomial operator-(WeylPolynomial a, const WeylPolynomial& b) { return a -= b; }
  friend WeylPolynomial operator*(WeylPolynomial a, const Rational& c) { return a *= c; }
  friend WeylPolynomial operator*(const Rational& c, WeylPolynomial a) { return a *= c; }
  // Operator composition a∘b, rewritten in PBW normal order.
  friend WeylPolynomial operator*(const WeylPolynomial& a, const WeylPolynomial& b);

  bool operator==(const WeylPolynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const WeylPolynomial& o) const { return !(*this == o); }

  // Highest number of frame derivatives in any term (0 for constants).
  int max_length() const;
  int max_degree() const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static WeylPolynomial from_json(int n, const nlohmann::json& j);

 private:
  int n_;
  Terms terms_;
};

WeylPolynomial normal_order_product(const WeylPolynomial& a, const WeylPolynomial& b);
WeylPolynomial monomial_product(const WeylMonomial& a, const WeylMonomial& b);

// Formal L^2 adjoint; W_i^* = -W_i since H^n is unimodular.
WeylPolynomial formal_adjoint(const WeylPolynomial& a);

// d(I) when all monomials share it, std::nullopt when inhomogeneous.
// Throws std::invalid_argument on the zero polynomial.
std::optional<int> homogeneous_degree(const WeylPolynomial& a);

}  // namespace rumin
