// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Left-invariant exterior algebra of H^n over the frame ω_1..ω_{2n+1}
// (dx_1..dx_n, dy_1..dy_n, θ). Basis covectors ω_I are bitmasks over 0-based
// indices, bit 2n being θ. Θ^h is orthonormal; dV = ω_1∧…∧ω_{2n+1}.

#pragma once

#include <bit>
#include <type_traits>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rumin/rational.hpp"

namespace rumin {

using BasisMask = std::uint32_t;

struct CovectorBasisElement {
  int n = 1;
  BasisMask mask = 0;

  int degree() const { return std::popcount(mask); }
  bool has_theta() const { return (mask >> (2 * n)) & 1u; }
  int weight() const { return degree() + (has_theta() ? 1 : 0); }
  std::vector<int> indices() const;  // 1-based, increasing
  std::string name() const;          // e.g. "dx1^dy1^theta"
};

// Θ^h ordered by weight, then lexicographically by index list.
std::vector<BasisMask> form_basis(int n, int h);
int binomial_int(int a, int k);

// Sign of ω_A ∧ ω_B relative to ω_{A∪B}; 0 if A and B overlap.
int wedge_sign(BasisMask a, BasisMask b);

template <typename Scalar = Rational>
class Covector {
 public:
  using Map = std::map<BasisMask, Scalar>;

  Covector(int n, int degree) : n_(n), degree_(degree) {
    if (degree < 0 || degree > 2 * n + 1) throw std::invalid_argument("Covector: bad degree");
  }

  static Covector basis(int n, BasisMask m, Scalar c = Scalar(1)) {
    Covector v(n, std::popcount(m));
    v.add(m, c);
    return v;
  }
  static Covector one(int n) { return basis(n, 0u); }
  static Covector volume(int n) { return basis(n, (BasisMask(1) << (2 * n + 1)) - 1); }

  int n() const { return n_; }
  int degree() const { return degree_; }
  const Map& coefficients() const { return coef_; }
  bool is_zero() const { return coef_.empty(); }

  Scalar coefficient(BasisMask m) const {
    auto it = coef_.find(m);
    return it == coef_.end() ? Scalar(0) : it->second;
  }

  void add(BasisMask m, const Scalar& c) {
    if (std::popcount(m) != degree_) throw std::invalid_argument("Covector: degree mismatch");
    if (c == Scalar(0)) return;
    auto [it, ins] = coef_.emplace(m, c);
    if (!ins) {
      it->second += c;
      if (it->second == Scalar(0)) coef_.erase(it);
    }
  }

  Covector& operator+=(const Covector& o) {
    check_same(o);
    for (const auto& [m, c] : o.coef_) add(m, c);
    return *this;
  }
  Covector& operator-=(const Covector& o) {
    check_same(o);
    for (const auto& [m, c] : o.coef_) add(m, -c);
    return *this;
  }
  Covector& operator*=(const Scalar& s) {
    if (s == Scalar(0)) coef_.clear();
    for (auto& [m, c] : coef_) c *= s;
    return *this;
  }
  friend Covector operator+(Covector a, const Covector& b) { return a += b; }
  friend Covector operator-(Covector a, const Covector& b) { return a -= b; }
  friend Covector operator*(const Scalar& s, Covector a) { return a *= s; }
  bool operator==(const Covector& o) const {
    return n_ == o.n_ && degree_ == o.degree_ && coef_ == o.coef_;
  }

  // Dense coordinates in the ordered basis form_basis(n, degree).
  std::vector<Scalar> dense() const {
    auto b = form_basis(n_, degree_);
    std::vector<Scalar> v(b.size(), Scalar(0));
    for (std::size_t i = 0; i < b.size(); ++i) v[i] = coefficient(b[i]);
    return v;
  }
  static Covector from_dense(int n, int degree, const std::vector<Scalar>& v) {
    auto b = form_basis(n, degree);
    if (b.size() != v.size()) throw std::invalid_argument("Covector::from_dense: size mismatch");
    Covector c(n, degree);
    for (std::size_t i = 0; i < b.size(); ++i) c.add(b[i], v[i]);
    return c;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [m, c] : coef_) {
      nlohmann::json idx = CovectorBasisElement{n_, m}.indices();
      if constexpr (std::is_same_v<Scalar, Rational>)
        j.push_back({{"indices", idx}, {"coefficient", c.get_str()}});
      else
        j.push_back({{"indices", idx}, {"coefficient", c}});
    }
    return j;
  }

 private:
  void check_same(const Covector& o) const {
    if (o.n_ != n_ || o.degree_ != degree_) throw std::invalid_argument("Covector: shape mismatch");
  }

  int n_;
  int degree_;
  Map coef_;
};

template <typename Scalar>
Covector<Scalar> wedge(const Covector<Scalar>& a, const Covector<Scalar>& b) {
  if (a.n() != b.n()) throw std::invalid_argument("wedge: dimension mismatch");
  const int n = a.n();
  const int deg = a.degree() + b.degree();
  if (deg > 2 * n + 1) return Covector<Scalar>(n, 2 * n + 1);  // zero; degree clamped
  Covector<Scalar> r(n, deg);
  for (const auto& [ma, ca] : a.coefficients())
    for (const auto& [mb, cb] : b.coefficients()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      const Scalar p = ca * cb;
      r.add(ma | mb, s > 0 ? p : Scalar(-p));
    }
  return r;
}

template <typename Scalar>
Scalar inner(const Covector<Scalar>& a, const Covector<Scalar>& b) {
  if (a.n() != b.n() || a.degree() != b.degree()) return Scalar(0);
  Scalar s(0);
  for (const auto& [m, c] : a.coefficients()) s += c * b.coefficient(m);
  return s;
}

// ∗ω_I = sign(I, I^c) ω_{I^c}, so that a ∧ ∗b = <a,b> dV.
template <typename Scalar>
Covector<Scalar> hodge_star(const Covector<Scalar>& a) {
  const int n = a.n();
  const BasisMask full = (BasisMask(1) << (2 * n + 1)) - 1;
  Covector<Scalar> r(n, 2 * n + 1 - a.degree());
  for (const auto& [m, c] : a.coefficients()) {
    const BasisMask comp = full & ~m;
    r.add(comp, wedge_sign(m, comp) > 0 ? c : Scalar(-c));
  }
  return r;
}

// Sign of dθ. Recomputed from θ = dt - 1/2 Σ(x_j dy_j - y_j dx_j) in the tests.
inline constexpr int kDThetaSign = -1;

// dθ = kDThetaSign · Σ_j ω_j ∧ ω_{n+j}; `sign` overrides for fault injection.
template <typename Scalar = Rational>
Covector<Scalar> dtheta(int n, int sign = kDThetaSign) {
  Covector<Scalar> r(n, 2);
  for (int j = 0; j < n; ++j) r.add((BasisMask(1) << j) | (BasisMask(1) << (n + j)), Scalar(sign));
  return r;
}

template <typename Scalar>
Covector<Scalar> lefschetz(const Covector<Scalar>& a, int sign = kDThetaSign) {
  return wedge(dtheta<Scalar>(a.n(), sign), a);
}

// Split into the weight-h and weight-(h+1) components.
template <typename Scalar>
std::pair<Covector<Scalar>, Covector<Scalar>> weight_split(const Covector<Scalar>& a) {
  Covector<Scalar> lo(a.n(), a.degree()), hi(a.n(), a.degree());
  for (const auto& [m, c] : a.coefficients()) {
    if (CovectorBasisElement{a.n(), m}.has_theta()) hi.add(m, c);
    else lo.add(m, c);
  }
  return {lo, hi};
}

}  // namespace rumin
