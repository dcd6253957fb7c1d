// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/leibniz.hpp"

#include <sstream>
#include <stdexcept>

namespace rumin {

CoordinatePolynomial CoordinatePolynomial::constant(int n, const Rational& c) {
  CoordinatePolynomial p(n);
  p.add(std::vector<int>(2 * n + 1, 0), c);
  return p;
}

CoordinatePolynomial CoordinatePolynomial::monomial(int n, std::vector<int> exps, const Rational& c) {
  CoordinatePolynomial p(n);
  p.add(exps, c);
  return p;
}

void CoordinatePolynomial::add(const std::vector<int>& e, const Rational& c) {
  if (c == 0) return;
  auto [it, ins] = terms_.emplace(e, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CoordinatePolynomial& CoordinatePolynomial::operator+=(const CoordinatePolynomial& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

CoordinatePolynomial operator*(const CoordinatePolynomial& a, const CoordinatePolynomial& b) {
  CoordinatePolynomial r(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      auto e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add(e, ca * cb);
    }
  return r;
}

CoordinatePolynomial CoordinatePolynomial::partial(int axis) const {
  CoordinatePolynomial r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    auto f = e;
    f[axis] -= 1;
    r.add(f, c * e[axis]);
  }
  return r;
}

// X_i = ∂_{x_i} - y_i/2 ∂_t, Y_i = ∂_{y_i} + x_i/2 ∂_t, T = ∂_t.
CoordinatePolynomial CoordinatePolynomial::apply_generator(int g) const {
  const int t = 2 * n_;
  if (g == t) return partial(t);
  CoordinatePolynomial r = partial(g);
  std::vector<int> e(2 * n_ + 1, 0);
  Rational half(1, 2);
  if (g < n_) {
    e[n_ + g] = 1;
    half = -half;
  } else {
    e[g - n_] = 1;
  }
  r += monomial(n_, e, half) * partial(t);
  return r;
}

std::string CoordinatePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      const int ii = static_cast<int>(i);
      os << "*" << (ii < n_ ? "x" + std::to_string(ii + 1)
                            : ii < 2 * n_ ? "y" + std::to_string(ii - n_ + 1) : std::string("t"));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

PolyCoefficientOperator PolyCoefficientOperator::multiplication(const CoordinatePolynomial& z) {
  PolyCoefficientOperator op(z.n());
  op.add(WeylMonomial(z.n()), z);
  return op;
}

void PolyCoefficientOperator::add(const WeylMonomial& m, const CoordinatePolynomial& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PolyCoefficientOperator& PolyCoefficientOperator::operator+=(const PolyCoefficientOperator& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

PolyCoefficientOperator PolyCoefficientOperator::scaled(const Rational& s) const {
  PolyCoefficientOperator r(n_);
  for (const auto& [m, c] : terms_) r.add(m, c * CoordinatePolynomial::constant(n_, s));
  return r;
}

PolyCoefficientOperator PolyCoefficientOperator::left_generator(int g) const {
  PolyCoefficientOperator r(n_);
  const WeylMonomial wg = WeylMonomial::generator(n_, g);
  for (const auto& [m, c] : terms_) {
    r.add(m, c.apply_generator(g));
    const WeylPolynomial prod = monomial_product(wg, m);
    for (const auto& [mm, cc] : prod.terms())
      r.add(mm, c * CoordinatePolynomial::constant(n_, cc));
  }
  return r;
}

int PolyCoefficientOperator::max_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

PolyCoefficientOperator commutator(const WeylPolynomial& p, const CoordinatePolynomial& zeta) {
  const int n = p.n();
  PolyCoefficientOperator r(n);
  for (const auto& [m, a] : p.terms()) {
    // Word of m in normal order; apply its letters right to left.
    std::vector<int> word;
    for (int g = 0; g <= 2 * n; ++g)
      for (int k = 0; k < m[g]; ++k) word.push_back(g);
    PolyCoefficientOperator op = PolyCoefficientOperator::multiplication(zeta);
    for (auto it = word.rbegin(); it != word.rend(); ++it) op = op.left_generator(*it);
    PolyCoefficientOperator zm(n);
    zm.add(m, zeta * CoordinatePolynomial::constant(n, Rational(-1)));
    op += zm;
    r += op.scaled(a);
  }
  return r;
}

std::vector<CoordinatePolynomial> coordinate_monomials_upto2(int n) {
  const int d = 2 * n + 1;
  std::vector<CoordinatePolynomial> out;
  out.push_back(CoordinatePolynomial::constant(n, Rational(1)));
  for (int i = 0; i < d; ++i) {
    std::vector<int> e(d, 0);
    e[i] = 1;
    out.push_back(CoordinatePolynomial::monomial(n, e));
  }
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      std::vector<int> e(d, 0);
      e[i] += 1;
      e[j] += 1;
      out.push_back(CoordinatePolynomial::monomial(n, e));
    }
  return out;
}

std::vector<LeibnizReport> verify_leibniz_structure(const RuminComplex& c, int h) {
  if (h < 0 || h >= c.top()) throw std::out_of_range("verify_leibniz_structure: need 0 <= h <= 2n");
  const OperatorMatrix& dc = c.dc(h);
  std::vector<LeibnizReport> out;
  for (const auto& zeta : coordinate_monomials_upto2(c.n())) {
    LeibnizReport rep;
    rep.degree = h;
    rep.zeta = zeta.to_string();
    rep.bound = (h == c.n()) ? 1 : 0;
    for (int i = 0; i < dc.rows(); ++i)
      for (int j = 0; j < dc.cols(); ++j) {
        if (dc(i, j).is_zero()) continue;
        rep.max_order = std::max(rep.max_order, commutator(dc(i, j), zeta).max_degree());
      }
    rep.ok = rep.max_order <= rep.bound;
    out.push_back(rep);
  }
  return out;
}

}  // namespace rumin
