// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/weyl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rumin {

std::string FrameIndex::name() const {
  switch (kind()) {
    case FrameKind::X: return "X" + std::to_string(i + 1);
    case FrameKind::Y: return "Y" + std::to_string(i - n + 1);
    default: return "T";
  }
}

WeylMonomial::WeylMonomial(int n, std::vector<int> exps) : exps_(std::move(exps)) {
  if (static_cast<int>(exps_.size()) != 2 * n + 1)
    throw std::invalid_argument("WeylMonomial: exponent vector must have length 2n+1");
  for (int e : exps_)
    if (e < 0) throw std::invalid_argument("WeylMonomial: negative exponent");
}

WeylMonomial WeylMonomial::generator(int n, int i) {
  if (i < 0 || i > 2 * n) throw std::out_of_range("WeylMonomial::generator: bad frame index");
  WeylMonomial m(n);
  m.exps_[i] = 1;
  return m;
}

int WeylMonomial::length() const {
  int s = 0;
  for (int e : exps_) s += e;
  return s;
}

int WeylMonomial::degree() const { return length() + exps_.back(); }

std::string WeylMonomial::to_string() const {
  const int nn = n();
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += FrameIndex{nn, i}.name();
    if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
  }
  return out.empty() ? "1" : out;
}

WeylPolynomial::WeylPolynomial(int n, const Rational& c) : n_(n) {
  if (c != 0) terms_.emplace(WeylMonomial(n), c);
}

WeylPolynomial::WeylPolynomial(const WeylMonomial& m, const Rational& c) : n_(m.n()) {
  if (c != 0) terms_.emplace(m, c);
}

Rational WeylPolynomial::coefficient(const WeylMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void WeylPolynomial::add_term(const WeylMonomial& m, const Rational& c) {
  if (m.n() != n_) throw std::invalid_argument("WeylPolynomial: dimension mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WeylPolynomial& WeylPolynomial::operator+=(const WeylPolynomial& o) {
  if (o.n_ != n_) throw std::invalid_argument("WeylPolynomial: dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WeylPolynomial& WeylPolynomial::operator-=(const WeylPolynomial& o) {
  if (o.n_ != n_) throw std::invalid_argument("WeylPolynomial: dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

WeylPolynomial& WeylPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

WeylPolynomial WeylPolynomial::operator-() const {
  WeylPolynomial r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

int WeylPolynomial::max_length() const {
  int best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m.length());
  return best;
}

int WeylPolynomial::max_degree() const {
  int best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m.degree());
  return best;
}

namespace {

Rational binomial(int a, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational factorial(int k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(r);
}

}  // namespace

// X^a Y^b T^c · X^a' Y^b' T^c'. Only Y_j^b X_j^a' needs reordering:
//   Y^b X^a = sum_k (-1)^k k! C(b,k) C(a,k) X^(a-k) Y^(b-k) T^k.
WeylPolynomial monomial_product(const WeylMonomial& a, const WeylMonomial& b) {
  const int n = a.n();
  if (b.n() != n) throw std::invalid_argument("monomial_product: dimension mismatch");

  // Each entry: (exponents so far, coefficient); expand one pair index j at a time.
  std::vector<std::pair<std::vector<int>, Rational>> acc;
  std::vector<int> base(2 * n + 1, 0);
  base[2 * n] = a[2 * n] + b[2 * n];
  acc.emplace_back(base, Rational(1));

  for (int j = 0; j < n; ++j) {
    const int by = a[n + j];  // Y_j exponent on the left factor
    const int ax = b[j];      // X_j exponent on the right factor
    const int kmax = std::min(by, ax);
    std::vector<std::pair<std::vector<int>, Rational>> next;
    next.reserve(acc.size() * (kmax + 1));
    for (const auto& [e, c] : acc) {
      for (int k = 0; k <= kmax; ++k) {
        Rational w = factorial(k) * binomial(by, k) * binomial(ax, k);
        if (k % 2 == 1) w = -w;
        auto f = e;
        f[j] = a[j] + ax - k;
        f[n + j] = by - k + b[n + j];
        f[2 * n] += k;
        next.emplace_back(std::move(f), c * w);
      }
    }
    acc = std::move(next);
  }

  WeylPolynomial r(n);
  for (auto& [e, c] : acc) r.add_term(WeylMonomial(n, std::move(e)), c);
  return r;
}

WeylPolynomial operator*(const WeylPolynomial& a, const WeylPolynomial& b) {
  return normal_order_product(a, b);
}

WeylPolynomial normal_order_product(const WeylPolynomial& a, const WeylPolynomial& b) {
  if (a.n() != b.n()) throw std::invalid_argument("normal_order_product: dimension mismatch");
  WeylPolynomial r(a.n());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const Rational c = ca * cb;
      const WeylPolynomial prod = monomial_product(ma, mb);
      for (const auto& [m, cm] : prod.terms()) r.add_term(m, c * cm);
    }
  return r;
}

// (X^a Y^b T^c)^* = (-1)^|I| T^c Y^b X^a (reversed word, each factor negated).
WeylPolynomial formal_adjoint(const WeylPolynomial& p) {
  const int n = p.n();
  WeylPolynomial r(n);
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> xs(2 * n + 1, 0), ys(2 * n + 1, 0);
    for (int j = 0; j < n; ++j) {
      xs[j] = m[j];
      ys[n + j] = m[n + j];
    }
    ys[2 * n] = m[2 * n];
    WeylPolynomial q = monomial_product(WeylMonomial(n, ys), WeylMonomial(n, xs));
    const Rational sign = (m.length() % 2 == 0) ? Rational(1) : Rational(-1);
    q *= sign * c;
    r += q;
  }
  return r;
}

std::optional<int> homogeneous_degree(const WeylPolynomial& a) {
  if (a.is_zero()) throw std::invalid_argument("homogeneous_degree: zero polynomial");
  std::optional<int> d;
  for (const auto& [m, c] : a.terms()) {
    if (!d) d = m.degree();
    else if (*d != m.degree()) return std::nullopt;
  }
  return d;
}

std::string WeylPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  // Highest degree first, then lexicographically descending exponents.
  std::vector<std::pair<WeylMonomial, Rational>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& l, const auto& r) {
    if (l.first.degree() != r.first.degree()) return l.first.degree() > r.first.degree();
    return r.first < l.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : items) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << m.to_string();
    }
  }
  return os.str();
}

nlohmann::json WeylPolynomial::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [m, c] : terms_) {
    std::string key;
    for (int i = 0; i < m.size(); ++i) {
      if (i) key += ",";
      key += std::to_string(m[i]);
    }
    j[key] = c.get_str();
  }
  return j;
}

WeylPolynomial WeylPolynomial::from_json(int n, const nlohmann::json& j) {
  WeylPolynomial p(n);
  for (const auto& [key, val] : j.items()) {
    std::vector<int> e;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) e.push_back(std::stoi(part));
    p.add_term(WeylMonomial(n, e), rational_from_string(val.get<std::string>()));
  }
  return p;
}

}  // namespace rumin
