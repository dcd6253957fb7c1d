// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/rumin_complex.hpp"

#include <numeric>
#include <stdexcept>

namespace rumin {

namespace {

// Scale a rational vector to a primitive integer vector with positive leading entry.
std::vector<Rational> primitive(std::vector<Rational> v) {
  mpz_class l = 1, g = 0;
  for (const auto& x : v)
    if (x != 0) l = lcm(l, mpz_class(x.get_den()));
  for (auto& x : v) {
    x *= l;
    if (x != 0) g = gcd(g, mpz_class(x.get_num()));
  }
  if (g == 0) return v;
  Rational s(mpz_class(1), g);
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0) s = -s;
      break;
    }
  for (auto& x : v) {
    x *= s;
    x.canonicalize();
  }
  return v;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

RationalMatrix E0Basis::embedding() const {
  const int dim = binomial_int(2 * n + 1, degree);
  RationalMatrix m(dim, size());
  for (int j = 0; j < size(); ++j) {
    auto col = vectors[j].dense();
    for (int i = 0; i < dim; ++i) m(i, j) = col[i];
  }
  return m;
}

RationalMatrix E0Basis::coordinates() const {
  RationalMatrix m = embedding().transpose();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) /= gram[i];
  return m;
}

int E0Basis::weight() const {
  int w = -1;
  for (const auto& v : vectors)
    for (const auto& [m, c] : v.coefficients()) {
      const int wm = CovectorBasisElement{n, m}.weight();
      if (w < 0) w = wm;
      else if (w != wm) return -2;
    }
  return w;
}

RuminComplex::RuminComplex(int n, ComplexOptions opt) : n_(n), opt_(opt) {
  if (n < 1) throw std::invalid_argument("RuminComplex: n must be >= 1");
  if (2 * n + 1 > 31) throw std::invalid_argument("RuminComplex: n too large");
  build_lambda();
  build_d0();
  build_e0();
  build_full_d();
  build_dc();
}

int RuminComplex::lambda_dim(int h) const { return (h < 0 || h > top()) ? 0 : binomial_int(top(), h); }

void RuminComplex::build_lambda() {
  for (int h = 0; h <= top(); ++h) lambda_.push_back(form_basis(n_, h));
}

void RuminComplex::build_d0() {
  const auto dth = dtheta<Rational>(n_, opt_.dtheta_sign);
  const BasisMask theta = BasisMask(1) << (2 * n_);
  for (int h = 0; h <= top(); ++h) {
    const auto& src = lambda_[h];
    RationalMatrix m(lambda_dim(h + 1), static_cast<int>(src.size()));
    if (h < top()) {
      const auto& tgt = lambda_[h + 1];
      for (std::size_t j = 0; j < src.size(); ++j) {
        if (!(src[j] & theta)) continue;
        // d(ω_J ∧ θ) = (-1)^{|J|} ω_J ∧ dθ
        const BasisMask jmask = src[j] & ~theta;
        auto img = wedge(Covector<Rational>::basis(n_, jmask), dth);
        if (std::popcount(jmask) % 2 == 1) img *= Rational(-1);
        for (std::size_t i = 0; i < tgt.size(); ++i) m(static_cast<int>(i), static_cast<int>(j)) = img.coefficient(tgt[i]);
      }
    }
    d0_.push_back(m);

    // Pseudo-inverse on the block (θ-columns) → (horizontal rows); zero elsewhere.
    RationalMatrix pinv(m.cols(), m.rows());
    if (m.rows() > 0) {
      std::vector<int> cols, rows;
      for (int j = 0; j < m.cols(); ++j)
        if (src[j] & theta) cols.push_back(j);
      const auto& tgt = lambda_[h + 1];
      for (int i = 0; i < m.rows(); ++i)
        if (!(tgt[i] & theta)) rows.push_back(i);
      RationalMatrix block(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
      for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b) block(static_cast<int>(a), static_cast<int>(b)) = m(rows[a], cols[b]);
      if (block.rows() > 0 && block.cols() > 0) {
        RationalMatrix bp = pseudo_inverse(block);
        for (std::size_t b = 0; b < cols.size(); ++b)
          for (std::size_t a = 0; a < rows.size(); ++a) pinv(cols[b], rows[a]) = bp(static_cast<int>(b), static_cast<int>(a));
      }
    }
    d0_pinv_.push_back(pinv);
  }
}

void RuminComplex::build_e0() {
  for (int h = 0; h <= top(); ++h) {
    const int dim = lambda_dim(h);
    RationalMatrix constraints = d0_[h];
    if (h > 0) constraints = vstack(constraints, d0_[h - 1].transpose());
    auto kernel = null_space(constraints);

    // Gram-Schmidt without normalisation; keep primitive integer vectors.
    std::vector<std::vector<Rational>> ortho;
    for (auto v : kernel) {
      for (const auto& u : ortho) {
        const Rational f = dot(v, u) / dot(u, u);
        for (int i = 0; i < dim; ++i) v[i] -= f * u[i];
      }
      ortho.push_back(primitive(std::move(v)));
    }

    E0Basis b;
    b.n = n_;
    b.degree = h;
    for (const auto& u : ortho) {
      b.vectors.push_back(Covector<Rational>::from_dense(n_, h, u));
      b.gram.push_back(dot(u, u));
    }
    e0_.push_back(std::move(b));
  }
}

void RuminComplex::build_full_d() {
  const BasisMask theta = BasisMask(1) << (2 * n_);
  for (int h = 0; h <= top(); ++h) {
    const auto& src = lambda_[h];
    const int rows = lambda_dim(h + 1);
    FullDMap d{OperatorMatrix::from_constant(n_, d0_[h]), OperatorMatrix(n_, rows, static_cast<int>(src.size())),
               OperatorMatrix(n_, rows, static_cast<int>(src.size()))};
    if (h < top()) {
      const auto& tgt = lambda_[h + 1];
      std::map<BasisMask, int> row_of;
      for (std::size_t i = 0; i < tgt.size(); ++i) row_of[tgt[i]] = static_cast<int>(i);
      for (std::size_t j = 0; j < src.size(); ++j)
        for (int g = 0; g <= 2 * n_; ++g) {
          const BasisMask gm = BasisMask(1) << g;
          const int s = wedge_sign(gm, src[j]);
          if (s == 0) continue;
          WeylPolynomial w = WeylPolynomial::generator(n_, g) * Rational(s);
          OperatorMatrix& part = (gm == theta) ? d.d2 : d.d1;
          part(row_of.at(gm | src[j]), static_cast<int>(j)) += w;
        }
    }
    for (auto* m : {&d.d0, &d.d1, &d.d2}) {
      m->source_degree = h;
      m->target_degree = h + 1;
    }
    d_.push_back(std::move(d));
  }
}

RationalMatrix RuminComplex::pi_e0(int h) const {
  const int dim = lambda_dim(h);
  RationalMatrix p = RationalMatrix::identity(dim);
  if (h <= top() && d0_[h].rows() > 0) p = p - d0_pinv_[h] * d0_[h];
  if (h > 0) p = p - d0_[h - 1] * d0_pinv_[h - 1];
  return p;
}

OperatorMatrix RuminComplex::pi_e(int h) const {
  OperatorMatrix iota = OperatorMatrix::from_constant(n_, e0_[h].embedding());
  if (h >= 1 && h <= n_) {
    OperatorMatrix pinv = OperatorMatrix::from_constant(n_, d0_pinv_[h]);
    iota = iota - pinv * (d_[h].d1 * iota);
  }
  iota.source_degree = h;
  iota.target_degree = h;
  iota.source_gram = e0_[h].gram;
  return iota;
}

void RuminComplex::build_dc() {
  for (int h = 0; h < top(); ++h) {
    OperatorMatrix coords = OperatorMatrix::from_constant(n_, e0_[h + 1].coordinates());
    OperatorMatrix proj = OperatorMatrix::from_constant(n_, pi_e0(h + 1));
    OperatorMatrix dc = coords * (proj * (d_[h].total() * pi_e(h)));
    dc.source_degree = h;
    dc.target_degree = h + 1;
    dc.source_gram = e0_[h].gram;
    dc.target_gram = e0_[h + 1].gram;
    dc_.push_back(dc);
  }
  for (int h = 0; h < top(); ++h) dcs_.push_back(dc_[h].adjoint());
}

const OperatorMatrix& RuminComplex::laplacian(int h) const {
  if (h < 0 || h > top()) throw std::out_of_range("laplacian: degree out of range");
  std::lock_guard<std::mutex> lock(lap_mutex_);
  if (auto it = lap_.find(h); it != lap_.end()) return it->second;

  std::optional<OperatorMatrix> down, up;  // d_c d_c* and d_c* d_c on E₀^h
  if (h >= 1) down = dc(h - 1) * dc_star(h);
  if (h < top()) up = dc_star(h + 1) * dc(h);
  if (h == n_ && down) down = *down * *down;
  if (h == n_ + 1 && up) up = *up * *up;

  OperatorMatrix lap;
  if (down && up) lap = *down + *up;
  else lap = down ? *down : *up;
  lap.source_degree = h;
  lap.target_degree = h;
  lap.source_gram = e0_[h].gram;
  lap.target_gram = e0_[h].gram;
  return lap_.emplace(h, std::move(lap)).first->second;
}

std::shared_ptr<const RuminComplex> get_complex(int n, ComplexOptions opt) {
  static std::mutex mu;
  static std::map<std::pair<int, ComplexOptions>, std::shared_ptr<const RuminComplex>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, opt});
    if (it != cache.end()) return it->second;
  }
  // Build outside the lock; a concurrent duplicate build is discarded.
  auto built = std::make_shared<const RuminComplex>(n, opt);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(n, opt), built).first->second;
}

bool verify_dc_squared(const RuminComplex& c, int h) {
  if (h < 0 || h + 1 >= c.top()) return true;
  return (c.dc(h + 1) * c.dc(h)).is_zero();
}

bool verify_full_d_squared(const RuminComplex& c, int h) {
  if (h < 0 || h + 1 >= c.top()) return true;
  return (c.full_d(h + 1).total() * c.full_d(h).total()).is_zero();
}

bool verify_hodge_duality(const RuminComplex& c, int h) {
  const E0Basis& src = c.e0(h);
  const E0Basis& dual = c.e0(c.top() - h);
  if (src.size() != dual.size()) return false;
  for (const auto& xi : src.vectors) {
    auto star = hodge_star(xi);
    auto rest = star;
    for (int i = 0; i < dual.size(); ++i) {
      Rational f = inner(star, dual.vectors[i]) / dual.gram[i];
      rest -= f * dual.vectors[i];
    }
    if (!rest.is_zero()) return false;
  }
  return true;
}

bool verify_intertwining(const RuminComplex& c, int h) {
  if (h < 1 || h > c.top()) throw std::out_of_range("verify_intertwining: need 1 <= h <= 2n+1");
  return c.laplacian(h - 1) * c.dc_star(h) == c.dc_star(h) * c.laplacian(h);
}

// In the normalised basis (Δ^{ij})* = Δ^{ji} reads g_i (Δ^{ij})* = g_j Δ^{ji}.
bool verify_laplacian_symmetry(const RuminComplex& c, int h) {
  const OperatorMatrix& lap = c.laplacian(h);
  const auto& g = c.e0(h).gram;
  for (int i = 0; i < lap.rows(); ++i)
    for (int j = 0; j < lap.cols(); ++j)
      if (formal_adjoint(lap(i, j)) * g[i] != lap(j, i) * g[j]) return false;
  return true;
}

bool verify_laplacian_homogeneity(const RuminComplex& c, int h) {
  auto d = c.laplacian(h).homogeneous_degree();
  return d && *d == c.laplacian_order(h);
}

bool verify_dc_homogeneity(const RuminComplex& c, int h) {
  auto d = c.dc(h).homogeneous_degree();
  return d && *d == c.dc_order(h);
}

bool verify_e0_characterisation(const RuminComplex& c, int h) {
  const int n = c.n();
  const BasisMask theta = BasisMask(1) << (2 * n);
  const E0Basis& b = c.e0(h);
  if (h == 0) return b.size() == 1 && b.vectors[0] == Covector<Rational>::one(n);
  const auto& basis = c.lambda_basis(h);
  const int dim = static_cast<int>(basis.size());

  // Constraints cutting out the characterised subspace of Λ^h.
  std::vector<std::vector<Rational>> rows;
  auto unit_row = [&](int i) {
    std::vector<Rational> r(dim, Rational(0));
    r[i] = 1;
    return r;
  };
  if (h <= n) {
    // horizontal ...
    for (int i = 0; i < dim; ++i)
      if (basis[i] & theta) rows.push_back(unit_row(i));
    // ... and orthogonal to dθ ∧ Λ_H^{h-2}
    if (h >= 2)
      for (BasisMask m : c.lambda_basis(h - 2)) {
        if (m & theta) continue;
        auto v = lefschetz(Covector<Rational>::basis(n, m), c.options().dtheta_sign);
        if (v.degree() == h) rows.push_back(v.dense());
      }
  } else {
    // α = β ∧ θ with β horizontal and dθ ∧ β = 0
    for (int i = 0; i < dim; ++i)
      if (!(basis[i] & theta)) rows.push_back(unit_row(i));
    const auto& tgt = c.lambda_basis(h + 1 <= c.top() ? h + 1 : h);
    std::vector<std::vector<Rational>> lrows(h + 1 <= c.top() ? tgt.size() : 0, std::vector<Rational>(dim));
    for (int j = 0; j < dim; ++j) {
      if (!(basis[j] & theta) || h + 1 > c.top()) continue;
      auto beta = Covector<Rational>::basis(n, basis[j] & ~theta);
      auto lb = lefschetz(beta, c.options().dtheta_sign);
      if (lb.degree() != h + 1) continue;
      for (std::size_t i = 0; i < tgt.size(); ++i) lrows[i][j] = lb.coefficient(tgt[i]);
    }
    for (auto& r : lrows) rows.push_back(r);
  }
  RationalMatrix m(static_cast<int>(rows.size()), dim);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  const int char_dim = dim - (m.rows() ? rank(m) : 0);
  if (char_dim != b.size()) return false;
  for (const auto& v : b.vectors) {
    auto d = v.dense();
    for (const auto& r : rows)
      if (dot(r, d) != 0) return false;
  }
  return true;
}

bool verify_pi_e0_projector(const RuminComplex& c, int h) {
  RationalMatrix p = c.pi_e0(h);
  if (!(p * p == p)) return false;
  RationalMatrix e = c.e0(h).embedding();
  return p * e == e && p == p.transpose();
}

int expected_e0_dim(int n, int h) {
  if (h < 0 || h > 2 * n + 1) return 0;
  if (h > n) return expected_e0_dim(n, 2 * n + 1 - h);
  if (h == 0) return 1;
  if (h == 1) return 2 * n;
  return binomial_int(2 * n, h) - binomial_int(2 * n, h - 2);
}

}  // namespace rumin
