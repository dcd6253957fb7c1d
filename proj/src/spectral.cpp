// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rumin {

TFourier::TFourier(const GridSpec& g) : g_(g), m_(g.m[g.t_axis()]) {
  K_ = (m_ + 1) / 2;
  const double ht = g.spacing(g.t_axis());
  const double pi = std::numbers::pi;
  const double norm = std::sqrt(2.0 / (m_ + 1));
  const cplx I(0.0, 1.0);
  for (int b = 0; b < K_; ++b) {
    const int k = b + 1;
    mu_.push_back(b == K_ - 1 ? 0.0 : std::cos(k * pi / (m_ + 1)) / ht);
    std::vector<cplx> v(m_);
    cplx ipow(1.0, 0.0);
    cplx s(0.0, 0.0);
    for (int j = 1; j <= m_; ++j) {
      ipow *= I;
      v[j - 1] = ipow * (std::sin(j * k * pi / (m_ + 1)) * norm);
      s += v[j - 1];
    }
    v_.push_back(std::move(v));
    colsum_.push_back(s);
  }
}

CVec TFourier::forward_block(const GridSection& u, int b) const {
  const std::size_t H = g_.horizontal_nodes();
  CVec x(u.components() * H);
  const auto& v = v_[b];
  for (int c = 0; c < u.components(); ++c) {
    const double* d = u.comp(c);
    for (std::size_t h = 0; h < H; ++h) {
      cplx s(0.0, 0.0);
      const double* line = d + h * m_;
      for (int j = 0; j < m_; ++j) s += std::conj(v[j]) * line[j];
      x[c * H + h] = s;
    }
  }
  return x;
}

SpectralField TFourier::forward(const GridSection& u) const {
  SpectralField f;
  f.degree = u.degree();
  f.ncomp = u.components();
  for (int b = 0; b < K_; ++b) f.blocks.push_back(forward_block(u, b));
  return f;
}

GridSection TFourier::inverse(const SpectralField& f) const {
  GridSection u(g_, f.degree, f.ncomp);
  const std::size_t H = g_.horizontal_nodes();
  for (int b = 0; b < K_; ++b) {
    const auto& v = v_[b];
    const double w = weight(b);
    const CVec& x = f.blocks[b];
    for (int c = 0; c < f.ncomp; ++c) {
      double* d = u.comp(c);
      for (std::size_t h = 0; h < H; ++h) {
        const cplx a = x[c * H + h];
        double* line = d + h * m_;
        for (int j = 0; j < m_; ++j) line[j] += w * (v[j] * a).real();
      }
    }
  }
  return u;
}

double TFourier::block_norm2(int b, const CVec& x) const {
  return weight(b) * x.squaredNorm() * g_.cell_volume();
}

double TFourier::block_integral(int b, const CVec& x, int comp) const {
  const std::size_t H = g_.horizontal_nodes();
  cplx s = x.segment(comp * H, H).sum();
  return weight(b) * (colsum_[b] * s).real() * g_.cell_volume();
}

BlockAssembler::BlockAssembler(const GridSpec& g, double mu) : g_(g) {
  const int n = g.n;
  H_ = static_cast<int>(g.horizontal_nodes());
  // Horizontal axes are 0..2n-1, with strides equal to the 3D strides / m_t.
  const std::size_t mt = g.m[g.t_axis()];
  const cplx I(0.0, 1.0);
  std::vector<std::vector<double>> coord(2 * n, std::vector<double>(H_));
  for (int h = 0; h < H_; ++h) {
    std::size_t idx = h;
    for (int a = 2 * n - 1; a >= 0; --a) {
      coord[a][h] = g.coord(a, static_cast<int>(idx % g.m[a]));
      idx /= g.m[a];
    }
  }
  auto difference = [&](int axis) {
    std::vector<Eigen::Triplet<cplx>> tr;
    const std::size_t st = g.stride(axis) / mt;
    const double f = 1.0 / (2.0 * g.spacing(axis));
    for (int h = 0; h < H_; ++h) {
      const int i = static_cast<int>((h / st) % g.m[axis]);
      if (i + 1 < g.m[axis]) tr.emplace_back(h, static_cast<int>(h + st), f);
      if (i >= 1) tr.emplace_back(h, static_cast<int>(h - st), -f);
    }
    SpMat D(H_, H_);
    D.setFromTriplets(tr.begin(), tr.end());
    return D;
  };
  for (int gen = 0; gen <= 2 * n; ++gen) {
    SpMat G(H_, H_);
    std::vector<Eigen::Triplet<cplx>> diag;
    if (gen == 2 * n) {
      for (int h = 0; h < H_; ++h) diag.emplace_back(h, h, I * mu);
      G.setFromTriplets(diag.begin(), diag.end());
    } else {
      const bool isx = gen < n;
      const int other = isx ? n + gen : gen - n;
      const double s = isx ? -0.5 : 0.5;
      for (int h = 0; h < H_; ++h) diag.emplace_back(h, h, I * (mu * s * coord[other][h]));
      G.setFromTriplets(diag.begin(), diag.end());
      G += difference(gen);
    }
    G.makeCompressed();
    gens_.push_back(std::move(G));
  }
}

SpMat BlockAssembler::word(const std::vector<int>& w) {
  if (w.empty()) {
    SpMat I(H_, H_);
    I.setIdentity();
    return I;
  }
  auto it = cache_.find(w);
  if (it != cache_.end()) return it->second;
  std::vector<int> tail(w.begin() + 1, w.end());
  SpMat r = gens_[w.front()] * word(tail);
  r.prune(cplx(0.0, 0.0));
  cache_.emplace(w, r);
  return r;
}

SpMat BlockAssembler::assemble(const FloatOperatorMatrix& f) {
  std::vector<Eigen::Triplet<cplx>> tr;
  for (const auto& t : f.terms) {
    SpMat w = word(t.word);
    for (int k = 0; k < w.outerSize(); ++k)
      for (SpMat::InnerIterator it(w, k); it; ++it)
        tr.emplace_back(t.row * H_ + it.row(), t.col * H_ + it.col(), t.coef * it.value());
  }
  SpMat M(f.rows * H_, f.cols * H_);
  M.setFromTriplets(tr.begin(), tr.end());
  M.prune(cplx(0.0, 0.0), 1e-300);
  M.makeCompressed();
  return M;
}

SpMat laplacian_block(const DiscreteLaplacian& lap, BlockAssembler& a) {
  const int N = lap.components() * a.horizontal();
  SpMat out(N, N);
  if (lap.down()) {
    SpMat D = a.assemble(lap.down()->matrix());
    SpMat Dh = D.adjoint();
    SpMat A = D * Dh;
    if (lap.square_down()) A = SpMat(A * A);
    out += A;
  }
  if (lap.up()) {
    SpMat D = a.assemble(lap.up()->matrix());
    SpMat Dh = D.adjoint();
    SpMat B = Dh * D;
    if (lap.square_up()) B = SpMat(B * B);
    out += B;
  }
  out.prune(cplx(0.0, 0.0), 1e-300);
  out.makeCompressed();
  return out;
}

GridSection laplacian_diagonal(const DiscreteLaplacian& lap, const TFourier& tf) {
  const GridSpec& g = lap.grid();
  const int mt = g.m[g.t_axis()];
  const std::size_t H = g.horizontal_nodes();
  GridSection d(g, lap.degree(), lap.components());
  const double pi = std::numbers::pi;
  for (int b = 0; b < tf.blocks(); ++b) {
    BlockAssembler a(g, tf.mu(b));
    SpMat L = laplacian_block(lap, a);
    const int k = tf.k_of(b);
    for (int c = 0; c < lap.components(); ++c)
      for (std::size_t h = 0; h < H; ++h) {
        const double dv = L.coeff(c * H + h, c * H + h).real();
        double* line = d.comp(c) + h * mt;
        for (int j = 1; j <= mt; ++j) {
          const double s = std::sin(j * k * pi / (mt + 1));
          line[j - 1] += tf.weight(b) * dv * s * s * 2.0 / (mt + 1);
        }
      }
  }
  return d;
}

}  // namespace rumin
