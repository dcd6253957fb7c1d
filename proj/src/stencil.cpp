// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rumin/rumin_complex.hpp"

namespace rumin {

FloatOperatorMatrix FloatOperatorMatrix::from(const OperatorMatrix& op) {
  FloatOperatorMatrix f;
  f.n = op.n();
  f.rows = op.rows();
  f.cols = op.cols();
  f.source_degree = op.source_degree;
  f.target_degree = op.target_degree;
  for (int i = 0; i < op.rows(); ++i)
    for (int j = 0; j < op.cols(); ++j) {
      const double gi = op.target_gram.empty() ? 1.0 : to_double(op.target_gram[i]);
      const double gj = op.source_gram.empty() ? 1.0 : to_double(op.source_gram[j]);
      const double scale = std::sqrt(gi / gj);
      for (const auto& [m, c] : op(i, j).terms()) {
        StencilTerm t;
        t.row = i;
        t.col = j;
        for (int g = 0; g < m.size(); ++g)
          for (int k = 0; k < m[g]; ++k) t.word.push_back(g);
        t.coef = to_double(c) * scale;
        f.terms.push_back(std::move(t));
      }
    }
  return f;
}

FloatOperatorMatrix FloatOperatorMatrix::transpose() const {
  FloatOperatorMatrix f = *this;
  std::swap(f.rows, f.cols);
  std::swap(f.source_degree, f.target_degree);
  for (auto& t : f.terms) {
    std::swap(t.row, t.col);
    std::reverse(t.word.begin(), t.word.end());
    if (t.word.size() % 2) t.coef = -t.coef;
  }
  return f;
}

int FloatOperatorMatrix::max_word() const {
  std::size_t w = 0;
  for (const auto& t : terms) w = std::max(w, t.word.size());
  return static_cast<int>(w);
}

namespace {

// out += s * centred difference of `in` along `axis`, optionally multiplied
// pointwise by coordinate `coef_axis` (or 1 if coef_axis < 0).
void add_difference(const GridSpec& g, int axis, int coef_axis, double s, const double* in, double* out) {
  const int A = g.axes();
  const std::size_t st = g.stride(axis);
  const int ma = g.m[axis];
  const double f = s / (2.0 * g.spacing(axis));
  const std::size_t N = g.nodes();
  // Iterate over lines along `axis`.
  const std::size_t outer = N / (st * ma);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t r = 0; r < st; ++r) {
      const std::size_t base = o * st * ma + r;
      double w = f;
      if (coef_axis >= 0) {
        // coefficient axis differs from `axis`, so it is constant along the line
        std::size_t idx = base;
        int ci = 0;
        for (int a = A - 1; a >= 0; --a) {
          const int k = g.m[a];
          if (a == coef_axis) ci = static_cast<int>(idx % k);
          idx /= k;
        }
        w *= g.coord(coef_axis, ci);
      }
      if (w == 0.0) continue;
      const double* p = in + base;
      double* q = out + base;
      q[0] += w * p[st];
      for (int i = 1; i < ma - 1; ++i) q[i * st] += w * (p[(i + 1) * st] - p[(i - 1) * st]);
      q[(ma - 1) * st] -= w * p[(ma - 2) * st];
    }
}

}  // namespace

void apply_generator(const GridSpec& g, int gen, const double* in, double* out) {
  const int n = g.n;
  const std::size_t N = g.nodes();
  std::fill(out, out + N, 0.0);
  const int t = 2 * n;
  if (gen == t) {
    add_difference(g, t, -1, 1.0, in, out);
  } else if (gen < n) {
    add_difference(g, gen, -1, 1.0, in, out);
    add_difference(g, t, n + gen, -0.5, in, out);
  } else {
    add_difference(g, gen, -1, 1.0, in, out);
    add_difference(g, t, gen - n, 0.5, in, out);
  }
}

StencilOperator::StencilOperator(FloatOperatorMatrix m, const GridSpec& g) : m_(std::move(m)), g_(g) {
  g_.validate();
  if (m_.n != g_.n) throw std::invalid_argument("StencilOperator: group dimension mismatch");
  const int need = std::max(3, m_.max_word() + 1);
  for (int a = 0; a < g_.axes(); ++a)
    if (g_.m[a] - 2 < need) throw std::invalid_argument("StencilOperator: grid too small for stencil width");
  tries_.assign(m_.cols, std::vector<Node>(1));
  for (const auto& t : m_.terms) {
    auto& trie = tries_[t.col];
    int node = 0;
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
      int next = -1;
      for (const auto& [gg, c] : trie[node].child)
        if (gg == *it) next = c;
      if (next < 0) {
        next = static_cast<int>(trie.size());
        trie[node].child.emplace_back(*it, next);
        trie.emplace_back();
      }
      node = next;
    }
    trie[node].out.emplace_back(t.row, t.coef);
  }
}

void StencilOperator::visit(const std::vector<Node>& trie, int node, const std::vector<double>& f,
                            GridSection& out, std::vector<std::vector<double>>& scratch, int depth) const {
  const std::size_t N = g_.nodes();
  for (const auto& [row, c] : trie[node].out) {
    double* o = out.comp(row);
    for (std::size_t i = 0; i < N; ++i) o[i] += c * f[i];
  }
  for (const auto& [gen, child] : trie[node].child) {
    apply_generator(g_, gen, f.data(), scratch[depth].data());
    visit(trie, child, scratch[depth], out, scratch, depth + 1);
  }
}

GridSection StencilOperator::apply(const GridSection& u) const {
  if (!(u.grid() == g_) || u.components() != m_.cols) throw std::invalid_argument("StencilOperator::apply: shape mismatch");
  GridSection out(g_, m_.target_degree, m_.rows);
  const std::size_t N = g_.nodes();
  std::vector<std::vector<double>> scratch(m_.max_word(), std::vector<double>(N));
  for (int j = 0; j < m_.cols; ++j) {
    std::vector<double> f(u.comp(j), u.comp(j) + N);
    visit(tries_[j], 0, f, out, scratch, 0);
  }
  return out;
}

DiscreteLaplacian::DiscreteLaplacian(const RuminComplex& c, int h, const GridSpec& g) : h_(h), g_(g) {
  const int n = c.n();
  if (h < 0 || h > 2 * n + 1) throw std::out_of_range("DiscreteLaplacian: degree out of range");
  ncomp_ = c.e0_dim(h);
  if (h >= 1) {
    down_.emplace(StencilOperator::assemble(c.dc(h - 1), g));
    down_t_.emplace(down_->transpose());
  }
  if (h <= 2 * n) {
    up_.emplace(StencilOperator::assemble(c.dc(h), g));
    up_t_.emplace(up_->transpose());
  }
  sq_down_ = (h == n);
  sq_up_ = (h == n + 1);
}

GridSection DiscreteLaplacian::apply(const GridSection& u) const {
  GridSection out(g_, h_, ncomp_);
  if (down_) {
    GridSection a = down_->apply(down_t_->apply(u));
    if (sq_down_) a = down_->apply(down_t_->apply(a));
    out += a;
  }
  if (up_) {
    GridSection b = up_t_->apply(up_->apply(u));
    if (sq_up_) b = up_t_->apply(up_->apply(b));
    out += b;
  }
  return out;
}

double adjoint_consistency(const OperatorMatrix& op, const OperatorMatrix& op_adjoint, const GridSpec& g,
                           int trials, unsigned seed) {
  StencilOperator A = StencilOperator::assemble(op, g);
  StencilOperator As = StencilOperator::assemble(op_adjoint, g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const int margin = std::max(A.matrix().max_word(), As.matrix().max_word()) + 1;
  auto random_field = [&](int ncomp, int degree) {
    GridSection u(g, degree, ncomp);
    const int Ax = g.axes();
    for (int c = 0; c < ncomp; ++c)
      for (std::size_t i = 0; i < g.nodes(); ++i) {
        std::size_t idx = i;
        bool interior = true;
        for (int a = Ax - 1; a >= 0; --a) {
          const int k = static_cast<int>(idx % g.m[a]);
          idx /= g.m[a];
          if (k < margin || k >= g.m[a] - margin) interior = false;
        }
        u.comp(c)[i] = interior ? U(rng) : 0.0;
      }
    return u;
  };
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    GridSection u = random_field(op.cols(), op.source_degree);
    GridSection v = random_field(op.rows(), op.target_degree);
    const double lhs = inner_product(A.apply(u), v);
    const double rhs = inner_product(u, As.apply(v));
    worst = std::max(worst, std::abs(lhs - rhs) / (l2_norm(u) * l2_norm(v)));
  }
  return worst;
}

}  // namespace rumin
