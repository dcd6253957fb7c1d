// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Finite-difference realisation of operator matrices. Each frame field is a
// centred difference along its coordinate expression
//   X_i = ∂x_i - y_i/2 ∂t,  Y_i = ∂y_i + x_i/2 ∂t,  T = ∂t
// with zero extension, so every discrete generator is exactly skew-symmetric.
// Monomials are applied right to left.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "rumin/grid.hpp"
#include "rumin/operator_matrix.hpp"

namespace rumin {

class RuminComplex;

struct StencilTerm {
  int row = 0;
  int col = 0;
  std::vector<int> word;  // frame indices, leftmost first
  double coef = 0.0;
};

// Real operator matrix in orthonormal fibre bases.
struct FloatOperatorMatrix {
  int n = 1;
  int rows = 0;
  int cols = 0;
  int source_degree = -1;
  int target_degree = -1;
  std::vector<StencilTerm> terms;

  // Entry (i,j) rescaled by sqrt(g_i/g_j) to pass to orthonormal bases.
  static FloatOperatorMatrix from(const OperatorMatrix& op);
  // Exact matrix transpose of the discretisation: reversed words, sign (-1)^|word|.
  FloatOperatorMatrix transpose() const;
  int max_word() const;
};

// out = W_g in (zero extension).
void apply_generator(const GridSpec& g, int gen, const double* in, double* out);

class StencilOperator {
 public:
  StencilOperator(FloatOperatorMatrix m, const GridSpec& g);
  static StencilOperator assemble(const OperatorMatrix& op, const GridSpec& g) {
    return StencilOperator(FloatOperatorMatrix::from(op), g);
  }

  const FloatOperatorMatrix& matrix() const { return m_; }
  const GridSpec& grid() const { return g_; }
  int rows() const { return m_.rows; }
  int cols() const { return m_.cols; }

  GridSection apply(const GridSection& u) const;
  StencilOperator transpose() const { return StencilOperator(m_.transpose(), g_); }

 private:
  struct Node {
    std::vector<std::pair<int, int>> child;  // (generator, node)
    std::vector<std::pair<int, double>> out; // (row, coef)
  };
  void visit(const std::vector<Node>& trie, int node, const std::vector<double>& f, GridSection& out,
             std::vector<std::vector<double>>& scratch, int depth) const;

  FloatOperatorMatrix m_;
  GridSpec g_;
  std::vector<std::vector<Node>> tries_;  // one per column
};

// Δ_h = A + B with A = D_{h-1} D_{h-1}^T, B = D_h^T D_h; A squared at h = n,
// B squared at h = n+1. Symmetric and positive semidefinite by construction.
class DiscreteLaplacian {
 public:
  DiscreteLaplacian(const RuminComplex& c, int h, const GridSpec& g);

  int degree() const { return h_; }
  int components() const { return ncomp_; }
  const GridSpec& grid() const { return g_; }
  const std::optional<StencilOperator>& down() const { return down_; }  // D_{h-1}
  const std::optional<StencilOperator>& up() const { return up_; }      // D_h
  bool square_down() const { return sq_down_; }
  bool square_up() const { return sq_up_; }

  GridSection apply(const GridSection& u) const;

 private:
  int h_;
  int ncomp_;
  GridSpec g_;
  std::optional<StencilOperator> down_, up_, down_t_, up_t_;
  bool sq_down_ = false, sq_up_ = false;
};

using LinearMap = std::function<GridSection(const GridSection&)>;

// max over trials of |<Au,v> - <u,A*v>| / (|u||v|) for random interior-supported u, v.
double adjoint_consistency(const OperatorMatrix& op, const OperatorMatrix& op_adjoint, const GridSpec& g,
                           int trials, unsigned seed = 1);

}  // namespace rumin
