// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// The centred t-difference D_t commutes with every discrete frame field, and
// its eigenvectors v_k(j) = i^j sin(jkπ/(m+1)) sqrt(2/(m+1)) (eigenvalue iμ_k,
// μ_k = cos(kπ/(m+1))/h_t) split every discrete operator into independent
// complex blocks on the horizontal grid:
//   X_i -> D_{x_i} - (i μ/2) y_i,  Y_i -> D_{y_i} + (i μ/2) x_i,  T -> i μ.
// Real fields have conjugate-symmetric transforms, so only k <= (m+1)/2 is kept.

#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Sparse>

#include "rumin/grid.hpp"
#include "rumin/stencil.hpp"

namespace rumin {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;
using CVec = Eigen::VectorXcd;

// Transform of a field: one vector per kept block, component-major over the horizontal grid.
struct SpectralField {
  int degree = 0;
  int ncomp = 1;
  std::vector<CVec> blocks;
};

class TFourier {
 public:
  explicit TFourier(const GridSpec& g);

  const GridSpec& grid() const { return g_; }
  int blocks() const { return K_; }
  int k_of(int b) const { return b + 1; }
  double mu(int b) const { return mu_[b]; }
  // Parseval weight: 2 for conjugate-paired blocks, 1 for the self-paired middle block.
  double weight(int b) const { return b == K_ - 1 ? 1.0 : 2.0; }
  // Σ_j v_k(j), used for integrals.
  cplx column_sum(int b) const { return colsum_[b]; }

  SpectralField forward(const GridSection& u) const;
  CVec forward_block(const GridSection& u, int b) const;
  GridSection inverse(const SpectralField& f) const;

  // ||u||_2^2 (Riemann sum) from block contributions.
  double block_norm2(int b, const CVec& x) const;
  // ∫ u_comp dV from a block.
  double block_integral(int b, const CVec& x, int comp) const;

 private:
  GridSpec g_;
  int m_;
  int K_;
  std::vector<double> mu_;
  std::vector<cplx> colsum_;
  std::vector<std::vector<cplx>> v_;  // v_[b][j]
};

// Sparse block matrices of the discrete operators at a given μ.
class BlockAssembler {
 public:
  BlockAssembler(const GridSpec& g, double mu);

  int horizontal() const { return H_; }
  const SpMat& generator(int gen) const { return gens_[gen]; }
  SpMat word(const std::vector<int>& w);
  SpMat assemble(const FloatOperatorMatrix& f);

 private:
  GridSpec g_;
  int H_;
  std::vector<SpMat> gens_;
  std::map<std::vector<int>, SpMat> cache_;
};

// Block of the discrete Laplacian at μ, built from the same D and D^H products.
SpMat laplacian_block(const DiscreteLaplacian& lap, BlockAssembler& a);

// Exact diagonal of the real discrete Laplacian, used as Jacobi preconditioner.
GridSection laplacian_diagonal(const DiscreteLaplacian& lap, const TFourier& tf);

}  // namespace rumin
