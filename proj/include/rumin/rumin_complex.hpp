// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Rumin's complex (E₀•, d_c) on H^n built exactly over Q, together with d_c*
// and the Rumin Laplacians Δ_h as matrices of left-invariant operators.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "rumin/exterior.hpp"
#include "rumin/linalg.hpp"
#include "rumin/operator_matrix.hpp"

namespace rumin {

struct ComplexOptions {
  // Sign of dθ; anything other than kDThetaSign is a deliberate fault.
  int dtheta_sign = kDThetaSign;
  bool operator<(const ComplexOptions& o) const { return dtheta_sign < o.dtheta_sign; }
};

// Orthogonal basis ξ_1..ξ_N of E₀^h with squared norms stored separately.
struct E0Basis {
  int n = 1;
  int degree = 0;
  std::vector<Covector<Rational>> vectors;
  std::vector<Rational> gram;

  int size() const { return static_cast<int>(vectors.size()); }
  // Columns are the ξ_i in Θ^h coordinates.
  RationalMatrix embedding() const;
  // Rows are ξ_i^T / |ξ_i|^2, so coordinates() * embedding() = I.
  RationalMatrix coordinates() const;
  int weight() const;  // pure weight shared by all vectors (or -1 for the empty basis)
};

// de Rham d on Λ^h with operator coefficients, split by weight increase.
struct FullDMap {
  OperatorMatrix d0;  // algebraic, weight preserving
  OperatorMatrix d1;  // Σ_{j≤2n} W_j ω_j∧
  OperatorMatrix d2;  // T θ∧
  OperatorMatrix total() const { return d0 + d1 + d2; }
};

class RuminComplex {
 public:
  explicit RuminComplex(int n, ComplexOptions opt = {});

  int n() const { return n_; }
  int top() const { return 2 * n_ + 1; }
  const ComplexOptions& options() const { return opt_; }

  int lambda_dim(int h) const;
  const std::vector<BasisMask>& lambda_basis(int h) const { return lambda_.at(h); }

  // d₀ : Λ^h → Λ^{h+1} (zero-row matrix for h = 2n+1).
  const RationalMatrix& d0(int h) const { return d0_.at(h); }
  // Moore-Penrose inverse Λ^{h+1} → Λ^h, built on the single nonzero weight block.
  const RationalMatrix& d0_pinv(int h) const { return d0_pinv_.at(h); }
  const E0Basis& e0(int h) const { return e0_.at(h); }
  int e0_dim(int h) const { return e0_.at(h).size(); }
  const FullDMap& full_d(int h) const { return d_.at(h); }

  // Orthogonal projector I - d₀⁻¹d₀ - d₀d₀⁻¹ on Λ^h.
  RationalMatrix pi_e0(int h) const;
  // Π_E restricted to E₀^h, as a Λ^h × N_h operator matrix.
  OperatorMatrix pi_e(int h) const;

  const OperatorMatrix& dc(int h) const { return dc_.at(h); }        // 0 ≤ h ≤ 2n
  const OperatorMatrix& dc_star(int h) const { return dcs_.at(h - 1); }  // 1 ≤ h ≤ 2n+1
  const OperatorMatrix& laplacian(int h) const;                      // 0 ≤ h ≤ 2n+1

  // Homogeneity a of Δ_h: 4 at h = n, n+1, otherwise 2.
  int laplacian_order(int h) const { return (h == n_ || h == n_ + 1) ? 4 : 2; }
  // Homogeneity of d_c on E₀^h: 2 at h = n, otherwise 1.
  int dc_order(int h) const { return h == n_ ? 2 : 1; }

 private:
  void build_lambda();
  void build_d0();
  void build_e0();
  void build_full_d();
  void build_dc();

  int n_;
  ComplexOptions opt_;
  std::vector<std::vector<BasisMask>> lambda_;
  std::vector<RationalMatrix> d0_;
  std::vector<RationalMatrix> d0_pinv_;
  std::vector<E0Basis> e0_;
  std::vector<FullDMap> d_;
  std::vector<OperatorMatrix> dc_;
  std::vector<OperatorMatrix> dcs_;

  mutable std::mutex lap_mutex_;
  mutable std::map<int, OperatorMatrix> lap_;
};

// Process-wide cache keyed by (n, options). Safe under concurrent first use.
std::shared_ptr<const RuminComplex> get_complex(int n, ComplexOptions opt = {});

// Exact checks on the complex.
bool verify_dc_squared(const RuminComplex& c, int h);          // d_c(h+1) d_c(h) = 0
bool verify_full_d_squared(const RuminComplex& c, int h);      // d d = 0 on Λ^h
bool verify_hodge_duality(const RuminComplex& c, int h);       // ∗E₀^h ⊂ E₀^{2n+1-h}
bool verify_intertwining(const RuminComplex& c, int h);        // Δ_{h-1} d_c* = d_c* Δ_h
bool verify_laplacian_symmetry(const RuminComplex& c, int h);  // (Δ^{ij})* = Δ^{ji}, orthonormal
bool verify_laplacian_homogeneity(const RuminComplex& c, int h);
bool verify_dc_homogeneity(const RuminComplex& c, int h);
bool verify_e0_characterisation(const RuminComplex& c, int h);  // primitive / θ∧ker L
bool verify_pi_e0_projector(const RuminComplex& c, int h);
// Closed-form dimension for h ≤ n, Hodge pairing for h > n.
int expected_e0_dim(int n, int h);

}  // namespace rumin
