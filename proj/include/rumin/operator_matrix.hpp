// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rumin/linalg.hpp"
#include "rumin/weyl.hpp"

namespace rumin {

// Rectangular matrix of left-invariant operators acting on coefficient
// vectors. Bases on both sides are orthogonal with squared norms given by
// the Gram diagonals (all ones for Θ^h and for n = 1 E₀ bases).
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(int n, int rows, int cols);

  static OperatorMatrix from_constant(int n, const RationalMatrix& m);
  static OperatorMatrix identity(int n, int size);

  int n() const { return n_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  WeylPolynomial& operator()(int i, int j) { return e_[i * cols_ + j]; }
  const WeylPolynomial& operator()(int i, int j) const { return e_[i * cols_ + j]; }

  int source_degree = -1;
  int target_degree = -1;
  std::vector<Rational> source_gram;  // size cols
  std::vector<Rational> target_gram;  // size rows

  bool is_zero() const;
  // Common homogeneous degree of all nonzero entries; nullopt if they disagree
  // or the matrix is zero.
  std::optional<int> homogeneous_degree() const;
  int max_order() const;

  // Adjoint w.r.t. the Gram-weighted L^2 pairings on both sides.
  OperatorMatrix adjoint() const;

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  bool operator==(const OperatorMatrix& o) const;
  bool operator!=(const OperatorMatrix& o) const { return !(*this == o); }

  std::string to_text() const;
  nlohmann::json to_json() const;
  std::string to_csv() const;

 private:
  int n_ = 1;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<WeylPolynomial> e_;
};

}  // namespace rumin
