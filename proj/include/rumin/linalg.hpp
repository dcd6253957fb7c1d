// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Small dense matrices over Q: reduced row echelon form, null spaces and the
// Moore-Penrose pseudo-inverse via a full-rank factorisation.

#pragma once

#include <stdexcept>
#include <vector>

#include "rumin/rational.hpp"

namespace rumin {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  bool is_zero() const;
  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  std::vector<Rational> column(int j) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

struct RowEchelon {
  RationalMatrix reduced;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

RowEchelon rref(const RationalMatrix& m);
int rank(const RationalMatrix& m);
// Basis of {v : m v = 0}, one vector per free column, in increasing free-column order.
std::vector<std::vector<Rational>> null_space(const RationalMatrix& m);
RationalMatrix pseudo_inverse(const RationalMatrix& m);
RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace rumin
