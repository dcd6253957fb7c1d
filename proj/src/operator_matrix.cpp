// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/operator_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace rumin {

OperatorMatrix::OperatorMatrix(int n, int rows, int cols)
    : source_gram(cols, Rational(1)),
      target_gram(rows, Rational(1)),
      n_(n),
      rows_(rows),
      cols_(cols),
      e_(static_cast<std::size_t>(rows) * cols, WeylPolynomial(n)) {}

OperatorMatrix OperatorMatrix::from_constant(int n, const RationalMatrix& m) {
  OperatorMatrix r(n, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) r(i, j) = WeylPolynomial(n, m(i, j));
  return r;
}

OperatorMatrix OperatorMatrix::identity(int n, int size) {
  return from_constant(n, RationalMatrix::identity(size));
}

bool OperatorMatrix::is_zero() const {
  for (const auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

std::optional<int> OperatorMatrix::homogeneous_degree() const {
  std::optional<int> d;
  for (const auto& p : e_) {
    if (p.is_zero()) continue;
    auto dp = rumin::homogeneous_degree(p);
    if (!dp) return std::nullopt;
    if (!d) d = dp;
    else if (*d != *dp) return std::nullopt;
  }
  return d;
}

int OperatorMatrix::max_order() const {
  int m = 0;
  for (const auto& p : e_) m = std::max(m, p.max_degree());
  return m;
}

// (A*)_{ij} = g_j' / g_i · formal_adjoint(A_{ji}), g source Gram, g' target Gram.
OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix r(n_, cols_, rows_);
  r.source_degree = target_degree;
  r.target_degree = source_degree;
  r.source_gram = target_gram;
  r.target_gram = source_gram;
  for (int i = 0; i < cols_; ++i)
    for (int j = 0; j < rows_; ++j) {
      const WeylPolynomial& p = (*this)(j, i);
      if (p.is_zero()) continue;
      r(i, j) = formal_adjoint(p) * (target_gram[j] / source_gram[i]);
    }
  return r;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.cols_ != b.rows_ || a.n_ != b.n_)
    throw std::invalid_argument("OperatorMatrix: shape mismatch in composition");
  OperatorMatrix r(a.n_, a.rows_, b.cols_);
  r.source_degree = b.source_degree;
  r.target_degree = a.target_degree;
  r.source_gram = b.source_gram;
  r.target_gram = a.target_gram;
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const WeylPolynomial& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const WeylPolynomial& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        r(i, j) += aik * bkj;
      }
    }
  return r;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("OperatorMatrix: shape mismatch");
  OperatorMatrix r = a;
  for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
  return r;
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("OperatorMatrix: shape mismatch");
  OperatorMatrix r = a;
  for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
  return r;
}

bool OperatorMatrix::operator==(const OperatorMatrix& o) const {
  return n_ == o.n_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

std::string OperatorMatrix::to_text() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) os << "[" << i + 1 << "," << j + 1 << "] " << (*this)(i, j).to_string() << "\n";
  return os.str();
}

nlohmann::json OperatorMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < rows_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < cols_; ++j) row.push_back((*this)(i, j).to_json());
    rows.push_back(row);
  }
  auto grams = [](const std::vector<Rational>& g) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : g) a.push_back(v.get_str());
    return a;
  };
  return {{"rows", rows_},
          {"cols", cols_},
          {"source_degree", source_degree},
          {"target_degree", target_degree},
          {"source_gram", grams(source_gram)},
          {"target_gram", grams(target_gram)},
          {"entries", rows}};
}

std::string OperatorMatrix::to_csv() const {
  std::ostringstream os;
  os << "row,col,entry\n";
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) os << i + 1 << "," << j + 1 << ",\"" << (*this)(i, j).to_string() << "\"\n";
  return os.str();
}

}  // namespace rumin
