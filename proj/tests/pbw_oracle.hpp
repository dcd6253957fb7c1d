// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force oracle for PBW normal ordering: rewrite words in the free algebra
// with single adjacent swaps until every word is ordered. Y_j X_j -> X_j Y_j - T;
// all other pairs commute.

#pragma once

#include <functional>
#include <map>
#include <vector>

#include "rumin/weyl.hpp"

namespace rumin::oracle {

using Word = std::vector<int>;

inline std::map<Word, Rational> free_rewrite(int n, std::map<Word, Rational> terms) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Word, Rational> next;
    for (const auto& [w, c] : terms) {
      std::size_t k = 0;
      while (k + 1 < w.size() && w[k] <= w[k + 1]) ++k;
      if (k + 1 >= w.size()) {
        next[w] += c;
        continue;
      }
      changed = true;
      Word sw = w;
      std::swap(sw[k], sw[k + 1]);
      next[sw] += c;
      const int a = w[k], b = w[k + 1];
      if (a >= n && a < 2 * n && b == a - n) {
        Word tw(w.begin(), w.begin() + k);
        tw.push_back(2 * n);
        tw.insert(tw.end(), w.begin() + k + 2, w.end());
        next[tw] -= c;
      }
    }
    terms.clear();
    for (auto& [w, c] : next)
      if (c != 0) terms[w] = c;
  }
  return terms;
}

inline WeylPolynomial from_words(int n, const std::map<Word, Rational>& terms) {
  WeylPolynomial p(n);
  for (const auto& [w, c] : terms) {
    std::vector<int> e(2 * n + 1, 0);
    for (int g : w) e[g]++;
    p.add_term(WeylMonomial(n, e), c);
  }
  return p;
}

inline Word word_of(const WeylMonomial& m) {
  Word w;
  for (int g = 0; g < m.size(); ++g)
    for (int k = 0; k < m[g]; ++k) w.push_back(g);
  return w;
}

// All monomials with total degree ≤ maxlen.
inline std::vector<WeylMonomial> monomials_upto(int n, int maxlen) {
  std::vector<WeylMonomial> out;
  std::vector<int> e(2 * n + 1, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == 2 * n + 1) {
      out.emplace_back(n, e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, maxlen);
  return out;
}

struct ProductSweep {
  long checked = 0;
  long mismatches = 0;
};

// monomial_product(a, b) against the rewriter for every pair with |a| + |b| ≤ max_total.
inline ProductSweep sweep_products(int n, int max_total) {
  ProductSweep r;
  const auto monos = monomials_upto(n, max_total);
  for (const auto& a : monos)
    for (const auto& b : monos) {
      if (a.length() + b.length() > max_total) continue;
      Word w = word_of(a);
      const Word wb = word_of(b);
      w.insert(w.end(), wb.begin(), wb.end());
      ++r.checked;
      if (!(monomial_product(a, b) == from_words(n, free_rewrite(n, {{w, Rational(1)}})))) ++r.mismatches;
    }
  return r;
}

}  // namespace rumin::oracle
