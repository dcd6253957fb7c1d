// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/exterior.hpp"

#include <algorithm>

namespace rumin {

std::vector<int> CovectorBasisElement::indices() const {
  std::vector<int> out;
  for (int i = 0; i <= 2 * n; ++i)
    if ((mask >> i) & 1u) out.push_back(i + 1);
  return out;
}

std::string CovectorBasisElement::name() const {
  if (mask == 0) return "1";
  std::string s;
  for (int i = 0; i <= 2 * n; ++i) {
    if (!((mask >> i) & 1u)) continue;
    if (!s.empty()) s += "^";
    if (i < n) s += "dx" + std::to_string(i + 1);
    else if (i < 2 * n) s += "dy" + std::to_string(i - n + 1);
    else s += "theta";
  }
  return s;
}

int binomial_int(int a, int k) {
  if (k < 0 || k > a) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (a - k + i) / i;
  return static_cast<int>(r);
}

std::vector<BasisMask> form_basis(int n, int h) {
  const int dim = 2 * n + 1;
  if (h < 0 || h > dim) return {};
  std::vector<BasisMask> out;
  for (BasisMask m = 0; m < (BasisMask(1) << dim); ++m)
    if (std::popcount(m) == h) out.push_back(m);
  auto key = [n](BasisMask m) {
    return std::make_pair(CovectorBasisElement{n, m}.weight(), CovectorBasisElement{n, m}.indices());
  };
  std::sort(out.begin(), out.end(), [&](BasisMask a, BasisMask b) { return key(a) < key(b); });
  return out;
}

int wedge_sign(BasisMask a, BasisMask b) {
  if (a & b) return 0;
  // Count inversions: pairs (i in a, j in b) with i > j.
  int inv = 0;
  for (BasisMask bb = b; bb; bb &= bb - 1) {
    const int j = std::countr_zero(bb);
    inv += std::popcount(a >> (j + 1));
  }
  return (inv % 2 == 0) ? 1 : -1;
}

}  // namespace rumin
