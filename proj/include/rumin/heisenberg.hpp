// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Group arithmetic on the Heisenberg group H^n in exponential coordinates
// (x, y, t), x, y in R^n. Works for exact rationals and for doubles.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rumin/rational.hpp"

namespace rumin {

struct GroupDims {
  int n = 1;
  int topological() const { return 2 * n + 1; }
  int homogeneous() const { return 2 * n + 2; }
};

template <typename Scalar>
struct GroupPoint {
  std::vector<Scalar> x;
  std::vector<Scalar> y;
  Scalar t{};

  GroupPoint() = default;
  GroupPoint(std::vector<Scalar> xs, std::vector<Scalar> ys, Scalar tt)
      : x(std::move(xs)), y(std::move(ys)), t(std::move(tt)) {
    if (x.size() != y.size() || x.empty())
      throw std::invalid_argument("GroupPoint: x and y must have equal positive length");
  }

  static GroupPoint identity(int n) {
    return GroupPoint(std::vector<Scalar>(n, Scalar(0)), std::vector<Scalar>(n, Scalar(0)),
                      Scalar(0));
  }

  int n() const { return static_cast<int>(x.size()); }

  bool operator==(const GroupPoint& o) const { return x == o.x && y == o.y && t == o.t; }
};

using RationalPoint = GroupPoint<Rational>;
using RealPoint = GroupPoint<double>;

template <typename Scalar>
GroupPoint<Scalar> group_mul(const GroupPoint<Scalar>& p, const GroupPoint<Scalar>& q) {
  if (p.n() != q.n()) throw std::invalid_argument("group_mul: dimension mismatch");
  GroupPoint<Scalar> r = p;
  Scalar skew(0);
  for (int j = 0; j < p.n(); ++j) {
    r.x[j] += q.x[j];
    r.y[j] += q.y[j];
    skew += p.x[j] * q.y[j] - p.y[j] * q.x[j];
  }
  r.t = p.t + q.t + skew / Scalar(2);
  return r;
}

template <typename Scalar>
GroupPoint<Scalar> inverse(const GroupPoint<Scalar>& p) {
  GroupPoint<Scalar> r = p;
  for (auto& v : r.x) v = -v;
  for (auto& v : r.y) v = -v;
  r.t = -r.t;
  return r;
}

template <typename Scalar>
GroupPoint<Scalar> dilate(const Scalar& lambda, const GroupPoint<Scalar>& p) {
  if (!(lambda > Scalar(0))) throw std::invalid_argument("dilate: lambda must be positive");
  GroupPoint<Scalar> r = p;
  for (auto& v : r.x) v *= lambda;
  for (auto& v : r.y) v *= lambda;
  r.t *= lambda * lambda;
  return r;
}

// Fourth power of the Koranyi gauge, (|x|^2 + |y|^2)^2 + 16 t^2. Exact for rationals.
template <typename Scalar>
Scalar koranyi_norm4(const GroupPoint<Scalar>& p) {
  Scalar r2(0);
  for (int j = 0; j < p.n(); ++j) r2 += p.x[j] * p.x[j] + p.y[j] * p.y[j];
  return r2 * r2 + Scalar(16) * p.t * p.t;
}

template <typename Scalar>
double koranyi_norm(const GroupPoint<Scalar>& p) {
  return std::pow(to_double(koranyi_norm4(p)), 0.25);
}

template <typename Scalar>
double koranyi_dist(const GroupPoint<Scalar>& p, const GroupPoint<Scalar>& q) {
  return koranyi_norm(group_mul(inverse(p), q));
}

inline RealPoint to_real(const RationalPoint& p) {
  RealPoint r;
  for (const auto& v : p.x) r.x.push_back(v.get_d());
  for (const auto& v : p.y) r.y.push_back(v.get_d());
  r.t = p.t.get_d();
  return r;
}

}  // namespace rumin
