// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <random>

#include "rumin/grid.hpp"
#include "rumin/heisenberg.hpp"
#include "rumin/rumin_complex.hpp"
#include "rumin/stencil.hpp"

using namespace rumin;

namespace {

// Commutative polynomial in (x, y, t) for n = 1, used as a symbolic oracle.
using Exp = std::array<int, 3>;
using Poly = std::map<Exp, double>;

Poly deriv(const Poly& p, int axis) {
  Poly r;
  for (const auto& [e, c] : p)
    if (e[axis] > 0) {
      Exp f = e;
      --f[axis];
      r[f] += c * e[axis];
    }
  return r;
}

Poly mul_coord(const Poly& p, int axis, double s) {
  Poly r;
  for (const auto& [e, c] : p) {
    Exp f = e;
    ++f[axis];
    r[f] += s * c;
  }
  return r;
}

Poly add(Poly a, const Poly& b) {
  for (const auto& [e, c] : b) a[e] += c;
  return a;
}

// X = ∂x - y/2 ∂t, Y = ∂y + x/2 ∂t, T = ∂t.
Poly frame(const Poly& p, int gen) {
  if (gen == 2) return deriv(p, 2);
  if (gen == 0) return add(deriv(p, 0), mul_coord(deriv(p, 2), 1, -0.5));
  return add(deriv(p, 1), mul_coord(deriv(p, 2), 0, 0.5));
}

double eval(const Poly& p, const std::vector<double>& q) {
  double s = 0.0;
  for (const auto& [e, c] : p) s += c * std::pow(q[0], e[0]) * std::pow(q[1], e[1]) * std::pow(q[2], e[2]);
  return s;
}

int weight(int gen) { return gen == 2 ? 2 : 1; }

bool interior(const GridSpec& g, std::size_t i, int margin) {
  for (int a = g.axes() - 1; a >= 0; --a) {
    const int k = static_cast<int>(i % g.m[a]);
    i /= g.m[a];
    if (k < margin || k >= g.m[a] - margin) return false;
  }
  return true;
}

OperatorMatrix scalar_op(const WeylPolynomial& w) {
  OperatorMatrix op(w.n(), 1, 1);
  op(0, 0) = w;
  return op;
}

GridSection gaussian(const GridSpec& g, double w, double wt, std::vector<double> c = {0, 0, 0}) {
  GridSection u(g, 0, 1);
  u.fill(0, [&](const std::vector<double>& p) {
    return std::exp(-0.5 * ((p[0] - c[0]) * (p[0] - c[0]) + (p[1] - c[1]) * (p[1] - c[1])) / (w * w) -
                    0.5 * (p[2] - c[2]) * (p[2] - c[2]) / (wt * wt));
  });
  return u;
}

RealPoint rp(const std::vector<double>& p) { return RealPoint({p[0]}, {p[1]}, p[2]); }

}  // namespace

TEST_CASE("X1 on x is 1 and the commutator X1Y1 - Y1X1 on t is 1") {
  auto g = GridSpec::make(1, 2.0, 17, 0.25);
  GridSection fx(g, 0, 1), ft(g, 0, 1);
  fx.fill(0, [](const std::vector<double>& p) { return p[0]; });
  ft.fill(0, [](const std::vector<double>& p) { return p[2]; });
  const auto X = WeylPolynomial::generator(1, 0);
  const auto Y = WeylPolynomial::generator(1, 1);
  auto ux = StencilOperator::assemble(scalar_op(X), g).apply(fx);
  // Commutator assembled as explicit words, bypassing normal ordering.
  FloatOperatorMatrix cm;
  cm.n = 1;
  cm.rows = cm.cols = 1;
  cm.terms = {{0, 0, {0, 1}, 1.0}, {0, 0, {1, 0}, -1.0}};
  auto ut = StencilOperator(cm, g).apply(ft);
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    if (interior(g, i, 1)) CHECK(ux.comp(0)[i] == doctest::Approx(1.0).epsilon(1e-12));
    if (interior(g, i, 2)) CHECK(ut.comp(0)[i] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("normal-ordered monomials are exact on polynomials of matching weighted degree") {
  auto g = GridSpec::make(1, 1.5, 19, 0.5);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  // All weighted-degree ≤ 4 words X^a Y^b T^c.
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      for (int c = 0; a + b + 2 * c <= 4; ++c) {
        const int d = a + b + 2 * c;
        if (d == 0) continue;
        WeylPolynomial w = WeylPolynomial(1, Rational(1));
        std::vector<int> word;
        for (int i = 0; i < a; ++i) word.push_back(0);
        for (int i = 0; i < b; ++i) word.push_back(1);
        for (int i = 0; i < c; ++i) word.push_back(2);
        for (int gen : word) w = w * WeylPolynomial::generator(1, gen);
        // Random polynomial with every monomial of weighted degree ≤ d.
        Poly p;
        for (int i = 0; i <= d; ++i)
          for (int j = 0; i + j <= d; ++j)
            for (int k = 0; i + j + 2 * k <= d; ++k) p[{i, j, k}] = coef(rng);
        Poly want = p;
        for (auto it = word.rbegin(); it != word.rend(); ++it) want = frame(want, *it);
        GridSection u(g, 0, 1);
        u.fill(0, [&](const std::vector<double>& q) { return eval(p, q); });
        auto got = StencilOperator::assemble(scalar_op(w), g).apply(u);
        double err = 0.0;
        for (std::size_t i = 0; i < g.nodes(); ++i)
          if (interior(g, i, static_cast<int>(word.size()) + 1))
            err = std::max(err, std::abs(got.comp(0)[i] - eval(want, u.point(i))));
        INFO("word X^" << a << " Y^" << b << " T^" << c);
        CHECK(err < 1e-7);
      }
}

TEST_CASE("degree-0 Laplacian on a Gaussian converges at second order") {
  auto c = get_complex(1);
  const double s = 1.0;
  auto exact = [&](const std::vector<double>& p) {
    const double x = p[0], y = p[1], t = p[2], a = t / (s * s);
    const double f = std::exp(-0.5 * (x * x + y * y) - 0.5 * t * t / (s * s));
    const double P = -x + 0.5 * y * a, R = -y - 0.5 * x * a;
    return -(-2.0 - (x * x + y * y) / (4 * s * s) + P * P + R * R) * f;
  };
  std::vector<double> errs;
  for (int m : {21, 41}) {
    auto g = GridSpec::make(1, 5.0, m, 0.2);
    auto u = gaussian(g, 1.0, s);
    auto lu = DiscreteLaplacian(*c, 0, g).apply(u);
    double e = 0.0, nrm = 0.0;
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      auto p = u.point(i);
      if (std::abs(p[0]) > 2.5 || std::abs(p[1]) > 2.5 || std::abs(p[2]) > 2.5) continue;
      const double v = exact(p);
      e += (lu.comp(0)[i] - v) * (lu.comp(0)[i] - v);
      nrm += v * v;
    }
    errs.push_back(std::sqrt(e / nrm));
  }
  const double h = GridSpec::make(1, 5.0, 41, 0.2).spacing(0);
  CHECK(errs[1] < h * h);
  CHECK(errs[0] / errs[1] > 3.5);
}

TEST_CASE("Gaussian L2 norm matches the closed form") {
  auto g = GridSpec::make(1, 6.0, 65, 0.25);
  const double s = 1.5;
  auto u = gaussian(g, 1.0, s);
  const double want = std::sqrt(std::pow(M_PI, 1.5) * s);
  CHECK(std::abs(l2_norm(u) - want) / want < 1e-3);
  GridSection v = 3.0 * u;
  CHECK(l2_norm(v) == doctest::Approx(3.0 * l2_norm(u)));
  CHECK(inner_product(u, u) > 0.0);
}

TEST_CASE("quadrature converges on smooth data") {
  std::vector<double> errs;
  for (int m : {17, 33, 65}) {
    auto g = GridSpec::make(1, 1.0, m, 1.0);
    GridSection u(g, 0, 1);
    u.fill(0, [](const std::vector<double>& p) { return (1 - p[0] * p[0]) * (1 - p[1] * p[1]) * (1 - p[2] * p[2]); });
    const double want = 64.0 / 27.0;
    errs.push_back(std::abs(integral(u) - want) / want);
  }
  CHECK(errs[0] / errs[1] > 3.5);
  CHECK(errs[1] / errs[2] > 3.5);
}

TEST_CASE("adjoint consistency of assembled operators") {
  auto c = get_complex(1);
  auto g = GridSpec::make(1, 2.0, 15, 0.5);
  const auto X = WeylPolynomial::generator(1, 0);
  CHECK(adjoint_consistency(scalar_op(X), scalar_op(X * Rational(-1)), g, 4) <= 1e-12);
  CHECK(adjoint_consistency(c->laplacian(0), c->laplacian(0), g, 4) <= 1e-10);
  CHECK(adjoint_consistency(c->dc(0), c->dc_star(1), g, 4) <= 1e-10);
}

TEST_CASE("discrete Laplacian is symmetric and nonnegative at every degree") {
  auto c = get_complex(1);
  auto g = GridSpec::make(1, 2.0, 13, 0.5);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int h = 0; h <= 3; ++h) {
    DiscreteLaplacian lap(*c, h, g);
    GridSection u(g, h, lap.components()), v(g, h, lap.components());
    for (auto& x : u.data()) x = nd(rng);
    for (auto& x : v.data()) x = nd(rng);
    const double a = inner_product(lap.apply(u), v), b = inner_product(u, lap.apply(v));
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
    CHECK(inner_product(lap.apply(u), u) >= 0.0);
  }
}

TEST_CASE("dilate_resample") {
  auto g = GridSpec::make(1, 3.0, 17, 0.5);
  auto u = gaussian(g, 0.8, 0.6, {0.2, -0.1, 0.3});
  auto same = dilate_resample(u, 1.0);
  for (std::size_t i = 0; i < u.nodes(); ++i) CHECK(same.comp(0)[i] == doctest::Approx(u.comp(0)[i]).epsilon(1e-14));
  // Gauge-radial data f(ϱ): u∘δ_{1/r} sampled at δ_r p equals u at p.
  auto radial = [](double r4) { return std::exp(-r4 / 16.0); };
  std::vector<double> errs;
  for (int m : {17, 33}) {
    auto gg = GridSpec::make(1, 4.0, m, 0.25);
    GridSection f(gg, 0, 1);
    f.fill(0, [&](const std::vector<double>& p) { return radial(koranyi_norm4(rp(p))); });
    auto d = dilate_resample(f, 2.0);
    double e = 0.0;
    for (std::size_t i = 0; i < d.nodes(); ++i) {
      auto p = d.point(i);
      if (std::abs(p[0]) > 2 || std::abs(p[1]) > 2 || std::abs(p[2]) > 2) continue;
      e = std::max(e, std::abs(d.comp(0)[i] - radial(koranyi_norm4(dilate(0.5, rp(p))))));
    }
    errs.push_back(e);
  }
  CHECK(errs[1] < errs[0]);
  CHECK(errs[1] < 0.05);
}

TEST_CASE("convolve_small") {
  auto g = GridSpec::make(1, 2.5, 21, 0.5);
  auto u = gaussian(g, 0.9, 0.9);

  SUBCASE("delta kernel reproduces u") {
    auto gk = GridSpec::make(1, g.spacing(0) * 3, 7, 7, g.spacing(2) * 3);
    GridSection k(gk, 0, 1);
    k.comp(0)[gk.nodes() / 2] = 1.0 / gk.cell_volume();
    auto v = convolve_small(u, k, 3);
    for (std::size_t i = 0; i < u.nodes(); ++i) CHECK(v.comp(0)[i] == doctest::Approx(u.comp(0)[i]).epsilon(1e-12));
  }

  SUBCASE("approximate identity") {
    auto gk = GridSpec::make(1, g.spacing(0) * 4, 9, 9, g.spacing(2) * 4);
    double prev = 1e300;
    for (double eps : {0.4, 0.25, 0.15}) {
      auto k = mollifier(gk, eps, eps);
      const double e = l2_norm(convolve_small(u, k, 4) - u) / l2_norm(u);
      CHECK(e < prev);
      CHECK(e < 1.5 * eps * eps);
      prev = e;
    }
  }

  SUBCASE("associativity against direct triple summation") {
    const int h1 = 2, h2 = 2;
    auto g1 = GridSpec::make(1, g.spacing(0) * h1, 2 * h1 + 1, 2 * h1 + 1, g.spacing(2) * h1);
    auto g2 = GridSpec::make(1, g.spacing(0) * h2, 2 * h2 + 1, 2 * h2 + 1, g.spacing(2) * h2);
    auto g12 = GridSpec::make(1, g.spacing(0) * (h1 + h2), 2 * (h1 + h2) + 1, 2 * (h1 + h2) + 1,
                              g.spacing(2) * (h1 + h2));
    auto k1 = mollifier(g1, 0.25, 0.3);
    auto k2 = mollifier(g2, 0.3, 0.25);
    auto k1_wide = mollifier(g12, 0.25, 0.3);
    // Restrict the wide copy to the support of k1 so both sides use the same samples.
    for (std::size_t i = 0; i < g12.nodes(); ++i) {
      auto p = k1_wide.point(i);
      bool in = std::abs(p[0]) <= h1 * g.spacing(0) + 1e-12 && std::abs(p[1]) <= h1 * g.spacing(1) + 1e-12 &&
                std::abs(p[2]) <= h1 * g.spacing(2) + 1e-12;
      k1_wide.comp(0)[i] = in ? interpolate(k1, 0, p) : 0.0;
    }
    auto lhs = convolve_small(convolve_small(u, k1, h1), k2, h2);
    auto rhs = convolve_small(u, convolve_small(k1_wide, k2, h2), h1 + h2);
    auto uf = [](const RealPoint& q) {
      return std::exp(-0.5 * (q.x[0] * q.x[0] + q.y[0] * q.y[0]) / 0.81 - 0.5 * q.t * q.t / 0.81);
    };
    const double dv = g.cell_volume();
    double el = 0.0, er = 0.0, nrm = 0.0;
    for (std::size_t i = 0; i < u.nodes(); ++i) {
      if (!interior(g, i, 6)) continue;
      const auto p = rp(u.point(i));
      double want = 0.0;
      for (std::size_t a = 0; a < g1.nodes(); ++a)
        for (std::size_t b = 0; b < g2.nodes(); ++b) {
          const auto w1 = rp(k1.point(a)), w2 = rp(k2.point(b));
          want += uf(group_mul(group_mul(p, inverse(w2)), inverse(w1))) * k1.comp(0)[a] * k2.comp(0)[b];
        }
      want *= dv * dv;
      el += std::pow(lhs.comp(0)[i] - want, 2);
      er += std::pow(rhs.comp(0)[i] - want, 2);
      nrm += want * want;
    }
    CHECK(std::sqrt(el / nrm) < 0.02);
    CHECK(std::sqrt(er / nrm) < 0.02);
  }

  SUBCASE("commutes with left translation") {
    auto gk = GridSpec::make(1, g.spacing(0) * 3, 7, 7, g.spacing(2) * 3);
    auto k = mollifier(gk, 0.3, 0.3);
    const RealPoint a({0.25}, {-0.25}, 0.125);
    GridSection ua(g, 0, 1);
    ua.fill(0, [&](const std::vector<double>& p) {
      auto q = group_mul(inverse(a), rp(p));
      return std::exp(-0.5 * (q.x[0] * q.x[0] + q.y[0] * q.y[0]) / 0.81 - 0.5 * q.t * q.t / 0.81);
    });
    auto lhs = convolve_small(ua, k, 3);
    auto base = convolve_small(u, k, 3);
    double e = 0.0, nrm = 0.0;
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      if (!interior(g, i, 5)) continue;
      auto q = group_mul(inverse(a), rp(u.point(i)));
      const double want = interpolate(base, 0, {q.x[0], q.y[0], q.t});
      e += std::pow(lhs.comp(0)[i] - want, 2);
      nrm += want * want;
    }
    CHECK(std::sqrt(e / nrm) < 0.02);
  }

  SUBCASE("oversized support is rejected") {
    auto gk = GridSpec::make(1, g.spacing(0) * 9, 19, 19, g.spacing(2) * 9);
    CHECK_THROWS_AS(convolve_small(u, mollifier(gk, 0.3, 0.3), 9), std::invalid_argument);
  }
}

TEST_CASE("binary round trip and metadata") {
  auto g = GridSpec::make(1, 2.0, 9, 0.5);
  GridSection u(g, 1, 2);
  std::mt19937_64 rng(5);
  for (auto& x : u.data()) x = std::uniform_real_distribution<double>(-1, 1)(rng);
  const auto path = (std::filesystem::temp_directory_path() / "rumin_grid_roundtrip.bin").string();
  write_binary(u, path);
  auto v = read_binary(path);
  std::remove(path.c_str());
  CHECK(v.grid() == g);
  CHECK(v.degree() == 1);
  CHECK(v.components() == 2);
  CHECK(v.data() == u.data());
  auto j = sidecar(u);
  CHECK(j["degree"] == 1);
  CHECK(j["boundary_policy"] == "zero-extension");
}

TEST_CASE("grid validation and boundary mass") {
  CHECK_THROWS(GridSpec::make(1, 2.0, 8, 0.5).validate());
  auto g = GridSpec::make(1, 4.0, 33, 0.25);
  CHECK(boundary_mass(gaussian(g, 0.5, 0.5)) < 1e-10);
  GridSection flat(g, 0, 1);
  flat.fill(0, [](const std::vector<double>&) { return 1.0; });
  CHECK(boundary_mass(flat) > 0.3);
}
