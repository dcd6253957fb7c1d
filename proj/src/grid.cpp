// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/grid.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rumin/heisenberg.hpp"

namespace rumin {

GridSpec GridSpec::make(int n, double L, int points, double t_scale) {
  GridSpec g;
  g.n = n;
  g.L = L;
  g.Lt = t_scale * L * L;
  g.m.assign(2 * n + 1, points);
  g.validate();
  return g;
}

GridSpec GridSpec::make(int n, double L, int points, int t_points, double Lt) {
  GridSpec g;
  g.n = n;
  g.L = L;
  g.Lt = Lt;
  g.m.assign(2 * n + 1, points);
  g.m[2 * n] = t_points;
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (n < 1) throw std::invalid_argument("GridSpec: n must be >= 1");
  if (static_cast<int>(m.size()) != axes()) throw std::invalid_argument("GridSpec: need 2n+1 axis sizes");
  for (int k : m) {
    if (k < 3 || k % 2 == 0) throw std::invalid_argument("GridSpec: points per axis must be odd and >= 3");
  }
  if (!(L > 0) || !(Lt > 0)) throw std::invalid_argument("GridSpec: half-widths must be positive");
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < axes(); ++a) v *= spacing(a);
  return v;
}

std::size_t GridSpec::nodes() const {
  std::size_t s = 1;
  for (int k : m) s *= static_cast<std::size_t>(k);
  return s;
}

std::size_t GridSpec::stride(int axis) const {
  std::size_t s = 1;
  for (int a = axes() - 1; a > axis; --a) s *= static_cast<std::size_t>(m[a]);
  return s;
}

nlohmann::json GridSpec::to_json() const {
  return {{"n", n}, {"L", L}, {"Lt", Lt}, {"points", m}};
}

GridSpec GridSpec::from_json(const nlohmann::json& j) {
  GridSpec g;
  g.n = j.at("n").get<int>();
  g.L = j.at("L").get<double>();
  g.Lt = j.at("Lt").get<double>();
  g.m = j.at("points").get<std::vector<int>>();
  g.validate();
  return g;
}

GridSection::GridSection(const GridSpec& g, int degree, int ncomp)
    : grid_(g), degree_(degree), ncomp_(ncomp), data_(g.nodes() * ncomp, 0.0) {
  if (ncomp < 0) throw std::invalid_argument("GridSection: negative component count");
}

std::vector<double> GridSection::point(std::size_t idx) const {
  const int A = grid_.axes();
  std::vector<double> p(A);
  for (int a = A - 1; a >= 0; --a) {
    const int k = grid_.m[a];
    p[a] = grid_.coord(a, static_cast<int>(idx % k));
    idx /= k;
  }
  return p;
}

void GridSection::fill(int c, const std::function<double(const std::vector<double>&)>& f) {
  double* d = comp(c);
  const std::size_t N = nodes();
  for (std::size_t i = 0; i < N; ++i) d[i] = f(point(i));
}

void GridSection::check_compatible(const GridSection& o) const {
  if (!(grid_ == o.grid_) || ncomp_ != o.ncomp_) throw std::invalid_argument("GridSection: grid or component mismatch");
}

GridSection& GridSection::operator+=(const GridSection& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

GridSection& GridSection::operator-=(const GridSection& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

GridSection& GridSection::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

void GridSection::axpy(double a, const GridSection& x) {
  check_compatible(x);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * x.data_[i];
}

bool GridSection::finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double inner_product(const GridSection& u, const GridSection& v) {
  u.check_compatible(v);
  double s = 0.0;
  for (std::size_t i = 0; i < u.data().size(); ++i) s += u.data()[i] * v.data()[i];
  return s * u.grid().cell_volume();
}

double lp_norm(const GridSection& u, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  const std::size_t N = u.nodes();
  double s = 0.0;
  if (std::isinf(p)) {
    for (std::size_t i = 0; i < N; ++i) {
      double f = 0.0;
      for (int c = 0; c < u.components(); ++c) f += u.comp(c)[i] * u.comp(c)[i];
      s = std::max(s, std::sqrt(f));
    }
    return s;
  }
  for (std::size_t i = 0; i < N; ++i) {
    double f = 0.0;
    for (int c = 0; c < u.components(); ++c) f += u.comp(c)[i] * u.comp(c)[i];
    s += (p == 2.0) ? f : std::pow(std::sqrt(f), p);
  }
  return std::pow(s * u.grid().cell_volume(), 1.0 / p);
}

double l2_norm(const GridSection& u) { return lp_norm(u, 2.0); }

double integral(const GridSection& u, int comp) {
  double s = 0.0;
  const double* d = u.comp(comp);
  for (std::size_t i = 0; i < u.nodes(); ++i) s += d[i];
  return s * u.grid().cell_volume();
}

double boundary_mass(const GridSection& u, int cells) {
  const GridSpec& g = u.grid();
  const int A = g.axes();
  const std::size_t N = u.nodes();
  double total = 0.0, edge = 0.0;
  std::vector<int> idx(A, 0);
  for (std::size_t i = 0; i < N; ++i) {
    double f = 0.0;
    for (int c = 0; c < u.components(); ++c) f += u.comp(c)[i] * u.comp(c)[i];
    f = std::sqrt(f);
    total += f;
    bool near = false;
    for (int a = 0; a < A; ++a)
      if (idx[a] < cells || idx[a] >= g.m[a] - cells) near = true;
    if (near) edge += f;
    for (int a = A - 1; a >= 0; --a) {
      if (++idx[a] < g.m[a]) break;
      idx[a] = 0;
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

double interpolate(const GridSection& u, int comp, const std::vector<double>& p) {
  const GridSpec& g = u.grid();
  const int A = g.axes();
  std::array<int, 16> base{};
  std::array<double, 16> frac{};
  for (int a = 0; a < A; ++a) {
    const double s = (p[a] + g.half_width(a)) / g.spacing(a);
    if (s < 0.0 || s > g.m[a] - 1) return 0.0;
    int i = static_cast<int>(std::floor(s));
    if (i >= g.m[a] - 1) i = g.m[a] - 2;
    base[a] = i;
    frac[a] = s - i;
  }
  const double* d = u.comp(comp);
  double v = 0.0;
  for (unsigned corner = 0; corner < (1u << A); ++corner) {
    double w = 1.0;
    std::size_t idx = 0;
    for (int a = 0; a < A; ++a) {
      const int bit = (corner >> a) & 1u;
      w *= bit ? frac[a] : 1.0 - frac[a];
      idx += static_cast<std::size_t>(base[a] + bit) * g.stride(a);
    }
    if (w != 0.0) v += w * d[idx];
  }
  return v;
}

GridSection dilate_resample(const GridSection& u, double r) {
  if (!(r > 0)) throw std::invalid_argument("dilate_resample: r must be positive");
  GridSection out(u.grid(), u.degree(), u.components());
  const std::size_t N = u.nodes();
  const int n = u.grid().n;
  for (std::size_t i = 0; i < N; ++i) {
    auto p = u.point(i);
    for (int a = 0; a < 2 * n; ++a) p[a] /= r;
    p[2 * n] /= r * r;
    for (int c = 0; c < u.components(); ++c) out.comp(c)[i] = interpolate(u, c, p);
  }
  return out;
}

GridSection convolve_small(const GridSection& u, const GridSection& k, int kernel_half) {
  if (kernel_half > 8) throw std::invalid_argument("convolve_small: kernel support too large");
  if (k.components() != 1 || u.components() != 1) throw std::invalid_argument("convolve_small: scalar fields only");
  const GridSpec& g = u.grid();
  const GridSpec& gk = k.grid();
  const int n = g.n;
  const int A = g.axes();
  for (int a = 0; a < A; ++a)
    if (std::abs(g.spacing(a) - gk.spacing(a)) > 1e-12 * g.spacing(a) || gk.m[a] < 2 * kernel_half + 1)
      throw std::invalid_argument("convolve_small: kernel grid must share the spacing");
  // Kernel nodes within kernel_half of the kernel-grid centre.
  std::vector<std::pair<std::vector<double>, double>> kn;
  for (std::size_t j = 0; j < k.nodes(); ++j) {
    const double kv = k.comp(0)[j];
    if (kv == 0.0) continue;
    auto w = k.point(j);
    bool inside = true;
    for (int a = 0; a < A; ++a)
      if (std::abs(w[a]) > kernel_half * gk.spacing(a) + 1e-12) inside = false;
    if (inside) kn.emplace_back(w, kv);
  }
  GridSection out(g, u.degree(), 1);
  const double dv = gk.cell_volume();
  std::vector<double> q(A);
  for (std::size_t i = 0; i < u.nodes(); ++i) {
    const auto p = u.point(i);
    double s = 0.0;
    for (const auto& [w, kv] : kn) {
      // q = p · w^{-1}
      double tt = p[2 * n] - w[2 * n];
      for (int j = 0; j < n; ++j) {
        q[j] = p[j] - w[j];
        q[n + j] = p[n + j] - w[n + j];
        tt += 0.5 * (p[j] * (-w[n + j]) - p[n + j] * (-w[j]));
      }
      q[2 * n] = tt;
      s += interpolate(u, 0, q) * kv;
    }
    out.comp(0)[i] = s * dv;
  }
  return out;
}

GridSection mollifier(const GridSpec& g, double eps, double eps_t, int degree, int ncomp, int comp) {
  GridSection u(g, degree, ncomp);
  const int n = g.n;
  u.fill(comp, [&](const std::vector<double>& p) {
    double r2 = 0.0;
    for (int a = 0; a < 2 * n; ++a) r2 += p[a] * p[a];
    return std::exp(-0.5 * r2 / (eps * eps) - 0.5 * p[2 * n] * p[2 * n] / (eps_t * eps_t));
  });
  const double m = integral(u, comp);
  if (!(m > 0)) throw std::invalid_argument("mollifier: under-resolved");
  for (std::size_t i = 0; i < u.nodes(); ++i) u.comp(comp)[i] /= m;
  return u;
}

namespace {

constexpr char kMagic[8] = {'R', 'H', 'G', 'R', 'I', 'D', '0', '1'};

template <typename T>
void put(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("read_binary: truncated file");
  return v;
}

}  // namespace

void write_binary(const GridSection& u, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_binary: cannot open " + path);
  const GridSpec& g = u.grid();
  os.write(kMagic, 8);
  put<std::int32_t>(os, g.n);
  put<std::int32_t>(os, g.axes());
  for (int k : g.m) put<std::int32_t>(os, k);
  put<double>(os, g.L);
  put<double>(os, g.Lt);
  for (int a = 0; a < g.axes(); ++a) put<double>(os, g.spacing(a));
  put<std::int32_t>(os, u.degree());
  put<std::int32_t>(os, u.components());
  for (std::size_t i = 0; i < u.nodes(); ++i)
    for (int c = 0; c < u.components(); ++c) put<double>(os, u.comp(c)[i]);
}

GridSection read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_binary: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("read_binary: bad magic");
  GridSpec g;
  g.n = get<std::int32_t>(is);
  const int A = get<std::int32_t>(is);
  for (int a = 0; a < A; ++a) g.m.push_back(get<std::int32_t>(is));
  g.L = get<double>(is);
  g.Lt = get<double>(is);
  for (int a = 0; a < A; ++a) (void)get<double>(is);
  g.validate();
  const int degree = get<std::int32_t>(is);
  const int ncomp = get<std::int32_t>(is);
  GridSection u(g, degree, ncomp);
  for (std::size_t i = 0; i < u.nodes(); ++i)
    for (int c = 0; c < ncomp; ++c) u.comp(c)[i] = get<double>(is);
  return u;
}

nlohmann::json sidecar(const GridSection& u) {
  const GridSpec& g = u.grid();
  std::vector<double> h;
  for (int a = 0; a < g.axes(); ++a) h.push_back(g.spacing(a));
  return {{"grid", g.to_json()},
          {"spacing", h},
          {"degree", u.degree()},
          {"components", u.components()},
          {"layout", "node-major, component-minor, t fastest"},
          {"dtype", "f64le"},
          {"boundary_policy", u.boundary_policy()}};
}

std::string slice_csv(const GridSection& u, int axis) {
  const GridSpec& g = u.grid();
  std::ostringstream os;
  os.precision(17);
  os << "coord";
  for (int c = 0; c < u.components(); ++c) os << ",u" << c;
  os << "\n";
  std::size_t centre = 0;
  for (int a = 0; a < g.axes(); ++a) centre += static_cast<std::size_t>(g.m[a] / 2) * g.stride(a);
  for (int i = 0; i < g.m[axis]; ++i) {
    const std::size_t idx = centre + (static_cast<std::size_t>(i) - g.m[axis] / 2) * g.stride(axis);
    os << g.coord(axis, i);
    for (int c = 0; c < u.components(); ++c) os << "," << u.comp(c)[idx];
    os << "\n";
  }
  return os.str();
}

}  // namespace rumin
