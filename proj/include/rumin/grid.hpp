// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Uniform truncated grids on H^n = R^{2n+1} and vector-valued fields on them.
// Axes are x_1..x_n, y_1..y_n, t with t varying fastest in the linear index.
// Field storage is component-major; the binary format is node-major.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rumin {

struct GridSpec {
  int n = 1;
  double L = 1.0;       // half-width of the x and y axes
  double Lt = 1.0;      // half-width of the t axis
  std::vector<int> m;   // points per axis, odd, size 2n+1

  // t half-width = t_scale * L^2 when Lt is not given.
  static GridSpec make(int n, double L, int points, double t_scale = 0.25);
  static GridSpec make(int n, double L, int points, int t_points, double Lt);

  int axes() const { return 2 * n + 1; }
  int t_axis() const { return 2 * n; }
  double half_width(int axis) const { return axis == t_axis() ? Lt : L; }
  double spacing(int axis) const { return 2.0 * half_width(axis) / (m[axis] - 1); }
  double coord(int axis, int i) const { return -half_width(axis) + i * spacing(axis); }
  double cell_volume() const;
  std::size_t nodes() const;
  // Stride of an axis in the linear index.
  std::size_t stride(int axis) const;
  // Nodes in one t-line (product of the horizontal counts).
  std::size_t horizontal_nodes() const { return nodes() / m[t_axis()]; }

  void validate() const;
  bool operator==(const GridSpec& o) const { return n == o.n && L == o.L && Lt == o.Lt && m == o.m; }
  nlohmann::json to_json() const;
  static GridSpec from_json(const nlohmann::json& j);
};

class GridSection {
 public:
  GridSection() = default;
  GridSection(const GridSpec& g, int degree, int ncomp);

  const GridSpec& grid() const { return grid_; }
  int degree() const { return degree_; }
  int components() const { return ncomp_; }
  std::size_t nodes() const { return grid_.nodes(); }
  std::string boundary_policy() const { return "zero-extension"; }

  double* comp(int c) { return data_.data() + c * grid_.nodes(); }
  const double* comp(int c) const { return data_.data() + c * grid_.nodes(); }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  // Fill component c from a function of the coordinates (x_1..x_n, y_1..y_n, t).
  void fill(int c, const std::function<double(const std::vector<double>&)>& f);
  // Coordinates of a linear node index.
  std::vector<double> point(std::size_t idx) const;

  GridSection& operator+=(const GridSection& o);
  GridSection& operator-=(const GridSection& o);
  GridSection& operator*=(double s);
  friend GridSection operator+(GridSection a, const GridSection& b) { return a += b; }
  friend GridSection operator-(GridSection a, const GridSection& b) { return a -= b; }
  friend GridSection operator*(double s, GridSection a) { return a *= s; }
  void axpy(double a, const GridSection& x);

  bool finite() const;
  void check_compatible(const GridSection& o) const;

 private:
  GridSpec grid_;
  int degree_ = 0;
  int ncomp_ = 1;
  std::vector<double> data_;
};

// Riemann sums with the cell volume; fibres use the orthonormal adapted basis.
double inner_product(const GridSection& u, const GridSection& v);
double lp_norm(const GridSection& u, double p);
double l2_norm(const GridSection& u);
double integral(const GridSection& u, int comp = 0);
// Fraction of ||u||_1 within `cells` nodes of the box boundary.
double boundary_mass(const GridSection& u, int cells = 3);

// Multilinear interpolation at a point; zero outside the box.
double interpolate(const GridSection& u, int comp, const std::vector<double>& p);
// u ∘ δ_{1/r}, sampled on the same grid.
GridSection dilate_resample(const GridSection& u, double r);
// Group convolution (u * k)(p) = Σ_q u(q) k(q^{-1} p) dV with k given on a sub-box
// centred at the origin (`kernel_half` nodes per side on each axis).
GridSection convolve_small(const GridSection& u, const GridSection& k, int kernel_half);

// Tensor Gaussian exp(-|x|^2/2ε^2 - t^2/2ε_t^2), unit discrete integral.
GridSection mollifier(const GridSpec& g, double eps, double eps_t, int degree = 0, int ncomp = 1, int comp = 0);

// Binary: magic, header (n, axes, m[], half-widths, degree, ncomp), node-major f64 LE payload.
void write_binary(const GridSection& u, const std::string& path);
GridSection read_binary(const std::string& path);
nlohmann::json sidecar(const GridSection& u);
// One-dimensional slice through the origin along `axis`, as CSV.
std::string slice_csv(const GridSection& u, int axis);

}  // namespace rumin
