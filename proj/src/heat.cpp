// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/heat.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/CholmodSupport>
#include <Eigen/SparseCholesky>

namespace rumin {

double stepper_theta(Stepper s) { return s == Stepper::ImplicitEuler ? 1.0 : 0.5; }

std::string to_string(Stepper s) { return s == Stepper::ImplicitEuler ? "implicit-euler" : "crank-nicolson"; }

Stepper stepper_from_string(const std::string& s) {
  if (s == "implicit-euler") return Stepper::ImplicitEuler;
  if (s == "crank-nicolson") return Stepper::CrankNicolson;
  throw std::invalid_argument("unknown stepper: " + s);
}

int HeatConfig::steps() const { return std::max(1, static_cast<int>(std::lround(final_time / dt))); }

void HeatConfig::validate() const {
  grid.validate();
  if (grid.n != n) throw std::invalid_argument("HeatConfig: grid dimension differs from n");
  if (degree < 0 || degree > 2 * n + 1) throw std::invalid_argument("HeatConfig: degree out of range");
  if (!(dt > 0)) throw std::invalid_argument("HeatConfig: dt must be positive");
  if (!(final_time >= 0)) throw std::invalid_argument("HeatConfig: final time must be nonnegative");
  if (!(solver_tol > 0) || !(solver_tol < 1e-8)) throw std::invalid_argument("HeatConfig: solver tolerance must lie in (0, 1e-8)");
  if (!(boundary_threshold > 0)) throw std::invalid_argument("HeatConfig: boundary threshold must be positive");
}

namespace {
std::string boundary_message(double mass, double time) {
  std::ostringstream os;
  os << "boundary mass " << mass << " exceeds threshold at s = " << time;
  return os.str();
}
}  // namespace

BoundaryMassError::BoundaryMassError(double m, double t)
    : std::runtime_error(boundary_message(m, t)), mass(m), time(t) {}

double HeatTrajectory::max_norm_increase() const {
  if (steps.empty() || steps.front().l2 == 0.0) return 0.0;
  double worst = -1.0;
  for (std::size_t k = 1; k < steps.size(); ++k)
    worst = std::max(worst, (steps[k].l2 - steps[k - 1].l2) / steps.front().l2);
  return worst;
}

struct BlockPropagator::Factor {
  Eigen::CholmodSupernodalLLT<SpMat, Eigen::Lower> llt;
  bool analysed = false;
};

BlockPropagator::BlockPropagator(const DiscreteLaplacian& lap, double mu, double theta)
    : lap_(lap), mu_(mu), theta_(theta), asm_(lap.grid(), mu), fac_(std::make_unique<Factor>()) {
  L_ = laplacian_block(lap, asm_);
}

BlockPropagator::~BlockPropagator() = default;

const SpMat& BlockPropagator::down() {
  if (!down_) down_ = asm_.assemble(lap_.down()->matrix());
  return *down_;
}

const SpMat& BlockPropagator::up() {
  if (!up_) up_ = asm_.assemble(lap_.up()->matrix());
  return *up_;
}

void BlockPropagator::factor(double c) {
  if (c == factored_c_) return;
  SpMat M(L_.rows(), L_.cols());
  M.setIdentity();
  M += cplx(c, 0.0) * L_;
  if (!fac_->analysed) {
    fac_->llt.analyzePattern(M);
    fac_->analysed = true;
  }
  fac_->llt.factorize(M);
  if (fac_->llt.info() != Eigen::Success) throw SolverError("block factorisation failed");
  factored_c_ = c;
}

void BlockPropagator::step(CVec& x, double dt) { step(x, dt, theta_); }

void BlockPropagator::step(CVec& x, double dt, double theta) {
  factor(theta * dt);
  CVec r = x;
  if (theta < 1.0) r -= cplx((1.0 - theta) * dt, 0.0) * (L_ * x);
  x = fac_->llt.solve(r);
}

void BlockPropagator::step(std::vector<CVec>& xs, double dt) {
  for (auto& x : xs) step(x, dt);
}

CVec BlockPropagator::solve_laplacian(const CVec& b, double reg) {
  SpMat M = L_;
  SpMat I(L_.rows(), L_.cols());
  I.setIdentity();
  M += cplx(reg, 0.0) * I;
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> s(M);
  if (s.info() != Eigen::Success) throw SolverError("Laplacian factorisation failed");
  return s.solve(b);
}

HeatEngine::HeatEngine(int n, int h, const GridSpec& g) : n_(n), h_(h), g_(g) {
  if (g.n != n) throw std::invalid_argument("HeatEngine: grid dimension differs from n");
  c_ = get_complex(n);
  lap_ = std::make_unique<DiscreteLaplacian>(*c_, h, g);
  tf_ = std::make_unique<TFourier>(g);
}

void HeatEngine::for_each_block(double theta, const std::function<void(int, BlockPropagator&)>& fn) const {
  for (int b = 0; b < tf_->blocks(); ++b) {
    BlockPropagator p(*lap_, tf_->mu(b), theta);
    fn(b, p);
  }
}

CGResult cg_solve(const LinearMap& A, const GridSection& diag, const GridSection& b, GridSection& x, double tol,
                  int max_iter) {
  CGResult res;
  GridSection r = b - A(x);
  const double bnorm = std::sqrt(inner_product(b, b));
  if (bnorm == 0.0) {
    x *= 0.0;
    return res;
  }
  auto precond = [&](const GridSection& v) {
    GridSection z = v;
    for (std::size_t i = 0; i < z.data().size(); ++i) z.data()[i] /= diag.data()[i];
    return z;
  };
  GridSection z = precond(r);
  GridSection p = z;
  double rz = inner_product(r, z);
  for (int it = 0; it < max_iter; ++it) {
    res.residual = std::sqrt(inner_product(r, r)) / bnorm;
    if (res.residual <= tol) return res;
    GridSection Ap = A(p);
    const double alpha = rz / inner_product(p, Ap);
    x.axpy(alpha, p);
    r.axpy(-alpha, Ap);
    z = precond(r);
    const double rz_new = inner_product(r, z);
    p *= rz_new / rz;
    p += z;
    rz = rz_new;
    res.iterations = it + 1;
  }
  res.residual = std::sqrt(inner_product(r, r)) / bnorm;
  if (res.residual > tol) throw SolverError("CG did not converge");
  return res;
}

namespace {

void check_boundary(const HeatTrajectory& tr, const HeatConfig& cfg) {
  if (!cfg.abort_on_boundary) return;
  for (std::size_t k = 0; k < tr.snapshots.size(); ++k)
    if (tr.boundary_mass[k] > cfg.boundary_threshold) throw BoundaryMassError(tr.boundary_mass[k], tr.times[k]);
}

bool is_snapshot(int k, int N, int every) { return k == 0 || k == N || (every > 0 && k % every == 0); }

}  // namespace

HeatTrajectory evolve(const GridSection& u0, const HeatConfig& cfg) {
  cfg.validate();
  if (!(u0.grid() == cfg.grid)) throw std::invalid_argument("evolve: initial data lives on another grid");
  HeatEngine eng(cfg.n, cfg.degree, cfg.grid);
  if (u0.components() != eng.components()) throw std::invalid_argument("evolve: component count differs from dim E0^h");
  const double bm0 = boundary_mass(u0);
  if (cfg.abort_on_boundary && bm0 > cfg.boundary_threshold) throw BoundaryMassError(bm0, 0.0);
  const int N = cfg.steps();
  const double dt = cfg.final_time / N;
  const double theta = stepper_theta(cfg.stepper);
  HeatTrajectory tr;
  tr.steps.resize(N + 1);
  for (int k = 0; k <= N; ++k) tr.steps[k].time = k * dt;
  for (int k = 0; k <= N; ++k)
    if (is_snapshot(k, N, cfg.snapshot_every)) tr.times.push_back(k * dt);

  if (cfg.solver == SolverKind::BlockDirect) {
    const TFourier& tf = eng.fourier();
    std::vector<SpectralField> snaps(tr.times.size());
    for (auto& s : snaps) {
      s.degree = u0.degree();
      s.ncomp = u0.components();
      s.blocks.resize(tf.blocks());
    }
    std::vector<double> l2sq(N + 1, 0.0), mass(N + 1, 0.0);
    eng.for_each_block(theta, [&](int b, BlockPropagator& P) {
      CVec x = tf.forward_block(u0, b);
      std::size_t si = 0;
      for (int k = 0; k <= N; ++k) {
        if (k > 0) P.step(x, dt);
        l2sq[k] += tf.block_norm2(b, x);
        mass[k] += tf.block_integral(b, x, 0);
        if (is_snapshot(k, N, cfg.snapshot_every)) snaps[si++].blocks[b] = x;
      }
    });
    for (int k = 0; k <= N; ++k) {
      tr.steps[k].l2 = std::sqrt(l2sq[k]);
      tr.steps[k].mass = mass[k];
    }
    for (const auto& s : snaps) tr.snapshots.push_back(tf.inverse(s));
  } else {
    const GridSection dg = laplacian_diagonal(eng.laplacian(), eng.fourier());
    GridSection diag = dg;
    for (double& v : diag.data()) v = 1.0 + theta * dt * v;
    LinearMap A = [&](const GridSection& v) {
      GridSection r = eng.apply_laplacian(v);
      r *= theta * dt;
      r += v;
      return r;
    };
    GridSection u = u0;
    tr.snapshots.push_back(u);
    tr.steps[0].l2 = l2_norm(u);
    tr.steps[0].mass = integral(u, 0);
    for (int k = 1; k <= N; ++k) {
      GridSection rhs = u;
      if (theta < 1.0) rhs.axpy(-(1.0 - theta) * dt, eng.apply_laplacian(u));
      GridSection x = u;
      CGResult cr = cg_solve(A, diag, rhs, x, cfg.solver_tol, 5000);
      u = x;
      tr.steps[k].l2 = l2_norm(u);
      tr.steps[k].mass = integral(u, 0);
      tr.steps[k].iterations = cr.iterations;
      if (is_snapshot(k, N, cfg.snapshot_every) && k > 0) tr.snapshots.push_back(u);
    }
  }
  for (const auto& s : tr.snapshots) tr.boundary_mass.push_back(boundary_mass(s));
  check_boundary(tr, cfg);
  return tr;
}

std::vector<GridSection> evolve_final(const HeatEngine& eng, const std::vector<GridSection>& u0, double dt, int steps,
                                      Stepper stepper) {
  const TFourier& tf = eng.fourier();
  std::vector<SpectralField> out(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) {
    out[i].degree = u0[i].degree();
    out[i].ncomp = u0[i].components();
    out[i].blocks.resize(tf.blocks());
  }
  eng.for_each_block(stepper_theta(stepper), [&](int b, BlockPropagator& P) {
    for (std::size_t i = 0; i < u0.size(); ++i) {
      CVec x = tf.forward_block(u0[i], b);
      for (int k = 0; k < steps; ++k) P.step(x, dt);
      out[i].blocks[b] = std::move(x);
    }
  });
  std::vector<GridSection> r;
  for (const auto& f : out) r.push_back(tf.inverse(f));
  return r;
}

SemigroupResult semigroup_check(const GridSection& u0, double s, double sigma, const HeatConfig& cfg) {
  cfg.validate();
  HeatEngine eng(cfg.n, cfg.degree, cfg.grid);
  const TFourier& tf = eng.fourier();
  const double theta = stepper_theta(cfg.stepper);
  const int n_one = std::max(1, static_cast<int>(std::lround((s + sigma) / cfg.dt)));
  const int n1 = std::max(1, static_cast<int>(std::lround(s / cfg.dt)));
  const int n2 = static_cast<int>(std::lround(2.0 * sigma / cfg.dt));
  const double d_one = (s + sigma) / n_one, d1 = s / n1, d2 = n2 > 0 ? sigma / n2 : 0.0;
  double e2 = 0.0, c2 = 0.0, ref2 = 0.0;
  eng.for_each_block(theta, [&](int b, BlockPropagator& P) {
    CVec x0 = tf.forward_block(u0, b);
    CVec one = x0, two = x0, com = x0;
    // Group equal step sizes to reuse factorisations.
    for (int k = 0; k < n_one; ++k) P.step(one, d_one);
    for (int k = 0; k < n1; ++k) P.step(two, d1);
    for (int k = 0; k < n2; ++k) P.step(two, d2);
    for (int k = 0; k < n2; ++k) P.step(com, d2);
    for (int k = 0; k < n1; ++k) P.step(com, d1);
    e2 += tf.block_norm2(b, two - one);
    c2 += tf.block_norm2(b, com - two);
    ref2 += tf.block_norm2(b, one);
  });
  SemigroupResult r;
  if (ref2 > 0.0) {
    r.error = std::sqrt(e2 / ref2);
    r.commuted_error = std::sqrt(c2 / ref2);
  }
  return r;
}

double KernelSample::entry_norm(int i, int j) const {
  const GridSection& c = columns[j];
  double s = 0.0;
  for (std::size_t k = 0; k < c.nodes(); ++k) s += c.comp(i)[k] * c.comp(i)[k];
  return std::sqrt(s * c.grid().cell_volume());
}

KernelSample kernel_extract(const HeatEngine& eng, double s, double eps, double eps_t, int steps, Stepper stepper) {
  const GridSpec& g = eng.grid();
  const double hmin = std::min(g.spacing(0), g.spacing(g.n));
  if (eps < 2.0 * hmin * 0.999 || eps_t < 2.0 * g.spacing(g.t_axis()) * 0.999)
    throw std::invalid_argument("kernel_extract: mollifier under-resolved (needs >= 2 spacings)");
  KernelSample k;
  k.degree = eng.degree();
  k.time = s;
  k.size = eng.components();
  std::vector<GridSection> u0;
  for (int j = 0; j < k.size; ++j) u0.push_back(mollifier(g, eps, eps_t, eng.degree(), k.size, j));
  if (s == 0.0) {
    k.columns = u0;
    return k;
  }
  k.columns = evolve_final(eng, u0, s / steps, steps, stepper);
  return k;
}

ScalingResult scaling_check(const HeatEngine& eng, double s, double r, double eps, double eps_t, int steps,
                            Stepper stepper) {
  const int a = eng.complex().laplacian_order(eng.degree());
  const int Q = 2 * eng.n() + 2;
  KernelSample small = kernel_extract(eng, s, eps, eps_t, steps, stepper);
  ScalingResult res;
  if (r == 1.0) return res;
  KernelSample big = kernel_extract(eng, std::pow(r, a) * s, r * eps, r * r * eps_t, steps, stepper);
  double num = 0.0, den = 0.0;
  const double scale = std::pow(r, -Q);
  for (int j = 0; j < small.size; ++j) {
    GridSection pred = dilate_resample(small.columns[j], r);
    pred *= scale;
    GridSection diff = big.columns[j] - pred;
    num += inner_product(diff, diff);
    den += inner_product(big.columns[j], big.columns[j]);
    res.boundary_mass = std::max(res.boundary_mass, boundary_mass(big.columns[j]));
  }
  res.error = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return res;
}

SymmetryResult symmetry_check(const KernelSample& k) {
  SymmetryResult r;
  if (k.columns.empty()) return r;
  const GridSpec& g = k.columns[0].grid();
  const std::size_t N = g.nodes();
  double kmax = 0.0;
  for (const auto& c : k.columns)
    for (double v : c.data()) kmax = std::max(kmax, std::abs(v));
  if (kmax == 0.0) return r;
  // p -> p^{-1} = -p maps linear index i to N-1-i on a centred grid.
  for (int i = 0; i < k.size; ++i)
    for (int j = 0; j < k.size; ++j) {
      const double* a = k.columns[j].comp(i);
      const double* b = k.columns[i].comp(j);
      double d = 0.0;
      for (std::size_t idx = 0; idx < N; ++idx) d = std::max(d, std::abs(a[idx] - b[N - 1 - idx]));
      d /= kmax;
      r.discrepancy = std::max(r.discrepancy, d);
      if (i == j) r.diagonal_discrepancy = std::max(r.diagonal_discrepancy, d);
    }
  return r;
}

std::vector<double> pde_residual(const HeatTrajectory& traj, const LinearMap& laplacian) {
  if (traj.snapshots.size() < 3) throw std::invalid_argument("pde_residual: need at least 3 snapshots");
  std::vector<double> out;
  for (std::size_t k = 1; k + 1 < traj.snapshots.size(); ++k) {
    const double h = traj.times[k + 1] - traj.times[k - 1];
    GridSection lu = laplacian(traj.snapshots[k]);
    GridSection r = traj.snapshots[k + 1] - traj.snapshots[k - 1];
    r *= 1.0 / h;
    r += lu;
    const double ref = l2_norm(lu);
    out.push_back(ref > 0.0 ? l2_norm(r) / ref : l2_norm(r));
  }
  return out;
}

std::vector<double> ladder_steps(double dt, int p, double end) {
  if (!(dt > 0) || p < 1) throw std::invalid_argument("ladder_steps: bad parameters");
  std::vector<double> st;
  double s = 0.0;
  for (int k = 0; k < p && s < end * (1 - 1e-12); ++k) {
    st.push_back(dt);
    s += dt;
  }
  double h = dt;
  while (s < end * (1 - 1e-12)) {
    // segment [s, 2s] in p steps
    h = s / p;
    for (int k = 0; k < p; ++k) {
      st.push_back(h);
      s += h;
    }
  }
  return st;
}

namespace {

// Orthonormal basis of the numerical null space of a Hermitian block, by inverse iteration.
std::vector<CVec> block_null_space(BlockPropagator& P, int probes, unsigned seed) {
  const SpMat& L = P.laplacian();
  double scale = 0.0;
  for (int k = 0; k < L.outerSize(); ++k)
    for (SpMat::InnerIterator it(L, k); it; ++it)
      if (it.row() == it.col()) scale = std::max(scale, std::abs(it.value()));
  if (scale == 0.0) return {};
  const double reg = 1e-9 * scale;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<CVec> basis;
  for (int p = 0; p < probes; ++p) {
    CVec v(L.rows());
    for (int i = 0; i < v.size(); ++i) v[i] = cplx(nd(rng), nd(rng));
    for (int it = 0; it < 3; ++it) {
      for (const auto& q : basis) v -= q * q.dot(v);
      v = P.solve_laplacian(v, reg);
      v /= v.norm();
    }
    for (const auto& q : basis) v -= q * q.dot(v);
    const double nv = v.norm();
    if (nv < 1e-6) continue;
    v /= nv;
    const double rq = std::abs(v.dot(L * v));
    if (rq < 1e-8 * scale) basis.push_back(v);
  }
  return basis;
}

}  // namespace

InverseResult inverse_accumulate(const HeatEngine& eng, const GridSection& phi, double M, double dt, int p,
                                 Stepper stepper, double stop_tol) {
  const TFourier& tf = eng.fourier();
  const double theta = stepper_theta(stepper);
  const auto steps = ladder_steps(dt, p, M);
  // Segment ends: after the uniform head and after every doubling segment.
  std::vector<std::size_t> ends;
  for (std::size_t k = p; k <= steps.size(); k += p) ends.push_back(k);
  if (ends.empty() || ends.back() != steps.size()) ends.push_back(steps.size());
  std::vector<double> cut;
  {
    double s = 0.0;
    std::size_t e = 0;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      s += steps[k];
      if (e < ends.size() && k + 1 == ends[e]) {
        cut.push_back(s);
        ++e;
      }
    }
  }
  std::vector<double> res2(ends.size(), 0.0), tail2(ends.size(), 0.0);
  double phi2 = 0.0, dir2 = 0.0, diff2 = 0.0;
  SpectralField integ{phi.degree(), phi.components(), std::vector<CVec>(tf.blocks())};
  SpectralField direct{phi.degree(), phi.components(), std::vector<CVec>(tf.blocks())};
  // Number of segments actually used (stop_tol may shorten the run); decided after a first pass
  // would cost a second sweep, so every block runs to M and the cutoff is applied to the curves.
  std::vector<std::vector<CVec>> partial(tf.blocks());
  eng.for_each_block(theta, [&](int b, BlockPropagator& P) {
    CVec f = tf.forward_block(phi, b);
    std::vector<CVec> null;
    if (tf.mu(b) == 0.0) null = block_null_space(P, 4, 17);
    for (const auto& q : null) f -= q * q.dot(f);
    phi2 += tf.block_norm2(b, f);
    CVec x = f;
    CVec I = CVec::Zero(f.size());
    std::size_t e = 0;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const double d = steps[k];
      I += cplx(d * (1.0 - theta), 0.0) * x;
      P.step(x, d);
      I += cplx(d * theta, 0.0) * x;
      if (e < ends.size() && k + 1 == ends[e]) {
        CVec r = P.laplacian() * I - f;
        res2[e] += tf.block_norm2(b, r);
        tail2[e] += tf.block_norm2(b, x);
        partial[b].push_back(I);
        ++e;
      }
    }
    CVec y;
    if (null.empty() && tf.mu(b) != 0.0) {
      y = P.solve_laplacian(f, 0.0);
    } else {
      double scale = 0.0;
      const SpMat& L = P.laplacian();
      for (int k = 0; k < L.outerSize(); ++k)
        for (SpMat::InnerIterator it(L, k); it; ++it)
          if (it.row() == it.col()) scale = std::max(scale, std::abs(it.value()));
      y = P.solve_laplacian(f, 1e-13 * scale);
      for (const auto& q : null) y -= q * q.dot(y);
    }
    direct.blocks[b] = y;
    integ.blocks[b] = I;
  });
  InverseResult out;
  std::size_t last = ends.size();
  for (std::size_t e = 0; e < ends.size(); ++e) {
    out.cutoffs.push_back(cut[e]);
    out.errors.push_back(phi2 > 0.0 ? std::sqrt(res2[e] / phi2) : 0.0);
    out.tail.push_back(phi2 > 0.0 ? std::sqrt(tail2[e] / phi2) : 0.0);
    if (stop_tol > 0.0 && out.tail.back() <= stop_tol) {
      last = e + 1;
      break;
    }
  }
  for (int b = 0; b < tf.blocks(); ++b) {
    integ.blocks[b] = partial[b][last - 1];
    diff2 += tf.block_norm2(b, integ.blocks[b] - direct.blocks[b]);
    dir2 += tf.block_norm2(b, direct.blocks[b]);
  }
  out.integral = tf.inverse(integ);
  out.direct = tf.inverse(direct);
  out.direct_error = dir2 > 0.0 ? std::sqrt(diff2 / dir2) : 0.0;
  return out;
}

}  // namespace rumin
