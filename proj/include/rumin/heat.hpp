// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Heat semigroup e^{-sΔ_h} on a truncated grid by θ-scheme time stepping.
// The default solver works blockwise in the t-Fourier basis with supernodal
// sparse Cholesky factorisations (CHOLMOD); a matrix-free Jacobi-preconditioned
// CG on the full grid is available as a cross-check.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rumin/grid.hpp"
#include "rumin/rumin_complex.hpp"
#include "rumin/spectral.hpp"
#include "rumin/stencil.hpp"

namespace rumin {

enum class Stepper { ImplicitEuler, CrankNicolson };
enum class SolverKind { BlockDirect, CG };

double stepper_theta(Stepper s);
std::string to_string(Stepper s);
Stepper stepper_from_string(const std::string& s);

struct HeatConfig {
  int n = 1;
  int degree = 0;
  GridSpec grid = GridSpec::make(1, 4.0, 33, 0.25);
  double dt = 1e-2;
  double final_time = 0.1;
  Stepper stepper = Stepper::CrankNicolson;
  SolverKind solver = SolverKind::BlockDirect;
  double solver_tol = 1e-10;
  double boundary_threshold = 1e-4;
  bool abort_on_boundary = true;
  int snapshot_every = 0;  // 0: initial and final only

  int steps() const;
  void validate() const;
};

class BoundaryMassError : public std::runtime_error {
 public:
  BoundaryMassError(double mass, double time);
  double mass;
  double time;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepDiagnostics {
  double time = 0.0;
  double l2 = 0.0;
  double mass = 0.0;           // ∫ of component 0
  int iterations = 0;          // CG iterations (0 for the direct solver)
};

struct HeatTrajectory {
  std::vector<double> times;
  std::vector<GridSection> snapshots;
  std::vector<double> boundary_mass;  // per snapshot
  std::vector<StepDiagnostics> steps; // includes time 0
  // max over steps of (|u_{k+1}| - |u_k|)/|u_0|, negative when strictly dissipative
  double max_norm_increase() const;
};

// Per-block operator data and θ-scheme steps.
class BlockPropagator {
 public:
  BlockPropagator(const DiscreteLaplacian& lap, double mu, double theta);
  ~BlockPropagator();
  BlockPropagator(const BlockPropagator&) = delete;
  BlockPropagator& operator=(const BlockPropagator&) = delete;

  double mu() const { return mu_; }
  const SpMat& laplacian() const { return L_; }
  BlockAssembler& assembler() { return asm_; }
  const SpMat& down();  // D_{h-1} block
  const SpMat& up();    // D_h block

  // x <- (I + θ dt Δ)^{-1} (I - (1-θ) dt Δ) x
  void step(CVec& x, double dt);
  void step(std::vector<CVec>& xs, double dt);
  // Same with an explicit θ (e.g. implicit Euler damping steps).
  void step(CVec& x, double dt, double theta);
  // Δ^{-1} b via a regularised direct solve (Δ + reg·I).
  CVec solve_laplacian(const CVec& b, double reg);

 private:
  void factor(double c);  // I + c Δ

  const DiscreteLaplacian& lap_;
  double mu_;
  double theta_;
  BlockAssembler asm_;
  SpMat L_;
  std::optional<SpMat> down_, up_;
  double factored_c_ = -1.0;
  struct Factor;  // supernodal Cholesky of I + c Δ, symbolic analysis shared across c
  std::unique_ptr<Factor> fac_;
};

class HeatEngine {
 public:
  HeatEngine(int n, int h, const GridSpec& g);

  int n() const { return n_; }
  int degree() const { return h_; }
  int components() const { return lap_->components(); }
  const GridSpec& grid() const { return g_; }
  const RuminComplex& complex() const { return *c_; }
  const DiscreteLaplacian& laplacian() const { return *lap_; }
  const TFourier& fourier() const { return *tf_; }

  // Runs fn on every kept t-Fourier block in a fixed order.
  void for_each_block(double theta, const std::function<void(int, BlockPropagator&)>& fn) const;

  GridSection apply_laplacian(const GridSection& u) const { return lap_->apply(u); }

 private:
  int n_, h_;
  GridSpec g_;
  std::shared_ptr<const RuminComplex> c_;
  std::unique_ptr<DiscreteLaplacian> lap_;
  std::unique_ptr<TFourier> tf_;
};

// Matrix-free PCG for (I + c Δ) x = b on the full grid, Jacobi preconditioned.
struct CGResult {
  int iterations = 0;
  double residual = 0.0;
};
CGResult cg_solve(const LinearMap& A, const GridSection& diag, const GridSection& b, GridSection& x, double tol,
                  int max_iter);

HeatTrajectory evolve(const GridSection& u0, const HeatConfig& cfg);
// Several initial data evolved together (same steps); returns final states.
std::vector<GridSection> evolve_final(const HeatEngine& eng, const std::vector<GridSection>& u0, double dt, int steps,
                                      Stepper stepper);

// Two legs (s then σ, different step partitions) against one leg to s+σ.
struct SemigroupResult {
  double error = 0.0;          // |two-leg - one-leg| / |one-leg|
  double commuted_error = 0.0; // σ-then-s against s-then-σ
};
SemigroupResult semigroup_check(const GridSection& u0, double s, double sigma, const HeatConfig& cfg);

struct KernelSample {
  int degree = 0;
  double time = 0.0;
  int size = 1;
  std::vector<GridSection> columns;  // column j: e^{-sΔ}(mollifier · ξ_j), N_h components
  double entry_norm(int i, int j) const;
};
KernelSample kernel_extract(const HeatEngine& eng, double s, double eps, double eps_t, int steps, Stepper stepper);

struct ScalingResult {
  double error = 0.0;
  double boundary_mass = 0.0;
};
// Compares the kernel at r^a s (mollifier widths rε, r^2 ε_t) with r^{-Q} δ_{1/r}-resampled kernel at s.
ScalingResult scaling_check(const HeatEngine& eng, double s, double r, double eps, double eps_t, int steps,
                            Stepper stepper = Stepper::CrankNicolson);

struct SymmetryResult {
  double discrepancy = 0.0;        // max_ij max_p |K_ij(p) - K_ji(p^{-1})| / max |K|
  double diagonal_discrepancy = 0.0;
};
SymmetryResult symmetry_check(const KernelSample& k);

// ‖(u(s+Δs) - u(s-Δs))/(2Δs) + Δ u(s)‖ / ‖Δ u(s)‖ at the interior snapshots.
std::vector<double> pde_residual(const HeatTrajectory& traj, const LinearMap& laplacian);

struct InverseResult {
  GridSection integral;                 // ∫_0^M e^{-sΔ}φ ds
  std::vector<double> cutoffs;          // M values at segment ends
  std::vector<double> errors;           // ‖Δ I_M - φ‖ / ‖φ‖
  std::vector<double> tail;             // ‖e^{-MΔ}φ‖ / ‖φ‖
  double direct_error = 0.0;            // ‖I_M - Δ^{-1}φ‖ / ‖Δ^{-1}φ‖ at the final cutoff
  GridSection direct;                   // Δ^{-1}φ
  double final_error() const { return errors.empty() ? 0.0 : errors.back(); }
};
// s-ladder: `p` uniform steps of size dt up to s0 = p·dt, then doubling segments of p steps each.
InverseResult inverse_accumulate(const HeatEngine& eng, const GridSection& phi, double M, double dt, int p = 4,
                                 Stepper stepper = Stepper::CrankNicolson, double stop_tol = 0.0);

// Step sizes of the doubling ladder reaching at least `end`.
std::vector<double> ladder_steps(double dt, int p, double end);

}  // namespace rumin
