// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/calderon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rumin {

int CalderonConfig::ladder_p() const { return std::max(1, static_cast<int>(std::ceil(1.0 / (rho - 1.0) - 1e-9))); }

void CalderonConfig::validate() const {
  grid.validate();
  if (grid.n != n) throw std::invalid_argument("CalderonConfig: grid dimension differs from n");
  if (degree < 1 || degree > 2 * n + 1) throw std::invalid_argument("CalderonConfig: degree must lie in 1..2n+1");
  if (!(dt > 0)) throw std::invalid_argument("CalderonConfig: dt must be positive");
  if (!(rho > 1.0)) throw std::invalid_argument("CalderonConfig: rho must exceed 1");
  if (!(s_max > 4.0 * dt)) throw std::invalid_argument("CalderonConfig: s_max must exceed 2 s_min");
  if (sign != 1 && sign != -1) throw std::invalid_argument("CalderonConfig: sign must be +1 or -1");
  if (!(f_time > 0)) throw std::invalid_argument("CalderonConfig: f_time must be positive");
  if (damping_steps < 0) throw std::invalid_argument("CalderonConfig: damping_steps must be nonnegative");
}

namespace {

// Uniform in [0,1) from raw 64-bit output; std distributions differ between libraries.
double unit(std::mt19937_64& r) { return static_cast<double>(r() >> 11) * 0x1.0p-53; }

// {0..p} ∪ {2^j (p+i)}, ascending, up to the first entry >= end.
std::vector<long> ladder_integers(int p, long end) {
  std::vector<long> out;
  for (long k = 0; k <= p; ++k) {
    out.push_back(k);
    if (k >= end) return out;
  }
  for (long scale = 1;; scale *= 2)
    for (long i = 1; i <= p; ++i) {
      out.push_back(scale * (p + i));
      if (out.back() >= end) return out;
    }
}

double norm2(const TFourier& tf, int b, const CVec& x) { return tf.block_norm2(b, x); }

// One ladder interval of length dt. CN does not damp stiff modes, so the
// first interval and every interval after a step-size change are taken as
// implicit Euler substeps (Rannacher restart).
void ladder_step(BlockPropagator& p, CVec& x, double dt, bool first, bool restart, int damping) {
  if (first && damping > 0) {
    for (int d = 0; d < damping; ++d) p.step(x, dt / damping, 1.0);
  } else if (restart && damping > 0) {
    p.step(x, 0.5 * dt, 1.0);
    p.step(x, 0.5 * dt, 1.0);
  } else {
    p.step(x, dt);
  }
}

}  // namespace

GridSection test_potential(const HeatEngine& eng_below, unsigned seed, const TestFormOptions& opt) {
  const GridSpec& g = eng_below.grid();
  const int nc = eng_below.components();
  std::mt19937_64 rng(seed);
  GridSection beta(g, eng_below.degree(), nc);
  const int hor = 2 * g.n;
  for (int c = 0; c < nc; ++c)
    for (int k = 0; k < opt.bumps; ++k) {
      std::vector<double> centre(g.axes());
      for (int a = 0; a < hor; ++a) centre[a] = (2.0 * unit(rng) - 1.0) * opt.spread * g.L;
      centre[g.t_axis()] = (2.0 * unit(rng) - 1.0) * opt.spread * opt.width;
      const double amp = 2.0 * unit(rng) - 1.0;
      const double w = opt.width, wt = opt.width_t;
      GridSection bump(g, eng_below.degree(), nc);
      bump.fill(c, [&](const std::vector<double>& p) {
        double r2 = 0.0;
        for (int a = 0; a < hor; ++a) r2 += (p[a] - centre[a]) * (p[a] - centre[a]);
        const double dt = p[g.t_axis()] - centre[g.t_axis()];
        return amp * std::exp(-r2 / (2 * w * w) - dt * dt / (2 * wt * wt));
      });
      beta += bump;
    }
  return beta;
}

GridSection make_closed_test_form(const HeatEngine& eng, unsigned seed, const TestFormOptions& opt) {
  if (eng.degree() < 1) throw std::invalid_argument("make_closed_test_form: degree must be >= 1");
  HeatEngine below(eng.n(), eng.degree() - 1, eng.grid());
  return eng.laplacian().down()->apply(test_potential(below, seed, opt));
}

double closedness(const HeatEngine& eng, const GridSection& alpha) {
  const double a = l2_norm(alpha);
  if (!eng.laplacian().up() || a == 0.0) return 0.0;
  return l2_norm(eng.laplacian().up()->apply(alpha)) / a;
}

TruncationEstimate truncation_estimates(const std::vector<double>& s, const std::vector<double>& norms) {
  if (s.size() != norms.size()) throw std::invalid_argument("truncation_estimates: size mismatch");
  TruncationEstimate e;
  if (s.empty()) return e;
  e.head = s.front() * norms.front();
  const double last = norms.back();
  if (last == 0.0) return e;
  const std::size_t k = std::min<std::size_t>(5, s.size());
  if (k < 2) {
    e.decaying = false;
    e.tail = std::numeric_limits<double>::infinity();
    return e;
  }
  // least squares on log-log over the last k nodes
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (std::size_t i = s.size() - k; i < s.size(); ++i) {
    if (norms[i] <= 0.0) continue;
    const double x = std::log(s[i]), y = std::log(norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 2) return e;
  const double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
  e.exponent = -slope;
  if (e.exponent <= 1.0) {
    e.decaying = false;
    e.tail = std::numeric_limits<double>::infinity();
    return e;
  }
  e.tail = last * s.back() / (e.exponent - 1.0);
  return e;
}

std::string CalderonReport::reproducing_sign() const {
  const bool here = rel_l2 < 0.5, there = rel_l2_opposite_sign < 0.5;
  if (here && !there) return sign > 0 ? "+1" : "-1";
  if (there && !here) return sign > 0 ? "-1" : "+1";
  return here ? "both" : "none";
}

nlohmann::json CalderonReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["degree"] = degree;
  j["sign"] = sign;
  j["reading"] = reading;
  j["rel_l2"] = rel_l2;
  j["rel_l1"] = rel_l1;
  j["rel_l2_opposite_sign"] = rel_l2_opposite_sign;
  j["rel_l2_kernel"] = rel_l2_kernel;
  j["rel_l2_form"] = rel_l2_form;
  j["reproducing_sign"] = reproducing_sign();
  j["f_discrepancy"] = f_discrepancy;
  j["closedness"] = closedness;
  j["alpha_norm"] = alpha_norm;
  j["truncation"] = {{"head", truncation.head},
                     {"tail", truncation.decaying ? nlohmann::json(truncation.tail) : nlohmann::json("inf")},
                     {"exponent", truncation.exponent},
                     {"decaying", truncation.decaying}};
  j["s"] = s;
  j["weights"] = weights;
  j["integrand_norm"] = integrand_norm;
  j["cumulative_error"] = cumulative_error;
  return j;
}

std::string CalderonReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "s,weight,integrand_norm,cumulative_error\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    os << s[i] << "," << weights[i] << "," << integrand_norm[i] << "," << cumulative_error[i] << "\n";
  return os.str();
}

CalderonResult reproduce(const GridSection& alpha, const CalderonConfig& cfg) {
  cfg.validate();
  if (alpha.degree() != cfg.degree) throw std::invalid_argument("reproduce: form degree differs from config");
  if (!(alpha.grid() == cfg.grid)) throw std::invalid_argument("reproduce: grid differs from config");
  HeatEngine top(cfg.n, cfg.degree, cfg.grid);
  HeatEngine low(cfg.n, cfg.degree - 1, cfg.grid);
  const TFourier& tf = top.fourier();
  const double theta = stepper_theta(cfg.stepper);

  // Integer ladder in units u = dt/2; τ nodes u·k and s nodes dt·k = u·2k share it.
  const double u = 0.5 * cfg.dt;
  const int p = cfg.ladder_p();
  const long end = static_cast<long>(std::ceil(cfg.s_max / u - 1e-9));
  const std::vector<long> N = ladder_integers(p, end);
  auto index_of = [&](long v) -> long {
    auto it = std::lower_bound(N.begin(), N.end(), v);
    return (it != N.end() && *it == v) ? it - N.begin() : -1;
  };
  // s nodes: k with 2k in N, s = u·2k in [2 dt, s_max]
  std::vector<long> tau_idx, s_idx;
  for (std::size_t i = 0; i < N.size(); ++i) {
    const long k = N[i];
    if (2 * k < 4 || u * 2 * k > cfg.s_max * (1 + 1e-12)) continue;
    const long j = index_of(2 * k);
    if (j < 0) continue;
    tau_idx.push_back(static_cast<long>(i));
    s_idx.push_back(j);
  }
  const std::size_t K = tau_idx.size();
  if (K < 2) throw std::invalid_argument("reproduce: quadrature has fewer than two nodes");
  std::vector<double> s(K), w(K);
  for (std::size_t k = 0; k < K; ++k) s[k] = u * N[s_idx[k]];
  for (std::size_t k = 0; k < K; ++k) {
    const double lo = std::log(s[k == 0 ? 0 : k - 1]), hi = std::log(s[k + 1 == K ? K - 1 : k + 1]);
    w[k] = 0.5 * s[k] * (hi - lo);
  }
  const double w0 = cfg.head_correction ? 0.5 * s[0] : 0.0;  // weight of the s = 0 endpoint
  if (cfg.head_correction) w[0] += 0.5 * s[0];
  const long last = s_idx.back();
  auto gap_changes = [&](long i) { return i >= 2 && N[i] - N[i - 1] != N[i - 1] - N[i - 2]; };
  // F comparison node: evolved τ node nearest f_time/2
  long f_idx = 0;
  for (long i = 0; i <= last; ++i)
    if (std::abs(u * N[i] - 0.5 * cfg.f_time) < std::abs(u * N[f_idx] - 0.5 * cfg.f_time)) f_idx = i;

  SpectralField alpha_hat = tf.forward(alpha);
  SpectralField rec_kernel{cfg.degree, alpha.components(), std::vector<CVec>(tf.blocks())};
  SpectralField rec_form = rec_kernel;
  std::vector<double> g2(K, 0.0), cum2(K, 0.0);
  double a2 = 0.0, f_num = 0.0, f_den = 0.0;

  for (int b = 0; b < tf.blocks(); ++b) {
    const CVec& a = alpha_hat.blocks[b];
    a2 += norm2(tf, b, a);
    BlockPropagator ph(top.laplacian(), tf.mu(b), theta);
    const SpMat D = ph.down();
    const SpMat Dh = SpMat(D.adjoint());

    // forward sweep in Δ_h
    std::vector<CVec> G(K);
    CVec form = (w0 * (D * (Dh * a))).eval();
    CVec F1;
    CVec x = a;
    std::size_t kt = 0, ks = 0;
    for (long i = 0; i <= last; ++i) {
      if (i > 0) ladder_step(ph, x, u * (N[i] - N[i - 1]), i == 1, gap_changes(i), cfg.damping_steps);
      if (i == f_idx) F1 = Dh * x;
      if (kt < K && tau_idx[kt] == i) G[kt++] = Dh * x;
      if (ks < K && s_idx[ks] == i) {
        CVec gk = D * (Dh * x);
        g2[ks] += norm2(tf, b, gk);
        form += w[ks] * gk;
        cum2[ks] += norm2(tf, b, (cfg.sign * form - a).eval());
        ++ks;
      }
    }
    rec_form.blocks[b] = form;

    BlockPropagator pl(low.laplacian(), tf.mu(b), theta);
    // other evaluation order of F
    CVec y = Dh * a;
    for (long i = 1; i <= f_idx; ++i) ladder_step(pl, y, u * (N[i] - N[i - 1]), i == 1, gap_changes(i), cfg.damping_steps);
    f_num += norm2(tf, b, (F1 - y).eval());
    f_den += norm2(tf, b, F1);

    // Horner sweep in Δ_{h-1} from the largest τ node down to 0
    CVec S = CVec::Zero(Dh.rows());
    long kk = static_cast<long>(K) - 1;
    for (long i = tau_idx.back(); i >= 0; --i) {
      if (kk >= 0 && tau_idx[kk] == i) {
        S += w[kk] * G[kk];
        --kk;
      }
      if (i > 0) {
        const bool restart = i == tau_idx.back() || N[i + 1] - N[i] != N[i] - N[i - 1];
        ladder_step(pl, S, u * (N[i] - N[i - 1]), i == 1, restart, cfg.damping_steps);
      }
    }
    rec_kernel.blocks[b] = (D * S + w0 * (D * (Dh * a))).eval();
  }

  CalderonResult res;
  CalderonReport& r = res.report;
  r.n = cfg.n;
  r.degree = cfg.degree;
  r.sign = cfg.sign;
  r.reading = cfg.reading == KernelReading::Kernel ? "kernel" : "form";
  r.s = s;
  r.weights = w;
  r.alpha_norm = std::sqrt(a2);
  const double an = r.alpha_norm > 0.0 ? r.alpha_norm : 1.0;
  for (std::size_t k = 0; k < K; ++k) {
    r.integrand_norm.push_back(std::sqrt(g2[k]) / an);
    r.cumulative_error.push_back(std::sqrt(cum2[k]) / an);
  }
  r.truncation = truncation_estimates(s, r.integrand_norm);
  r.f_discrepancy = f_den > 0.0 ? std::sqrt(f_num / f_den) : 0.0;
  r.closedness = closedness(top, alpha);

  auto rel = [&](const SpectralField& f, int sg) {
    double e = 0.0;
    for (int b = 0; b < tf.blocks(); ++b) e += norm2(tf, b, (sg * f.blocks[b] - alpha_hat.blocks[b]).eval());
    return std::sqrt(e) / an;
  };
  r.rel_l2_kernel = rel(rec_kernel, cfg.sign);
  r.rel_l2_form = rel(rec_form, cfg.sign);
  const SpectralField& chosen = cfg.reading == KernelReading::Kernel ? rec_kernel : rec_form;
  r.rel_l2 = rel(chosen, cfg.sign);
  r.rel_l2_opposite_sign = rel(chosen, -cfg.sign);
  res.reconstruction = tf.inverse(chosen);
  res.reconstruction *= static_cast<double>(cfg.sign);
  const double l1 = lp_norm(alpha, 1.0);
  r.rel_l1 = l1 > 0.0 ? lp_norm(res.reconstruction - alpha, 1.0) / l1 : 0.0;
  return res;
}

BuildFResult build_F(const GridSection& alpha, double s, const CalderonConfig& cfg, int steps) {
  cfg.validate();
  if (steps < 1) throw std::invalid_argument("build_F: steps must be positive");
  HeatEngine top(cfg.n, cfg.degree, cfg.grid);
  HeatEngine low(cfg.n, cfg.degree - 1, cfg.grid);
  const TFourier& tf = top.fourier();
  const double theta = stepper_theta(cfg.stepper);
  const double dt = 0.5 * s / steps;
  SpectralField a = tf.forward(alpha);
  SpectralField f1{cfg.degree - 1, low.components(), std::vector<CVec>(tf.blocks())};
  SpectralField f2 = f1;
  double num = 0.0, den = 0.0;
  for (int b = 0; b < tf.blocks(); ++b) {
    BlockPropagator ph(top.laplacian(), tf.mu(b), theta);
    BlockPropagator pl(low.laplacian(), tf.mu(b), theta);
    const SpMat Dh = SpMat(ph.down().adjoint());
    CVec x = a.blocks[b];
    CVec y = Dh * x;
    for (int k = 0; k < steps; ++k) {
      ph.step(x, dt);
      pl.step(y, dt);
    }
    f1.blocks[b] = Dh * x;
    f2.blocks[b] = y;
    num += norm2(tf, b, (f1.blocks[b] - y).eval());
    den += norm2(tf, b, f1.blocks[b]);
  }
  return {tf.inverse(f1), tf.inverse(f2), den > 0.0 ? std::sqrt(num / den) : 0.0};
}

}  // namespace rumin
