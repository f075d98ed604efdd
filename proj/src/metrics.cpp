// Copyright 2026 The chanmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chanmet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chanmet/threading.hpp"

namespace chanmet {

namespace {

// Channel extended by an identity on the ancilla, applied blockwise: forming
// Choi((Φ⊗I)) or a dense superoperator squares the memory and work for no
// gain, since (Φ⊗I) only mixes the system indices.
struct ExtApply {
  int d_in, d_out, anc;
  Matrix choi;  // of the base map

  // (Φ⊗I)(x): out block (k,l) = Σ_{m,i} C[(m,k),(i,l)] · x block (m,i).
  Matrix forward(const Matrix& x) const {
    Matrix out = Matrix::Zero(Eigen::Index(d_out) * anc, Eigen::Index(d_out) * anc);
    for (int m = 0; m < d_in; ++m) {
      for (int i = 0; i < d_in; ++i) {
        const auto xb = x.block(Eigen::Index(m) * anc, Eigen::Index(i) * anc, anc, anc);
        for (int k = 0; k < d_out; ++k) {
          for (int l = 0; l < d_out; ++l) {
            const Complex c =
                choi(Eigen::Index(m) * d_out + k, Eigen::Index(i) * d_out + l);
            if (c != Complex(0, 0)) {
              out.block(Eigen::Index(k) * anc, Eigen::Index(l) * anc, anc, anc)
                  .noalias() += c * xb;
            }
          }
        }
      }
    }
    return out;
  }

  // (Φ*⊗I)(a): out block (m,i) = Σ_{k,l} C[(i,l),(m,k)] · a block (k,l).
  Matrix adjoint(const Matrix& a) const {
    Matrix out = Matrix::Zero(Eigen::Index(d_in) * anc, Eigen::Index(d_in) * anc);
    for (int k = 0; k < d_out; ++k) {
      for (int l = 0; l < d_out; ++l) {
        const auto ab = a.block(Eigen::Index(k) * anc, Eigen::Index(l) * anc, anc, anc);
        for (int m = 0; m < d_in; ++m) {
          for (int i = 0; i < d_in; ++i) {
            const Complex c =
                choi(Eigen::Index(i) * d_out + l, Eigen::Index(m) * d_out + k);
            if (c != Complex(0, 0)) {
              out.block(Eigen::Index(m) * anc, Eigen::Index(i) * anc, anc, anc)
                  .noalias() += c * ab;
            }
          }
        }
      }
    }
    return out;
  }
};

Vector random_probe(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

Hermitian hermitized(Matrix m) { return Hermitian(0.5 * (m + m.adjoint().eval())); }

struct SeesawOutcome {
  double value = -kInf;
  bool diverged = false;  // support escape at the fresh probe
  Vector probe;
  int iterations = 0;
  bool converged = false;
  std::vector<double> ascent;
};

SeesawOutcome run_seesaw(const ExtApply& fwd_phi, const ExtApply& fwd_dphi,
                         Vector psi, const GminOptions& opts) {
  SeesawOutcome out;
  out.probe = psi;
  double prev = -kInf;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    const Matrix proj = psi * psi.adjoint();
    const Hermitian rho_out = hermitized(fwd_phi.forward(proj));
    const Hermitian del_out = hermitized(fwd_dphi.forward(proj));
    const SldResult sl = solve_sld(rho_out, del_out);
    if (!sl.support_ok) {
      if (iter == 1) {
        out.diverged = true;
        out.iterations = 1;
        return out;
      }
      // Cutoff artifact near a rank-deficient optimum: keep the last finite
      // value instead of flagging a divergence the direction does not have.
      out.converged = true;
      return out;
    }
    const Matrix& l = sl.l.mat();
    const double obj = (2.0 * (del_out.mat() * l).trace() -
                        (rho_out.mat() * l * l).trace())
                           .real();
    out.ascent.push_back(obj);
    out.value = obj;
    out.probe = psi;
    out.iterations = iter;
    if (iter > 1 && obj - prev <= opts.tol * std::max(1.0, std::abs(obj))) {
      out.converged = true;
      return out;
    }
    prev = obj;

    const Matrix k_op = 2.0 * fwd_dphi.adjoint(l) - fwd_phi.adjoint(l * l);
    const EigSystem es = eig_hermitian(hermitized(k_op));
    psi = es.vectors.col(es.vectors.cols() - 1);
  }
  return out;
}

void check_pair(const Channel& phi, const ChannelTangent& dphi) {
  if (phi.d_in() != dphi.d_in() || phi.d_out() != dphi.d_out()) {
    throw std::invalid_argument("channel/tangent dimension mismatch");
  }
}

}  // namespace

MetricReport g_min(const Channel& phi, const ChannelTangent& dphi,
                   const GminOptions& opts) {
  check_pair(phi, dphi);
  if (opts.restarts < 1 || opts.max_iter < 1) {
    throw std::invalid_argument("g_min: restarts and max_iter must be >= 1");
  }
  const int anc = phi.d_in();
  const ExtApply fwd_phi{phi.d_in(), phi.d_out(), anc, phi.choi_mat()};
  const ExtApply fwd_dphi{dphi.d_in(), dphi.d_out(), anc, dphi.choi_mat()};
  const int probe_dim = phi.d_in() * anc;

  std::vector<SeesawOutcome> outcomes(std::size_t(opts.restarts));
  parallel_for(opts.restarts, [&](int r) {
    const Vector psi = random_probe(probe_dim, derive_seed(opts.seed, r));
    outcomes[std::size_t(r)] = run_seesaw(fwd_phi, fwd_dphi, psi, opts);
  });

  MetricReport rep;
  rep.restarts_used = opts.restarts;
  int best = -1;
  for (int r = 0; r < opts.restarts; ++r) {
    if (outcomes[std::size_t(r)].diverged) {
      rep.value = kInf;
      rep.divergence = Divergence::support_escape;
      rep.iterations = outcomes[std::size_t(r)].iterations;
      rep.converged = true;
      return rep;
    }
    if (best < 0 || outcomes[std::size_t(r)].value > outcomes[std::size_t(best)].value) {
      best = r;
    }
  }
  const SeesawOutcome& win = outcomes[std::size_t(best)];
  rep.value = win.value;
  rep.probe = win.probe;
  rep.iterations = win.iterations;
  rep.converged = win.converged;
  rep.ascent = win.ascent;
  return rep;
}

double g_min_measured(const Channel& phi, const ChannelTangent& dphi,
                      const Vector& probe, const Povm& m) {
  check_pair(phi, dphi);
  if (probe.size() % phi.d_in() != 0 || probe.size() == 0) {
    throw std::invalid_argument("g_min_measured: probe dimension mismatch");
  }
  if (std::abs(probe.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("g_min_measured: probe must be a unit vector");
  }
  const int anc = int(probe.size()) / phi.d_in();
  const Matrix proj = probe * probe.adjoint();
  Matrix rho_out, del_out;
  if (anc == 1) {
    rho_out = apply_raw(phi.choi_mat(), phi.d_in(), phi.d_out(), proj);
    del_out = apply_raw(dphi.choi_mat(), dphi.d_in(), dphi.d_out(), proj);
  } else {
    const Channel id = Channel::identity(anc);
    const Channel ext_phi = tensor(phi, id);
    const ChannelTangent ext_dphi = tensor(dphi, id);
    rho_out = apply_raw(ext_phi.choi_mat(), ext_phi.d_in(), ext_phi.d_out(), proj);
    del_out =
        apply_raw(ext_dphi.choi_mat(), ext_dphi.d_in(), ext_dphi.d_out(), proj);
  }
  if (m.dim() != rho_out.rows()) {
    throw std::invalid_argument("g_min_measured: POVM dimension mismatch");
  }
  RealVector p(m.size()), d(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) {
    p(Eigen::Index(x)) = (rho_out * m.element(x).mat()).trace().real();
    d(Eigen::Index(x)) = (del_out * m.element(x).mat()).trace().real();
  }
  return classical_fisher(ProbVector(std::move(p)), SignedVector(std::move(d)));
}

double mixture_bound(const MixtureSimulation& sim, const Channel& phi,
                     const ChannelTangent& dphi) {
  check_pair(phi, dphi);
  const std::size_t n = sim.branches.size();
  if (n == 0 || sim.q.size() != Eigen::Index(n) || sim.dq.size() != Eigen::Index(n)) {
    throw simulation_error("mixture: branch/weight count mismatch");
  }
  Matrix recon_phi = Matrix::Zero(phi.choi_mat().rows(), phi.choi_mat().cols());
  Matrix recon_dphi = recon_phi;
  for (std::size_t y = 0; y < n; ++y) {
    const Channel& lam = sim.branches[y];
    if (lam.d_in() != phi.d_in() || lam.d_out() != phi.d_out()) {
      throw simulation_error("mixture: branch dimension mismatch");
    }
    recon_phi += sim.q.vec()(Eigen::Index(y)) * lam.choi_mat();
    recon_dphi += sim.dq.vec()(Eigen::Index(y)) * lam.choi_mat();
  }
  if ((recon_phi - phi.choi_mat()).norm() > 1e-9 ||
      (recon_dphi - dphi.choi_mat()).norm() > 1e-9) {
    throw simulation_error("mixture: branches do not reconstruct the pair");
  }
  return classical_fisher(sim.q, sim.dq);
}

MixtureSimulation make_two_point_mixture(const Channel& phi,
                                         const ChannelTangent& dphi, double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("two_point_mixture: eps must be positive");
  }
  RealVector q(2), dq(2);
  q << 0.5, 0.5;
  dq << 1.0 / (2.0 * eps), -1.0 / (2.0 * eps);
  std::vector<Channel> branches;
  branches.emplace_back(phi.d_in(), phi.d_out(),
                        Hermitian(phi.choi_mat() + eps * dphi.choi_mat()));
  branches.emplace_back(phi.d_in(), phi.d_out(),
                        Hermitian(phi.choi_mat() - eps * dphi.choi_mat()));
  return MixtureSimulation{ProbVector(std::move(q)), SignedVector(std::move(dq)),
                           std::move(branches)};
}

CpBall cp_ball_radius(const Channel& phi, const ChannelTangent& dphi) {
  check_pair(phi, dphi);
  const Matrix& c = phi.choi_mat();
  const Matrix& d = dphi.choi_mat();
  if (d.norm() < 1e-14) {
    return CpBall{kCpBallCap, true};
  }
  // A tangent with mass outside a rank-deficient Choi's support makes every
  // positive ε infeasible; the violation is second order in ε, so it must be
  // caught directly rather than left to the bisection's PSD tolerance.
  {
    const EigSystem ec = eig_hermitian(phi.choi());
    if (ec.values(0) <= kSupportTol) {
      Matrix proj = Matrix::Zero(c.rows(), c.cols());
      for (Eigen::Index i = 0; i < ec.values.size(); ++i) {
        if (ec.values(i) > kSupportTol) {
          proj += ec.vectors.col(i) * ec.vectors.col(i).adjoint();
        }
      }
      if ((d - proj * d * proj).norm() > kEscapeTol) {
        return CpBall{0.0, false};
      }
    }
  }
  const EigSystem es = eig_hermitian(dphi.choi());
  const double spectral =
      std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
  auto feasible = [&](double e) {
    return min_eigenvalue(Hermitian(c + e * d)) >= -1e-10 &&
           min_eigenvalue(Hermitian(c - e * d)) >= -1e-10;
  };
  // v†Cv ≥ ε|v†Dv| at D's top eigenvector bounds ε by λ_max(C)/‖D‖ ≤ d_in/‖D‖.
  double hi = std::min(kCpBallCap, phi.d_in() / spectral * (1.0 + 1e-6) + 1e-9);
  if (feasible(hi)) {
    return CpBall{hi, true};
  }
  double lo = 0.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  if (lo <= 1e-9) {
    return CpBall{0.0, false};
  }
  return CpBall{lo, false};
}

GmaxUpper g_max_upper(const Channel& phi, const ChannelTangent& dphi,
                      const std::optional<MixtureSimulation>& extra) {
  GmaxUpper out;
  const CpBall ball = cp_ball_radius(phi, dphi);
  out.eps = ball.eps;
  out.eps_capped = ball.capped;
  if (ball.eps == 0.0) {
    out.two_point = kInf;
    out.value = kInf;
    out.divergence = Divergence::eps_zero;
  } else if (ball.capped) {
    out.two_point = 1.0 / (ball.eps * ball.eps);
    out.value = out.two_point;
  } else {
    const MixtureSimulation two = make_two_point_mixture(phi, dphi, ball.eps);
    out.two_point = mixture_bound(two, phi, dphi);
    out.value = out.two_point;
  }
  if (extra) {
    out.mixture = mixture_bound(*extra, phi, dphi);
    if (*out.mixture < out.value) {
      out.value = *out.mixture;
      out.divergence = Divergence::none;
    }
  }
  return out;
}

namespace {

struct GrEval {
  const ExtApply* fwd_phi;
  const ExtApply* fwd_dphi;

  double operator()(const Vector& raw) const {
    const Vector psi = raw / raw.norm();
    const Matrix proj = psi * psi.adjoint();
    const Hermitian rho_out = hermitized(fwd_phi->forward(proj));
    const Hermitian del_out = hermitized(fwd_dphi->forward(proj));
    return rld_fisher(rho_out, del_out);
  }
};

struct AscentOutcome {
  double value = -kInf;
  bool diverged = false;
  Vector probe;
  int iterations = 0;
  bool converged = false;
};

AscentOutcome run_gr_ascent(const GrEval& f, Vector x, const GrOptions& opts) {
  AscentOutcome out;
  double fx = f(x);
  if (std::isinf(fx)) {
    out.diverged = true;
    out.iterations = 1;
    return out;
  }
  out.value = fx;
  out.probe = x / x.norm();
  const int m = int(x.size());
  double step = 0.5;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    out.iterations = iter;
    // Numerical gradient in the 2m real coordinates; f is scale-invariant,
    // so the radial component is negligible and the sphere projection is
    // handled by renormalizing inside f.
    Vector grad(m);
    const double h = opts.grad_step;
    // A perturbed point can land in the support-cutoff zone and evaluate as
    // infinite; treat that direction as flat rather than poisoning the step.
    auto slope = [&](double fp, double fm) {
      if (!std::isfinite(fp) || !std::isfinite(fm)) return 0.0;
      return (fp - fm) / (2.0 * h);
    };
    for (int i = 0; i < m; ++i) {
      Vector xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const double d_re = slope(f(xp), f(xm));
      xp = x;
      xm = x;
      xp(i) += Complex(0, h);
      xm(i) -= Complex(0, h);
      const double d_im = slope(f(xp), f(xm));
      grad(i) = Complex(d_re, d_im);
    }
    const double gnorm = grad.norm();
    if (gnorm < 1e-14) {
      out.converged = true;
      return out;
    }
    bool improved = false;
    while (step >= 1e-12) {
      Vector trial = x + (step / gnorm) * grad;
      trial /= trial.norm();
      const double ft = f(trial);
      // Non-finite trials are failed steps: near a rank-deficient optimum the
      // support cutoff misreports a finite value as infinite.
      if (std::isfinite(ft) && ft > fx) {
        x = trial;
        improved = true;
        const bool small = (ft - fx) <= opts.tol * std::max(1.0, std::abs(ft));
        fx = ft;
        out.value = fx;
        out.probe = x;
        if (small) {
          out.converged = true;
          return out;
        }
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace

MetricReport g_r_output(const Channel& phi, const ChannelTangent& dphi,
                        const GrOptions& opts) {
  check_pair(phi, dphi);
  if (opts.restarts < 1 || opts.max_iter < 1) {
    throw std::invalid_argument("g_r_output: restarts and max_iter must be >= 1");
  }
  const int anc = phi.d_in();
  const ExtApply fwd_phi{phi.d_in(), phi.d_out(), anc, phi.choi_mat()};
  const ExtApply fwd_dphi{dphi.d_in(), dphi.d_out(), anc, dphi.choi_mat()};
  const GrEval f{&fwd_phi, &fwd_dphi};
  const int probe_dim = phi.d_in() * anc;

  std::vector<AscentOutcome> outcomes(std::size_t(opts.restarts));
  parallel_for(opts.restarts, [&](int r) {
    const Vector psi = random_probe(probe_dim, derive_seed(opts.seed ^ 0xa5a5, r));
    outcomes[std::size_t(r)] = run_gr_ascent(f, psi, opts);
  });

  MetricReport rep;
  rep.restarts_used = opts.restarts;
  int best = -1;
  for (int r = 0; r < opts.restarts; ++r) {
    if (outcomes[std::size_t(r)].diverged) {
      rep.value = kInf;
      rep.divergence = Divergence::support_escape;
      rep.converged = true;
      rep.iterations = outcomes[std::size_t(r)].iterations;
      return rep;
    }
    if (best < 0 || outcomes[std::size_t(r)].value > outcomes[std::size_t(best)].value) {
      best = r;
    }
  }
  const AscentOutcome& win = outcomes[std::size_t(best)];
  rep.value = win.value;
  rep.probe = win.probe;
  rep.iterations = win.iterations;
  rep.converged = win.converged;
  return rep;
}

std::vector<ScalingRow> parallel_scaling(const ChannelFamily& family,
                                         double theta, int n_max,
                                         const GminOptions& opts) {
  if (n_max < 1) {
    throw std::invalid_argument("parallel_scaling: n_max must be >= 1");
  }
  const Channel phi = family.at(theta);
  const ChannelTangent dphi = family.tangent_at(theta);
  double dim = 1.0;
  for (int k = 0; k < n_max; ++k) dim *= double(phi.d_in()) * phi.d_out();
  if (dim > double(kNCopyBudget)) {
    throw budget_error("parallel_scaling: n_max exceeds the n_copy budget");
  }

  std::vector<ScalingRow> rows;
  rows.reserve(std::size_t(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const auto [phi_n, dphi_n] = n_copy(phi, dphi, n);
    GminOptions o = opts;
    if (n >= 3) o.restarts = std::max(o.restarts, 32);
    const MetricReport rep = g_min(phi_n, dphi_n, o);
    rows.push_back(ScalingRow{n, rep.value / n, rep.restarts_used, rep.converged});
  }
  return rows;
}

double classical_channel_min(const ChannelFamily& family, double theta) {
  const Channel phi = family.at(theta);
  const ChannelTangent dphi = family.tangent_at(theta);
  const int k_in = phi.d_in();
  const int k_out = phi.d_out();
  const Matrix& c = phi.choi_mat();
  const Matrix& dc = dphi.choi_mat();
  const double off = (c - Matrix(c.diagonal().asDiagonal())).norm() +
                     (dc - Matrix(dc.diagonal().asDiagonal())).norm();
  if (off > 1e-9 * std::max(1.0, c.norm())) {
    throw config_error(
        "classical_channel_min: family is not a classical-finite embedding");
  }
  double best = 0.0;
  for (int x = 0; x < k_in; ++x) {
    RealVector p(k_out), d(k_out);
    for (int y = 0; y < k_out; ++y) {
      p(y) = c(Eigen::Index(x) * k_out + y, Eigen::Index(x) * k_out + y).real();
      d(y) = dc(Eigen::Index(x) * k_out + y, Eigen::Index(x) * k_out + y).real();
    }
    best = std::max(best,
                    classical_fisher(ProbVector(std::move(p)), SignedVector(std::move(d))));
  }
  return best;
}

}  // namespace chanmet
