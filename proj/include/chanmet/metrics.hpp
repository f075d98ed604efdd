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

#ifndef CHANMET_METRICS_HPP
#define CHANMET_METRICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "chanmet/families.hpp"
#include "chanmet/mixture.hpp"

namespace chanmet {

// Metrics on the channel space at a point (Φ, Δ):
//  * the smallest monotone metric, estimated from below by optimizing the
//    output SLD information over entangled pure probes (g_min);
//  * upper bounds on the largest monotone metric from classical tangent
//    simulations (mixture_bound) and from the CP-ball two-point construction
//    (g_max_upper);
//  * the output RLD quantity at one use with ancilla (g_r_output).
// Infinite values carry their cause: a tangent direction escaping the output
// state's support, or a vanishing CP ball around a boundary channel.

enum class Divergence { none, support_escape, eps_zero };

struct GminOptions {
  double tol = 1e-9;       // relative improvement threshold
  int max_iter = 500;      // per restart
  int restarts = 16;       // random initial probes
  std::uint64_t seed = 1;  // restart seeds are derived per index
};

struct MetricReport {
  double value = 0.0;
  Divergence divergence = Divergence::none;
  Vector probe;                // best witness probe on H_in ⊗ K, dim K = d_in
  int iterations = 0;          // iterations of the best restart
  bool converged = false;
  int restarts_used = 0;
  std::vector<double> ascent;  // objective trace of the best restart
};

/// Lower-bound estimate of sup_ψ J^S((Φ⊗I)(ψψ†), (Δ⊗I)(ψψ†)) by seesaw
/// iteration on the variational form J^S = max_X [2 tr(δX) − tr(ρX²)]:
/// the X half-step is the SLD solve, the probe half-step takes the top
/// eigenvector of 2(Δ⊗I)*(X) − (Φ⊗I)*(X²). Both half-steps are exact
/// maximizations, so the objective is nondecreasing along each restart.
/// Returns +∞ (support_escape) when a fresh probe already has tangent mass
/// outside the output support beyond the SLD threshold.
MetricReport g_min(const Channel& phi, const ChannelTangent& dphi,
                   const GminOptions& opts = {});

/// Classical Fisher information of measuring M on the probed channel output;
/// never exceeds the g_min value beyond tolerance.
double g_min_measured(const Channel& phi, const ChannelTangent& dphi,
                      const Vector& probe, const Povm& m);

/// Validates that the simulation reconstructs (Φ, Δ) within 1e-9 Frobenius
/// and returns its classical Fisher information J_q(δ′), an upper bound on
/// the largest monotone metric. Throws simulation_error otherwise.
double mixture_bound(const MixtureSimulation& sim, const Channel& phi,
                     const ChannelTangent& dphi);

/// The two-branch simulation {q = (½,½), δ′ = ±1/(2ε), Λ = Φ ± εΔ}.
MixtureSimulation make_two_point_mixture(const Channel& phi,
                                         const ChannelTangent& dphi, double eps);

struct CpBall {
  double eps;   // largest ε with Choi(Φ) ± ε·Choi(Δ) both PSD; 0 at the boundary
  bool capped;  // true when the search hit the cap (Δ = 0 or unbounded ray)
};

inline constexpr double kCpBallCap = 1e6;

/// Bisection for the CP-ball radius, absolute tolerance 1e-10. Radii below
/// 1e-9 are reported as exactly 0 (the tangent leaves a rank-deficient Choi's
/// support, so every positive ε is infeasible).
CpBall cp_ball_radius(const Channel& phi, const ChannelTangent& dphi);

struct GmaxUpper {
  double value = 0.0;  // the reported upper bound (min over available bounds)
  Divergence divergence = Divergence::none;
  double eps = 0.0;
  bool eps_capped = false;
  double two_point = 0.0;               // ε⁻², cross-checked by mixture_bound
  std::optional<double> mixture;        // catalog/user simulation bound if any
};

/// Upper bound on the largest monotone metric: ε⁻² from the CP ball realized
/// as an explicit two-point mixture, optionally tightened by a supplied
/// simulation. +∞ with reason eps_zero when ε = 0.
GmaxUpper g_max_upper(const Channel& phi, const ChannelTangent& dphi,
                      const std::optional<MixtureSimulation>& extra = {});

struct GrOptions {
  double tol = 1e-8;
  int max_iter = 200;
  int restarts = 16;
  std::uint64_t seed = 1;
  double grad_step = 1e-5;
};

/// Estimate of sup_ψ J^R((Φ⊗I)(ψψ†), (Δ⊗I)(ψψ†)) by multi-restart projected
/// gradient ascent on the probe sphere (numerical gradient, step halving).
/// A fresh probe with infinite RLD information reports +∞ (support_escape);
/// non-finite line-search trials are rejected as failed steps, since near a
/// rank-deficient optimum the support cutoff can misflag a finite value.
MetricReport g_r_output(const Channel& phi, const ChannelTangent& dphi,
                        const GrOptions& opts = {});

struct ScalingRow {
  int n;
  double g_min_over_n;
  int restarts_used;
  bool converged;
};

/// Per-n table of g_min(Φ^{⊗n}, Δ^{(n)})/n for n = 1..n_max; restarts are
/// raised to at least 32 for n ≥ 3. Throws budget_error past the n_copy budget.
std::vector<ScalingRow> parallel_scaling(const ChannelFamily& family,
                                         double theta, int n_max,
                                         const GminOptions& opts = {});

/// Minimum metric of a finite-alphabet classical channel family embedded as a
/// dephasing quantum channel: max over input symbols of the row-wise classical
/// Fisher information.
double classical_channel_min(const ChannelFamily& family, double theta);

}  // namespace chanmet

#endif  // CHANMET_METRICS_HPP
