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

#ifndef CHANMET_ESTIM_HPP
#define CHANMET_ESTIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chanmet/families.hpp"
#include "chanmet/povm.hpp"

namespace chanmet {

// Monte Carlo channel estimation with i.i.d. non-adaptive strategies: a fixed
// probe (optionally entangled with an ancilla), a fixed POVM on the output,
// multinomial sampling of n uses, and a grid/golden-section MLE. The n·MSE of
// the estimates is compared against the 1/g_min Cramér-Rao floor.

struct MleOptions {
  // Estimation interval; when lo >= hi it defaults to θ_true ± 0.5 clipped to
  // the family's valid range.
  double lo = 0.0;
  double hi = 0.0;
  double resolution = 1e-6;
  int grid_points = 257;
};

struct Strategy {
  Vector probe;  // unit vector on H_in ⊗ K (K may be trivial)
  Povm povm;     // on H_out ⊗ K
  MleOptions estimator;
};

/// Probe/POVM presets: probe ∈ {bell, zero, plus}, povm ∈ {bell,
/// computational, identity}. "bell" entangles with a d_in-dimensional ancilla.
Strategy make_strategy(const ChannelFamily& family, const std::string& probe,
                       const std::string& povm, const MleOptions& mle = {});

/// Outcome probabilities p(x) = tr[(Φ_θ⊗I)(ψψ†)M_x] and their θ-derivative
/// from the family tangent.
std::pair<ProbVector, SignedVector> outcome_distribution(
    const ChannelFamily& family, double theta, const Strategy& strategy);

/// True when the outcome derivative carries any information (‖d‖₁ > 1e-12).
bool strategy_informative(const ChannelFamily& family, double theta,
                          const Strategy& strategy);

struct TrialResult {
  int n_uses = 0;
  int trials = 0;
  double theta_true = 0.0;
  std::vector<double> estimates;
  double mean = 0.0;
  double mse = 0.0;
  double n_times_mse = 0.0;
  int clipped = 0;    // MLEs landing on the interval boundary (retained)
  int excluded = 0;   // trials dropped for estimator failure
  std::uint64_t seed = 0;
};

/// i.i.d. multinomial trials with per-trial derived seeds; deterministic for
/// fixed inputs. Throws degenerate_error when the strategy is uninformative.
TrialResult run_trials(const ChannelFamily& family, double theta_true,
                       const Strategy& strategy, int n_uses, int trials,
                       std::uint64_t seed);

struct RateRow {
  int n;
  double mse;
  double n_mse;
  double cr_floor;  // 1/g_min(Φ_θ, Δ_θ)
  int clipped;      // boundary-clipped MLEs among the trials (retained)
};

struct RateReport {
  std::vector<RateRow> rows;
  double slope = 0.0;     // least-squares slope of log MSE against log n
  double cr_floor = 0.0;
  bool degenerate = false;
};

/// Per-n scan at fixed trials; slope −1 is the standard quantum limit, the
/// rate any noisy channel collapses to.
RateReport rate_scan(const ChannelFamily& family, double theta_true,
                     const Strategy& strategy, const std::vector<int>& n_list,
                     int trials, std::uint64_t seed);

}  // namespace chanmet

#endif  // CHANMET_ESTIM_HPP
