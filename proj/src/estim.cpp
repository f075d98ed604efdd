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

#include "chanmet/estim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chanmet/metrics.hpp"
#include "chanmet/qubit.hpp"
#include "chanmet/threading.hpp"

namespace chanmet {

namespace {

// Raw outcome probabilities for a probe/POVM at a given channel pair.
void outcome_raw(const Channel& phi, const ChannelTangent& dphi,
                 const Vector& probe, const Povm& povm, RealVector* p,
                 RealVector* d) {
  const int d_in = phi.d_in();
  if (probe.size() % d_in != 0 || probe.size() == 0) {
    throw std::invalid_argument("strategy: probe dimension mismatch");
  }
  const int anc = int(probe.size()) / d_in;
  const Matrix proj = probe * probe.adjoint();
  Matrix rho_out, del_out;
  if (anc == 1) {
    rho_out = apply_raw(phi.choi_mat(), d_in, phi.d_out(), proj);
    del_out = apply_raw(dphi.choi_mat(), d_in, dphi.d_out(), proj);
  } else {
    const Channel id = Channel::identity(anc);
    const Channel ext = tensor(phi, id);
    const ChannelTangent dext = tensor(dphi, id);
    rho_out = apply_raw(ext.choi_mat(), ext.d_in(), ext.d_out(), proj);
    del_out = apply_raw(dext.choi_mat(), dext.d_in(), dext.d_out(), proj);
  }
  if (povm.dim() != rho_out.rows()) {
    throw std::invalid_argument("strategy: POVM dimension mismatch");
  }
  p->resize(Eigen::Index(povm.size()));
  d->resize(Eigen::Index(povm.size()));
  for (std::size_t x = 0; x < povm.size(); ++x) {
    (*p)(Eigen::Index(x)) = (rho_out * povm.element(x).mat()).trace().real();
    (*d)(Eigen::Index(x)) = (del_out * povm.element(x).mat()).trace().real();
  }
}

RealVector probs_at(const ChannelFamily& family, double theta,
                    const Strategy& strategy) {
  RealVector p, d;
  outcome_raw(family.at(theta), family.tangent_at(theta), strategy.probe,
              strategy.povm, &p, &d);
  return p;
}

// One multinomial draw of n outcomes as counts, by conditional binomials.
std::vector<long> multinomial_counts(int n, const RealVector& p,
                                     std::mt19937_64& rng) {
  const int k = int(p.size());
  std::vector<long> counts(std::size_t(k), 0);
  long left = n;
  double mass = 1.0;
  for (int x = 0; x < k - 1 && left > 0; ++x) {
    const double px = std::clamp(p(x) / mass, 0.0, 1.0);
    std::binomial_distribution<long> bin(left, px);
    const long c = bin(rng);
    counts[std::size_t(x)] = c;
    left -= c;
    mass -= p(x);
    if (mass <= 0.0) break;
  }
  counts[std::size_t(k - 1)] += left;
  return counts;
}

struct Likelihood {
  const ChannelFamily* family;
  const Strategy* strategy;
  const std::vector<long>* counts;

  double operator()(double theta) const {
    const RealVector p = probs_at(*family, theta, *strategy);
    double ll = 0.0;
    for (Eigen::Index x = 0; x < p.size(); ++x) {
      const long c = (*counts)[std::size_t(x)];
      if (c == 0) continue;
      if (p(x) <= 0.0) return -1e300;
      ll += double(c) * std::log(p(x));
    }
    return ll;
  }
};

// Grid pre-scan followed by golden-section refinement around the best cell.
double maximize_likelihood(const Likelihood& ll, double lo, double hi,
                           const MleOptions& opts, bool* clipped) {
  const int grid = std::max(opts.grid_points, 8);
  double best_theta = lo;
  double best_val = -kInf;
  const double h = (hi - lo) / (grid - 1);
  for (int g = 0; g < grid; ++g) {
    const double theta = (g == grid - 1) ? hi : lo + g * h;
    const double v = ll(theta);
    if (v > best_val) {
      best_val = v;
      best_theta = theta;
    }
  }
  double a = std::max(lo, best_theta - h);
  double b = std::min(hi, best_theta + h);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = ll(c), fd = ll(d);
  while (b - a > opts.resolution) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = ll(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = ll(d);
    }
  }
  const double theta_hat = 0.5 * (a + b);
  *clipped = (theta_hat - lo <= opts.resolution) || (hi - theta_hat <= opts.resolution);
  return theta_hat;
}

std::pair<double, double> estimation_interval(const ChannelFamily& family,
                                              double theta_true,
                                              const MleOptions& opts) {
  if (opts.lo < opts.hi) return {opts.lo, opts.hi};
  const double lo = std::max(family.theta_lo(), theta_true - 0.5);
  const double hi = std::min(family.theta_hi(), theta_true + 0.5);
  if (!(lo < hi)) {
    throw config_error("estimator: empty theta interval");
  }
  return {lo, hi};
}

}  // namespace

Strategy make_strategy(const ChannelFamily& family, const std::string& probe,
                       const std::string& povm, const MleOptions& mle) {
  const int d_in = family.d_in();
  const int d_out = family.d_out();
  Vector psi;
  int anc = 1;
  if (probe == "bell") {
    psi = max_entangled(d_in);
    anc = d_in;
  } else if (probe == "zero") {
    psi = ket(0, d_in);
  } else if (probe == "plus") {
    if (d_in != 2) throw config_error("probe 'plus' needs a qubit input");
    psi = (ket(0, 2) + ket(1, 2)) / std::sqrt(2.0);
  } else {
    throw config_error("unknown probe preset '" + probe + "'");
  }
  const int out_dim = d_out * anc;
  if (povm == "computational") {
    return Strategy{std::move(psi), Povm::computational(out_dim), mle};
  }
  if (povm == "bell") {
    if (out_dim != 4) throw config_error("povm 'bell' needs a 4-dimensional output");
    Matrix basis(4, 4);
    for (int k = 1; k <= 4; ++k) basis.col(k - 1) = bell_state(k);
    return Strategy{std::move(psi), Povm::projective(basis), mle};
  }
  if (povm == "identity") {
    return Strategy{std::move(psi), Povm::trivial(out_dim), mle};
  }
  throw config_error("unknown povm preset '" + povm + "'");
}

std::pair<ProbVector, SignedVector> outcome_distribution(
    const ChannelFamily& family, double theta, const Strategy& strategy) {
  RealVector p, d;
  outcome_raw(family.at(theta), family.tangent_at(theta), strategy.probe,
              strategy.povm, &p, &d);
  return {ProbVector(std::move(p)), SignedVector(std::move(d))};
}

bool strategy_informative(const ChannelFamily& family, double theta,
                          const Strategy& strategy) {
  const auto [p, d] = outcome_distribution(family, theta, strategy);
  return d.vec().cwiseAbs().sum() > 1e-12;
}

TrialResult run_trials(const ChannelFamily& family, double theta_true,
                       const Strategy& strategy, int n_uses, int trials,
                       std::uint64_t seed) {
  if (n_uses < 1 || trials < 1) {
    throw std::invalid_argument("run_trials: n_uses and trials must be >= 1");
  }
  if (!strategy_informative(family, theta_true, strategy)) {
    throw degenerate_error("strategy carries no parameter information");
  }
  const auto [p, d_unused] = outcome_distribution(family, theta_true, strategy);
  const auto [lo, hi] = estimation_interval(family, theta_true, strategy.estimator);

  TrialResult res;
  res.n_uses = n_uses;
  res.trials = trials;
  res.theta_true = theta_true;
  res.seed = seed;
  res.estimates.assign(std::size_t(trials), 0.0);
  std::vector<unsigned char> clipped_flags(std::size_t(trials), 0);

  parallel_for(trials, [&](int t) {
    std::mt19937_64 rng(derive_seed(seed, std::uint64_t(t)));
    const std::vector<long> counts = multinomial_counts(n_uses, p.vec(), rng);
    const Likelihood ll{&family, &strategy, &counts};
    bool clipped = false;
    res.estimates[std::size_t(t)] =
        maximize_likelihood(ll, lo, hi, strategy.estimator, &clipped);
    clipped_flags[std::size_t(t)] = clipped ? 1 : 0;
  });

  double mean = 0.0, mse = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double est = res.estimates[std::size_t(t)];
    mean += est;
    mse += (est - theta_true) * (est - theta_true);
    res.clipped += clipped_flags[std::size_t(t)];
  }
  res.mean = mean / trials;
  res.mse = mse / trials;
  res.n_times_mse = double(n_uses) * res.mse;
  return res;
}

RateReport rate_scan(const ChannelFamily& family, double theta_true,
                     const Strategy& strategy, const std::vector<int>& n_list,
                     int trials, std::uint64_t seed) {
  if (n_list.empty()) {
    throw std::invalid_argument("rate_scan: empty n list");
  }
  if (!std::is_sorted(n_list.begin(), n_list.end())) {
    throw std::invalid_argument("rate_scan: n list must be ascending");
  }
  RateReport rep;
  if (!strategy_informative(family, theta_true, strategy)) {
    rep.degenerate = true;
    return rep;
  }
  const MetricReport lower =
      g_min(family.at(theta_true), family.tangent_at(theta_true));
  rep.cr_floor = std::isinf(lower.value) ? 0.0 : 1.0 / lower.value;

  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const TrialResult tr = run_trials(family, theta_true, strategy, n_list[i],
                                      trials, derive_seed(seed, 1000 + i));
    rep.rows.push_back(
        RateRow{tr.n_uses, tr.mse, tr.n_times_mse, rep.cr_floor, tr.clipped});
  }

  // Least-squares slope of log MSE vs log n.
  if (rep.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(rep.rows.size());
    for (const auto& row : rep.rows) {
      const double x = std::log(double(row.n));
      const double y = std::log(std::max(row.mse, 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return rep;
}

}  // namespace chanmet
