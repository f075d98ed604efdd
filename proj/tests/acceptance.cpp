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

// End-to-end acceptance suite. Each criterion prints one pass/fail line with
// its headline numbers and wall time; the process exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chanmet/estim.hpp"
#include "chanmet/metrics.hpp"
#include "chanmet/qubit.hpp"
#include "support/generators.hpp"

using namespace chanmet;
namespace tg = chanmet::testing;

namespace {

struct Criterion {
  std::string label;
  double time_limit_s;
  std::function<bool(std::string*)> body;
};

bool leq_with_inf(double a, double b, double tol_rel) {
  if (std::isinf(b)) return true;  // anything ≤ +inf
  if (std::isinf(a)) return false;
  return a <= b + tol_rel * std::max(1.0, std::abs(b));
}

double rel_err(double value, double target) {
  return std::abs(value - target) / std::max(1.0, std::abs(target));
}

// --- criterion bodies --------------------------------------------------------

bool pauli_equality(std::string* detail) {
  bool ok = true;
  std::string txt;
  for (double theta : {0.05, 0.1, 0.3}) {
    const ChannelFamily bf = make_bitflip();
    const Channel phi = bf.at(theta);
    const ChannelTangent dphi = bf.tangent_at(theta);
    const double expect = 1.0 / (theta * (1.0 - theta));
    const double lower = g_min(phi, dphi).value;
    const auto sim = bf.canonical_mixture(theta);
    const double upper = sim ? mixture_bound(*sim, phi, dphi) : -1.0;
    const bool here = std::abs(lower - expect) <= 1e-3 * expect &&
                      std::abs(upper - expect) <= 1e-3 * expect;
    ok = ok && here;
    char buf[96];
    std::snprintf(buf, sizeof(buf), " θ=%.2f: g_min=%.4f mix=%.4f exp=%.4f;",
                  theta, lower, upper, expect);
    txt += buf;
  }
  *detail = txt;
  return ok;
}

bool sandwich_ordering(std::string* detail) {
  std::vector<std::pair<std::string, ChannelFamily>> fams;
  fams.emplace_back("bitflip", make_bitflip());
  fams.emplace_back("pauli", make_pauli({0.1, 0.05, 0.05}, {0.3, 0.1, -0.05}));
  fams.emplace_back("phase_unitary", make_phase_unitary());
  fams.emplace_back("depolarized_phase", make_depolarized_phase(0.1));
  {
    std::mt19937_64 rng(61);
    fams.emplace_back("constant_state",
                      make_constant_state(tg::random_density(2, rng),
                                          tg::random_tangent(2, rng)));
  }
  fams.emplace_back("classical_bsc",
                    family_catalog("classical_finite",
                                   nlohmann::json{{"preset", "bsc"}}));
  const std::vector<double> thetas = {0.1, 0.1, 0.3, 0.2, 0.0, 0.1};

  GminOptions gopts;
  GrOptions ropts;
  int checked = 0, failed = 0;
  auto check_one = [&](const std::string& name, const Channel& phi,
                       const ChannelTangent& dphi,
                       const std::optional<MixtureSimulation>& mix) {
    const double lo = g_min(phi, dphi, gopts).value;
    const double mid = g_r_output(phi, dphi, ropts).value;
    const double hi = g_max_upper(phi, dphi, mix).value;
    ++checked;
    if (!(leq_with_inf(lo, mid, 1e-4) && leq_with_inf(mid, hi, 1e-4))) {
      ++failed;
      std::fprintf(stderr, "    sandwich violated for %s: %g %g %g\n",
                   name.c_str(), lo, mid, hi);
    }
  };
  for (std::size_t i = 0; i < fams.size(); ++i) {
    const double theta = thetas[i];
    const Channel phi = fams[i].second.at(theta);
    const ChannelTangent dphi = fams[i].second.tangent_at(theta);
    check_one(fams[i].first, phi, dphi, fams[i].second.canonical_mixture(theta));
  }
  for (int k = 0; k < 50; ++k) {
    const ChannelFamily fam = tg::random_interior_family(2, 2, 9000 + k);
    check_one("random#" + std::to_string(k), fam.at(0.0), fam.tangent_at(0.0),
              std::nullopt);
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), " %d families, %d violations", checked, failed);
  *detail = buf;
  return failed == 0;
}

bool scaling_divergence_vs_collapse(std::string* detail) {
  bool ok = true;
  std::string txt = " phase_unitary g_min/n:";
  const std::vector<ScalingRow> unitary =
      parallel_scaling(make_phase_unitary(), 0.0, 3);
  for (const auto& row : unitary) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), " %.4f", row.g_min_over_n);
    txt += buf;
    ok = ok && std::abs(row.g_min_over_n - double(row.n)) <= 1e-3 * row.n;
  }

  const ChannelFamily dp = make_depolarized_phase(0.1);
  const GmaxUpper bound = g_max_upper(dp.at(0.0), dp.tangent_at(0.0));
  ok = ok && bound.eps > 0.0 && std::isfinite(bound.value);
  const std::vector<ScalingRow> noisy = parallel_scaling(dp, 0.0, 3);
  txt += "; depolarized g_min/n:";
  for (const auto& row : noisy) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), " %.4f", row.g_min_over_n);
    txt += buf;
    ok = ok && row.g_min_over_n <= bound.value + 1e-3 * bound.value;
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), " <= eps^-2=%.4f", bound.value);
  txt += buf;
  *detail = txt;
  return ok;
}

bool cp_ball_certificate(std::string* detail) {
  const ChannelFamily bf = make_bitflip();
  const Channel phi = bf.at(0.1);
  const ChannelTangent dphi = bf.tangent_at(0.1);
  const CpBall ball = cp_ball_radius(phi, dphi);
  const Matrix& c = phi.choi_mat();
  const Matrix& d = dphi.choi_mat();
  const double lo_plus = min_eigenvalue(Hermitian(c + ball.eps * d));
  const double lo_minus = min_eigenvalue(Hermitian(c - ball.eps * d));
  const double pushed =
      std::min(min_eigenvalue(Hermitian(c + 1.01 * ball.eps * d)),
               min_eigenvalue(Hermitian(c - 1.01 * ball.eps * d)));
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                " eps=%.9f endpoints(min_eig)=%.2e/%.2e pushed=%.2e", ball.eps,
                lo_plus, lo_minus, pushed);
  *detail = buf;
  return std::abs(ball.eps - 0.1) <= 1e-6 && lo_plus >= -1e-9 &&
         lo_minus >= -1e-9 && pushed < -1e-10;
}

bool cramer_rao_desk_scale(std::string* detail) {
  const ChannelFamily bf = make_bitflip();
  const Strategy s = make_strategy(bf, "zero", "computational");
  const TrialResult res = run_trials(bf, 0.1, s, 1000, 2000, 7);
  const double floor = 0.09;
  const bool band_ok =
      res.n_times_mse >= 0.9 * floor && res.n_times_mse <= 1.15 * floor;

  const RateReport rep = rate_scan(bf, 0.1, s, {250, 500, 1000, 2000}, 2000, 7);
  const bool slope_ok = std::abs(rep.slope + 1.0) <= 0.15;
  char buf[96];
  std::snprintf(buf, sizeof(buf), " n*mse=%.5f (floor %.3f), slope=%.3f",
                res.n_times_mse, floor, rep.slope);
  *detail = buf;
  return band_ok && slope_ok;
}

bool state_channel_consistency(std::string* detail) {
  int failed = 0;
  for (int k = 0; k < 20; ++k) {
    std::mt19937_64 rng(4000 + k);
    const DensityMatrix rho = tg::random_density(2, rng);
    const StateTangent delta = tg::random_tangent(2, rng);
    const ChannelFamily fam = make_constant_state(rho, delta);
    const Channel phi = fam.at(0.0);
    const ChannelTangent dphi = fam.tangent_at(0.0);

    const double js = sld_fisher(rho, delta);
    const double jr = rld_fisher(rho, delta);
    const double lo = g_min(phi, dphi).value;
    const double hi = g_r_output(phi, dphi).value;
    if (rel_err(lo, js) > 1e-4 || rel_err(hi, jr) > 1e-4) {
      ++failed;
      std::fprintf(stderr, "    instance %d: g_min=%g J^S=%g g_r=%g J^R=%g\n", k,
                   lo, js, hi, jr);
    }
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), " 20 instances, %d failures", failed);
  *detail = buf;
  return failed == 0;
}

bool property_suites(std::string* detail) {
  std::string txt;
  bool ok = true;
  GminOptions opts;
  opts.restarts = 8;

  // Post-composition monotonicity.
  {
    std::mt19937_64 rng(77);
    int bad = 0;
    for (int i = 0; i < 10; ++i) {
      const ChannelFamily fam = tg::random_interior_family(2, 2, 500 + i);
      const Channel phi = fam.at(0.0);
      const ChannelTangent dphi = fam.tangent_at(0.0);
      const Channel post = tg::random_interior_channel(2, 2, rng);
      const double before = g_min(phi, dphi, opts).value;
      const double after =
          g_min(compose(post, phi), compose(post, dphi), opts).value;
      if (!(after <= before + 1e-4 * std::max(1.0, before))) ++bad;
    }
    ok = ok && bad == 0;
    txt += " post-comp:" + std::to_string(10 - bad) + "/10";
  }

  // Ancilla-extension invariance.
  {
    int bad = 0;
    for (int i = 0; i < 5; ++i) {
      const ChannelFamily fam = tg::random_interior_family(2, 2, 600 + i);
      const Channel phi = fam.at(0.0);
      const ChannelTangent dphi = fam.tangent_at(0.0);
      const double base = g_min(phi, dphi, opts).value;
      const Channel id = Channel::identity(2);
      const double ext = g_min(tensor(phi, id), tensor(dphi, id), opts).value;
      if (rel_err(ext, base) > 1e-4) ++bad;
    }
    ok = ok && bad == 0;
    txt += " ancilla:" + std::to_string(5 - bad) + "/5";
  }

  // Quadratic tangent scaling.
  {
    int bad = 0;
    for (int i = 0; i < 3; ++i) {
      const ChannelFamily fam = tg::random_interior_family(2, 2, 700 + i);
      const Channel phi = fam.at(0.0);
      const ChannelTangent dphi = fam.tangent_at(0.0);
      const ChannelTangent scaled(2, 2, Hermitian(Matrix(2.0 * dphi.choi_mat())));
      const double base = g_min(phi, dphi, opts).value;
      const double big = g_min(phi, scaled, opts).value;
      if (std::abs(big - 4.0 * base) > 1e-6 * std::max(1.0, 4.0 * base)) ++bad;
    }
    ok = ok && bad == 0;
    txt += " scale:" + std::to_string(3 - bad) + "/3";
  }

  // Seesaw monotone ascent.
  {
    int bad = 0;
    for (int i = 0; i < 5; ++i) {
      const ChannelFamily fam = tg::random_interior_family(2, 2, 800 + i);
      const MetricReport rep = g_min(fam.at(0.0), fam.tangent_at(0.0), opts);
      for (std::size_t t = 1; t < rep.ascent.size(); ++t) {
        if (rep.ascent[t] <
            rep.ascent[t - 1] - 1e-12 * std::max(1.0, std::abs(rep.ascent[t]))) {
          ++bad;
          break;
        }
      }
    }
    ok = ok && bad == 0;
    txt += " ascent:" + std::to_string(5 - bad) + "/5";
  }

  // Finite-difference tangent oracles across the catalog.
  {
    std::vector<std::pair<ChannelFamily, double>> cases;
    cases.emplace_back(make_bitflip(), 0.3);
    cases.emplace_back(make_phase_unitary(), 0.7);
    cases.emplace_back(make_depolarized_phase(0.15), 0.4);
    cases.emplace_back(make_pauli({0.1, 0.05, 0.05}, {0.3, 0.1, -0.05}), 0.2);
    int bad = 0;
    for (const auto& [fam, theta] : cases) {
      const Matrix analytic = fam.tangent_at(theta).choi_mat();
      const Matrix fd = tg::fd_choi_derivative(fam, theta);
      if ((analytic - fd).norm() > 1e-6 * std::max(1.0, analytic.norm())) ++bad;
    }
    ok = ok && bad == 0;
    txt += " fd:" + std::to_string(int(cases.size()) - bad) + "/" +
           std::to_string(cases.size());
  }

  *detail = txt;
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 Pauli equality g_min = mixture = 1/(th(1-th))", 10.0, pauli_equality},
      {"2 sandwich g_min <= g_r <= g_max_upper", 120.0, sandwich_ordering},
      {"3 unitary divergence vs noise collapse (n<=3)", 300.0,
       scaling_divergence_vs_collapse},
      {"4 CP-ball certificate for bitflip(0.1)", 30.0, cp_ball_certificate},
      {"5 Cramer-Rao bound at desk scale", 60.0, cramer_rao_desk_scale},
      {"6 state-channel consistency (J^S, J^R)", 120.0,
       state_channel_consistency},
      {"7 property suites: monotonicity/extension/scaling/ascent/fd", 120.0,
       property_suites},
  };

  int failures = 0;
  for (auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(&detail);
    } catch (const std::exception& e) {
      detail = std::string(" exception: ") + e.what();
      ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_time = secs <= c.time_limit_s;
    if (!in_time) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), " [over %0.fs budget]", c.time_limit_s);
      detail += buf;
    }
    const bool pass = ok && in_time;
    std::printf("[%s] criterion %s (%.1fs)%s\n", pass ? "PASS" : "FAIL",
                c.label.c_str(), secs, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
