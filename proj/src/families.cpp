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

#include "chanmet/families.hpp"

#include <cmath>
#include <limits>

#include "chanmet/qubit.hpp"

namespace chanmet {

namespace {

using nlohmann::json;

constexpr double kUnboundedTheta = 1e6;

// Choi of ρ ↦ UρU†: block (i,j) = (U eᵢ)(U eⱼ)†.
Matrix conjugation_choi(const Matrix& u) {
  const int d = int(u.rows());
  Matrix c(Eigen::Index(d) * d, Eigen::Index(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      c.block(Eigen::Index(i) * d, Eigen::Index(j) * d, d, d) =
          u.col(i) * u.col(j).adjoint();
  return c;
}

// d/dθ of the conjugation Choi for U(θ) with derivative U̇(θ):
// block (i,j) = u̇ᵢuⱼ† + uᵢu̇ⱼ†.
Matrix conjugation_choi_derivative(const Matrix& u, const Matrix& udot) {
  const int d = int(u.rows());
  Matrix c(Eigen::Index(d) * d, Eigen::Index(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      c.block(Eigen::Index(i) * d, Eigen::Index(j) * d, d, d) =
          udot.col(i) * u.col(j).adjoint() + u.col(i) * udot.col(j).adjoint();
  return c;
}

Matrix phase_unitary_matrix(double theta) {
  Matrix u = Matrix::Zero(2, 2);
  u(0, 0) = std::exp(Complex(0, -theta / 2));
  u(1, 1) = std::exp(Complex(0, theta / 2));
  return u;
}

// Intersects {θ : a + b·θ ≥ 0} into [lo, hi].
void intersect_halfline(double a, double b, double* lo, double* hi) {
  if (std::abs(b) < 1e-15) {
    if (a < -1e-12) *lo = 1.0, *hi = -1.0;  // empty
    return;
  }
  const double bound = -a / b;
  if (b > 0) {
    *lo = std::max(*lo, bound);
  } else {
    *hi = std::min(*hi, bound);
  }
}

// Largest t ≥ 0 with ρ + tδ ⪰ 0, by bisection; capped.
double psd_ray(const Matrix& rho, const Matrix& delta, double cap) {
  if (delta.norm() < 1e-14) return cap;
  auto feasible = [&](double t) {
    return min_eigenvalue(Hermitian(rho + t * delta)) >= -1e-12;
  };
  if (feasible(cap)) return cap;
  double lo = 0.0, hi = cap;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

ChannelFamily::ChannelFamily(std::string name, int d_in, int d_out,
                             Evaluator eval, Derivative deriv, double theta_lo,
                             double theta_hi)
    : name_(std::move(name)),
      d_in_(d_in),
      d_out_(d_out),
      eval_(std::move(eval)),
      deriv_(std::move(deriv)),
      theta_lo_(theta_lo),
      theta_hi_(theta_hi) {
  if (theta_lo_ > theta_hi_) {
    throw config_error("ChannelFamily: empty parameter range");
  }
}

ChannelFamily ChannelFamily::renamed(std::string name, double theta_lo,
                                     double theta_hi) const {
  ChannelFamily out(std::move(name), d_in_, d_out_, eval_, deriv_, theta_lo,
                    theta_hi);
  out.mixture_ = mixture_;
  return out;
}

ChannelFamily ChannelFamily::with_fd_derivative(std::string name, int d_in,
                                                int d_out, Evaluator eval,
                                                double theta_lo, double theta_hi,
                                                double step) {
  Evaluator ev = eval;
  Derivative fd = [ev, d_in, d_out, step](double theta) {
    const Matrix plus = ev(theta + step).choi_mat();
    const Matrix minus = ev(theta - step).choi_mat();
    return ChannelTangent(d_in, d_out,
                          Hermitian((plus - minus) / (2.0 * step)));
  };
  return ChannelFamily(std::move(name), d_in, d_out, std::move(eval),
                       std::move(fd), theta_lo, theta_hi);
}

ChannelFamily make_pauli(const std::array<double, 3>& offset,
                         const std::array<double, 3>& rate) {
  const Matrix c_id = conjugation_choi(Matrix::Identity(2, 2));
  const std::array<Matrix, 3> c_pauli = {conjugation_choi(pauli_x()),
                                         conjugation_choi(pauli_y()),
                                         conjugation_choi(pauli_z())};

  double lo = -kUnboundedTheta, hi = kUnboundedTheta;
  for (int i = 0; i < 3; ++i) intersect_halfline(offset[i], rate[i], &lo, &hi);
  intersect_halfline(1.0 - offset[0] - offset[1] - offset[2],
                     -(rate[0] + rate[1] + rate[2]), &lo, &hi);
  if (lo > hi) {
    throw config_error("pauli: probabilities invalid for every theta");
  }

  auto probs = [offset, rate](double theta) {
    std::array<double, 3> p;
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      p[i] = offset[i] + rate[i] * theta;
      if (p[i] < -1e-12) throw config_error("pauli: negative probability");
      p[i] = std::max(p[i], 0.0);
      s += p[i];
    }
    if (s > 1.0 + 1e-12) throw config_error("pauli: probabilities exceed 1");
    return p;
  };

  auto eval = [c_id, c_pauli, probs](double theta) {
    const auto p = probs(theta);
    Matrix c = (1.0 - p[0] - p[1] - p[2]) * c_id;
    for (int i = 0; i < 3; ++i) c += p[i] * c_pauli[i];
    return Channel(2, 2, Hermitian(std::move(c)));
  };
  auto deriv = [c_id, c_pauli, rate](double) {
    Matrix c = Matrix::Zero(4, 4);
    for (int i = 0; i < 3; ++i) c += rate[i] * (c_pauli[i] - c_id);
    return ChannelTangent(2, 2, Hermitian(std::move(c)));
  };
  ChannelFamily fam("pauli", 2, 2, std::move(eval), std::move(deriv), lo, hi);

  // Random Pauli application is exactly a four-branch classical mixture of the
  // fixed conjugation channels; the parameter lives in the weights alone.
  fam.set_canonical_mixture([c_id, c_pauli, probs, rate](double theta) {
    const auto p = probs(theta);
    RealVector q(4), dq(4);
    q << 1.0 - p[0] - p[1] - p[2], p[0], p[1], p[2];
    dq << -(rate[0] + rate[1] + rate[2]), rate[0], rate[1], rate[2];
    std::vector<Channel> branches;
    branches.emplace_back(2, 2, Hermitian(c_id));
    for (int i = 0; i < 3; ++i) branches.emplace_back(2, 2, Hermitian(c_pauli[i]));
    return MixtureSimulation{ProbVector(std::move(q)), SignedVector(std::move(dq)),
                             std::move(branches)};
  });
  return fam;
}

ChannelFamily make_bitflip() {
  return make_pauli({0, 0, 0}, {1, 0, 0}).renamed("bitflip", 0.0, 1.0);
}

ChannelFamily make_phase_unitary() {
  auto eval = [](double theta) {
    return Channel(2, 2, Hermitian(conjugation_choi(phase_unitary_matrix(theta))));
  };
  auto deriv = [](double theta) {
    const Matrix u = phase_unitary_matrix(theta);
    const Matrix udot = Complex(0, -0.5) * (pauli_z() * u);
    return ChannelTangent(2, 2, Hermitian(conjugation_choi_derivative(u, udot)));
  };
  const double pi = std::acos(-1.0);
  return ChannelFamily("phase_unitary", 2, 2, std::move(eval), std::move(deriv),
                       -pi, pi);
}

ChannelFamily make_depolarized_phase(double r) {
  if (r < 0.0 || r > 1.0) {
    throw config_error("depolarized_phase: r must lie in [0, 1]");
  }
  // Choi of ρ ↦ (I/2)·tr ρ is I⊗I/2.
  const Matrix c_depol = 0.5 * Matrix::Identity(4, 4);
  auto eval = [r, c_depol](double theta) {
    const Matrix c_u = conjugation_choi(phase_unitary_matrix(theta));
    return Channel(2, 2, Hermitian((1.0 - r) * c_u + r * c_depol));
  };
  auto deriv = [r](double theta) {
    const Matrix u = phase_unitary_matrix(theta);
    const Matrix udot = Complex(0, -0.5) * (pauli_z() * u);
    return ChannelTangent(
        2, 2, Hermitian((1.0 - r) * conjugation_choi_derivative(u, udot)));
  };
  const double pi = std::acos(-1.0);
  return ChannelFamily("depolarized_phase", 2, 2, std::move(eval),
                       std::move(deriv), -pi, pi);
}

ChannelFamily make_constant_state(const DensityMatrix& rho,
                                  const StateTangent& delta) {
  if (rho.dim() != delta.dim()) {
    throw config_error("constant_state: state/tangent dimension mismatch");
  }
  const int d = int(rho.dim());
  const Matrix rho_m = rho.mat();
  const Matrix del_m = delta.mat();
  const double hi = psd_ray(rho_m, del_m, kUnboundedTheta);
  const double lo = -psd_ray(rho_m, -del_m, kUnboundedTheta);
  auto eval = [d, rho_m, del_m](double theta) {
    return Channel(d, d,
                   Hermitian(kron(Matrix::Identity(d, d), rho_m + theta * del_m)));
  };
  auto deriv = [d, del_m](double) {
    return ChannelTangent(d, d, Hermitian(kron(Matrix::Identity(d, d), del_m)));
  };
  return ChannelFamily("constant_state", d, d, std::move(eval), std::move(deriv),
                       lo, hi);
}

ChannelFamily make_classical_finite(const RealMatrix& base,
                                    const RealMatrix& rate) {
  const int k_in = int(base.rows());
  const int k_out = int(base.cols());
  if (k_in == 0 || k_out == 0 || rate.rows() != k_in || rate.cols() != k_out) {
    throw config_error("classical_finite: base/rate shape mismatch");
  }
  for (int x = 0; x < k_in; ++x) {
    if (std::abs(base.row(x).sum() - 1.0) > 1e-12) {
      throw config_error("classical_finite: base rows must sum to 1");
    }
    if (std::abs(rate.row(x).sum()) > 1e-12) {
      throw config_error("classical_finite: rate rows must sum to 0");
    }
  }
  double lo = -kUnboundedTheta, hi = kUnboundedTheta;
  for (int x = 0; x < k_in; ++x)
    for (int y = 0; y < k_out; ++y)
      intersect_halfline(base(x, y), rate(x, y), &lo, &hi);
  if (lo > hi) {
    throw config_error("classical_finite: no valid theta");
  }

  auto choi_of = [k_in, k_out](const RealMatrix& rows) {
    Matrix c = Matrix::Zero(Eigen::Index(k_in) * k_out, Eigen::Index(k_in) * k_out);
    for (int x = 0; x < k_in; ++x)
      for (int y = 0; y < k_out; ++y)
        c(Eigen::Index(x) * k_out + y, Eigen::Index(x) * k_out + y) = rows(x, y);
    return c;
  };
  auto eval = [base, rate, choi_of, k_in, k_out](double theta) {
    RealMatrix rows = base + theta * rate;
    if (rows.minCoeff() < -1e-12) {
      throw config_error("classical_finite: negative transition probability");
    }
    return Channel(k_in, k_out, Hermitian(choi_of(rows)));
  };
  auto deriv = [rate, choi_of, k_in, k_out](double) {
    return ChannelTangent(k_in, k_out, Hermitian(choi_of(rate)));
  };
  return ChannelFamily("classical_finite", k_in, k_out, std::move(eval),
                       std::move(deriv), lo, hi);
}

namespace {

std::array<double, 3> triple_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 3) {
    throw config_error(std::string("pauli: params.") + key +
                       " must be an array of 3 numbers");
  }
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = j.at(key).at(i).get<double>();
  return out;
}

RealMatrix real_matrix_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty()) {
    throw config_error(std::string("classical_finite: params.") + key +
                       " must be a nonempty array of rows");
  }
  const auto& rows = j.at(key);
  const int r = int(rows.size());
  const int c = int(rows.at(0).size());
  RealMatrix m(r, c);
  for (int x = 0; x < r; ++x) {
    if (int(rows.at(x).size()) != c) {
      throw config_error("classical_finite: ragged rows");
    }
    for (int y = 0; y < c; ++y) m(x, y) = rows.at(x).at(y).get<double>();
  }
  return m;
}

Matrix complex_matrix_from_json(const json& entries, int rows, int cols,
                                const char* what) {
  if (!entries.is_array() || int(entries.size()) != rows * cols) {
    throw config_error(std::string(what) + ": entry count mismatch");
  }
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const auto& e = entries.at(std::size_t(i) * cols + j);
      if (!e.is_array() || e.size() != 2) {
        throw config_error(std::string(what) + ": entries must be [re, im] pairs");
      }
      m(i, j) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

json complex_matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return entries;
}

}  // namespace

ChannelFamily family_catalog(const std::string& name, const json& params) {
  if (name == "pauli") {
    return make_pauli(triple_from_json(params, "offset"),
                      triple_from_json(params, "rate"));
  }
  if (name == "bitflip") return make_bitflip();
  if (name == "phase_unitary") return make_phase_unitary();
  if (name == "depolarized_phase") {
    if (!params.contains("r")) {
      throw config_error("depolarized_phase: missing params.r");
    }
    return make_depolarized_phase(params.at("r").get<double>());
  }
  if (name == "constant_state") {
    if (!params.contains("dim") || !params.contains("rho") ||
        !params.contains("delta")) {
      throw config_error("constant_state: need params.dim, params.rho, params.delta");
    }
    const int d = params.at("dim").get<int>();
    if (d <= 0) throw config_error("constant_state: params.dim must be positive");
    DensityMatrix rho(
        Hermitian(complex_matrix_from_json(params.at("rho"), d, d, "rho")));
    StateTangent delta(
        Hermitian(complex_matrix_from_json(params.at("delta"), d, d, "delta")));
    return make_constant_state(rho, delta);
  }
  if (name == "classical_finite") {
    if (params.contains("preset")) {
      const std::string preset = params.at("preset").get<std::string>();
      if (preset == "bsc") {
        RealMatrix base(2, 2), rate(2, 2);
        base << 1, 0, 0, 1;
        rate << -1, 1, 1, -1;
        return make_classical_finite(base, rate);
      }
      throw config_error("classical_finite: unknown preset '" + preset + "'");
    }
    return make_classical_finite(real_matrix_from_json(params, "base"),
                                 real_matrix_from_json(params, "rate"));
  }
  throw config_error("unknown family '" + name + "'");
}

json channel_to_json(const Channel& phi) {
  return json{{"choi", complex_matrix_to_json(phi.choi_mat())},
              {"d_in", phi.d_in()},
              {"d_out", phi.d_out()}};
}

Channel channel_from_json(const json& j) {
  if (!j.contains("choi") || !j.contains("d_in") || !j.contains("d_out")) {
    throw config_error("channel spec: need fields choi, d_in, d_out");
  }
  const int d_in = j.at("d_in").get<int>();
  const int d_out = j.at("d_out").get<int>();
  if (d_in <= 0 || d_out <= 0) {
    throw config_error("channel spec: dimensions must be positive");
  }
  const int d = d_in * d_out;
  return Channel(d_in, d_out,
                 Hermitian(complex_matrix_from_json(j.at("choi"), d, d, "choi")));
}

json tangent_to_json(const ChannelTangent& dphi) {
  return json{{"choi", complex_matrix_to_json(dphi.choi_mat())},
              {"d_in", dphi.d_in()},
              {"d_out", dphi.d_out()}};
}

ChannelTangent tangent_from_json(const json& j) {
  if (!j.contains("choi") || !j.contains("d_in") || !j.contains("d_out")) {
    throw config_error("tangent spec: need fields choi, d_in, d_out");
  }
  const int d_in = j.at("d_in").get<int>();
  const int d_out = j.at("d_out").get<int>();
  if (d_in <= 0 || d_out <= 0) {
    throw config_error("tangent spec: dimensions must be positive");
  }
  const int d = d_in * d_out;
  return ChannelTangent(
      d_in, d_out, Hermitian(complex_matrix_from_json(j.at("choi"), d, d, "choi")));
}

FamilySpec family_from_json(const json& j) {
  if (!j.contains("name")) {
    throw config_error("family spec: missing field 'name'");
  }
  const json params = j.contains("params") ? j.at("params") : json::object();
  ChannelFamily fam = family_catalog(j.at("name").get<std::string>(), params);
  const double theta = j.contains("theta") ? j.at("theta").get<double>() : 0.0;
  return FamilySpec{std::move(fam), theta};
}

}  // namespace chanmet
