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

#include "chanmet/channels.hpp"

#include <cmath>

namespace chanmet {

namespace {

void check_choi_dims(const Hermitian& choi, int d_in, int d_out) {
  if (d_in <= 0 || d_out <= 0 ||
      choi.dim() != Eigen::Index(d_in) * d_out) {
    throw std::invalid_argument("Choi matrix does not match (d_in, d_out)");
  }
}

Matrix out_trace(const Matrix& choi, int d_in, int d_out) {
  return partial_trace(choi, 0, d_in, d_out);
}

}  // namespace

CpReport cp_check(const Hermitian& choi, int d_in, int d_out) {
  check_choi_dims(choi, d_in, d_out);
  const double min_eig = min_eigenvalue(choi);
  const double tp_residual =
      (out_trace(choi.mat(), d_in, d_out) - Matrix::Identity(d_in, d_in)).norm();
  return CpReport{min_eig >= -1e-9 && tp_residual <= 1e-9, min_eig, tp_residual};
}

Channel::Channel(int d_in, int d_out, Hermitian choi)
    : d_in_(d_in), d_out_(d_out), choi_(std::move(choi)) {
  const CpReport r = cp_check(choi_, d_in_, d_out_);
  if (!r.is_cptp) {
    throw std::invalid_argument("Channel: Choi matrix is not CPTP (min_eig=" +
                                std::to_string(r.min_eig) + ", tp_residual=" +
                                std::to_string(r.tp_residual) + ")");
  }
}

Channel Channel::identity(int d) {
  Matrix c = Matrix::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      c(Eigen::Index(i) * d + i, Eigen::Index(j) * d + j) = 1.0;
  return Channel(d, d, Hermitian(std::move(c)));
}

ChannelTangent::ChannelTangent(int d_in, int d_out, Hermitian choi)
    : d_in_(d_in), d_out_(d_out), choi_(std::move(choi)) {
  check_choi_dims(choi_, d_in_, d_out_);
  if (out_trace(choi_.mat(), d_in_, d_out_).norm() > 1e-9) {
    throw std::invalid_argument(
        "ChannelTangent: output partial trace does not vanish");
  }
}

ChannelTangent ChannelTangent::zero(int d_in, int d_out) {
  return ChannelTangent(
      d_in, d_out,
      Hermitian(Matrix::Zero(Eigen::Index(d_in) * d_out, Eigen::Index(d_in) * d_out)));
}

Matrix apply_raw(const Matrix& choi, int d_in, int d_out, const Matrix& x) {
  if (x.rows() != d_in || x.cols() != d_in) {
    throw std::invalid_argument("apply_raw: input dimension mismatch");
  }
  Matrix out = Matrix::Zero(d_out, d_out);
  for (int m = 0; m < d_in; ++m) {
    for (int i = 0; i < d_in; ++i) {
      const Complex w = x(m, i);
      if (w == Complex(0, 0)) continue;
      out.noalias() +=
          w * choi.block(Eigen::Index(m) * d_out, Eigen::Index(i) * d_out,
                         d_out, d_out);
    }
  }
  return out;
}

DensityMatrix apply(const Channel& phi, const DensityMatrix& rho) {
  if (rho.dim() != phi.d_in()) {
    throw std::invalid_argument("apply: state dimension mismatch");
  }
  return DensityMatrix(
      Hermitian(apply_raw(phi.choi_mat(), phi.d_in(), phi.d_out(), rho.mat())));
}

StateTangent apply(const Channel& phi, const StateTangent& delta) {
  if (delta.dim() != phi.d_in()) {
    throw std::invalid_argument("apply: tangent dimension mismatch");
  }
  return StateTangent(
      Hermitian(apply_raw(phi.choi_mat(), phi.d_in(), phi.d_out(), delta.mat())));
}

StateTangent apply(const ChannelTangent& dphi, const DensityMatrix& rho) {
  if (rho.dim() != dphi.d_in()) {
    throw std::invalid_argument("apply: state dimension mismatch");
  }
  return StateTangent(
      Hermitian(apply_raw(dphi.choi_mat(), dphi.d_in(), dphi.d_out(), rho.mat())));
}

namespace {

Hermitian adjoint_raw(const Matrix& choi, int d_in, int d_out, const Hermitian& a) {
  if (a.dim() != d_out) {
    throw std::invalid_argument("apply_adjoint: operator dimension mismatch");
  }
  // Φ*(A)[i,j] = Σ_{k,l} C[(j,k),(i,l)] A[l,k] = tr[Φ(|i⟩⟨j|) A].
  Matrix out(d_in, d_in);
  for (int i = 0; i < d_in; ++i) {
    for (int j = 0; j < d_in; ++j) {
      out(i, j) = choi.block(Eigen::Index(j) * d_out, Eigen::Index(i) * d_out,
                             d_out, d_out)
                      .cwiseProduct(a.mat().transpose())
                      .sum();
    }
  }
  return Hermitian(std::move(out));
}

}  // namespace

Hermitian apply_adjoint(const Channel& phi, const Hermitian& a) {
  return adjoint_raw(phi.choi_mat(), phi.d_in(), phi.d_out(), a);
}

Hermitian apply_adjoint(const ChannelTangent& dphi, const Hermitian& a) {
  return adjoint_raw(dphi.choi_mat(), dphi.d_in(), dphi.d_out(), a);
}

namespace {

// Choi of `after ∘ before` from the two Choi matrices: block (i,j) of the
// composite is after(before(|i⟩⟨j|)).
Matrix compose_choi(const Matrix& after, int a_in, int a_out,
                    const Matrix& before, int b_in, int b_out) {
  if (b_out != a_in) {
    throw std::invalid_argument("compose: inner dimensions do not match");
  }
  Matrix out(Eigen::Index(b_in) * a_out, Eigen::Index(b_in) * a_out);
  for (int i = 0; i < b_in; ++i) {
    for (int j = 0; j < b_in; ++j) {
      const Matrix mid =
          before.block(Eigen::Index(i) * b_out, Eigen::Index(j) * b_out,
                       b_out, b_out);
      out.block(Eigen::Index(i) * a_out, Eigen::Index(j) * a_out, a_out, a_out) =
          apply_raw(after, a_in, a_out, mid);
    }
  }
  return out;
}

// Choi of the tensor map: kron gives factor order (in₁, out₁, in₂, out₂);
// regroup to (in₁, in₂, out₁, out₂).
Matrix tensor_choi(const Matrix& a, int a_in, int a_out, const Matrix& b,
                   int b_in, int b_out) {
  return permute_factors(kron(a, b), {a_in, a_out, b_in, b_out}, {0, 2, 1, 3});
}

}  // namespace

Channel compose(const Channel& after, const Channel& before) {
  return Channel(before.d_in(), after.d_out(),
                 Hermitian(compose_choi(after.choi_mat(), after.d_in(),
                                        after.d_out(), before.choi_mat(),
                                        before.d_in(), before.d_out())));
}

ChannelTangent compose(const Channel& after, const ChannelTangent& before) {
  return ChannelTangent(
      before.d_in(), after.d_out(),
      Hermitian(compose_choi(after.choi_mat(), after.d_in(), after.d_out(),
                             before.choi_mat(), before.d_in(), before.d_out())));
}

ChannelTangent compose(const ChannelTangent& after, const Channel& before) {
  return ChannelTangent(
      before.d_in(), after.d_out(),
      Hermitian(compose_choi(after.choi_mat(), after.d_in(), after.d_out(),
                             before.choi_mat(), before.d_in(), before.d_out())));
}

Channel tensor(const Channel& a, const Channel& b) {
  return Channel(a.d_in() * b.d_in(), a.d_out() * b.d_out(),
                 Hermitian(tensor_choi(a.choi_mat(), a.d_in(), a.d_out(),
                                       b.choi_mat(), b.d_in(), b.d_out())));
}

ChannelTangent tensor(const ChannelTangent& a, const Channel& b) {
  return ChannelTangent(a.d_in() * b.d_in(), a.d_out() * b.d_out(),
                        Hermitian(tensor_choi(a.choi_mat(), a.d_in(), a.d_out(),
                                              b.choi_mat(), b.d_in(), b.d_out())));
}

ChannelTangent tensor(const Channel& a, const ChannelTangent& b) {
  return ChannelTangent(a.d_in() * b.d_in(), a.d_out() * b.d_out(),
                        Hermitian(tensor_choi(a.choi_mat(), a.d_in(), a.d_out(),
                                              b.choi_mat(), b.d_in(), b.d_out())));
}

std::pair<Channel, ChannelTangent> n_copy(const Channel& phi,
                                          const ChannelTangent& dphi, int n) {
  if (n < 1) {
    throw std::invalid_argument("n_copy: n must be >= 1");
  }
  if (phi.d_in() != dphi.d_in() || phi.d_out() != dphi.d_out()) {
    throw std::invalid_argument("n_copy: channel/tangent dimension mismatch");
  }
  double dim = 1.0;
  for (int k = 0; k < n; ++k) dim *= double(phi.d_in()) * phi.d_out();
  if (dim > double(kNCopyBudget)) {
    throw budget_error("n_copy: d_in^n * d_out^n exceeds the memory budget");
  }
  if (n == 1) return {phi, dphi};

  Channel power = phi;
  for (int k = 1; k < n; ++k) power = tensor(power, phi);

  // Δ^(n): sum of n tensor words with Δ in slot k and Φ elsewhere.
  Matrix sum = Matrix::Zero(power.choi_mat().rows(), power.choi_mat().cols());
  for (int k = 0; k < n; ++k) {
    bool started = false;
    Matrix term;
    int t_in = 1, t_out = 1;
    for (int s = 0; s < n; ++s) {
      const Matrix& f = (s == k) ? dphi.choi_mat() : phi.choi_mat();
      if (!started) {
        term = f;
        t_in = phi.d_in();
        t_out = phi.d_out();
        started = true;
      } else {
        term = tensor_choi(term, t_in, t_out, f, phi.d_in(), phi.d_out());
        t_in *= phi.d_in();
        t_out *= phi.d_out();
      }
    }
    sum += term;
  }
  ChannelTangent big(power.d_in(), power.d_out(), Hermitian(std::move(sum)));
  return {std::move(power), std::move(big)};
}

}  // namespace chanmet
