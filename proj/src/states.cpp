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

#include "chanmet/states.hpp"

#include <cmath>

namespace chanmet {

DensityMatrix::DensityMatrix(Hermitian m) : m_(std::move(m)) {
  if (min_eigenvalue(m_) < -1e-10) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
  if (std::abs(m_.trace_real() - 1.0) > 1e-10) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
}

StateTangent::StateTangent(Hermitian m) : m_(std::move(m)) {
  if (std::abs(m_.trace_real()) > 1e-10) {
    throw std::invalid_argument("StateTangent: trace is not 0");
  }
}

ProbVector::ProbVector(RealVector p) : p_(std::move(p)) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p_.size(); ++i) {
    if (p_(i) < -1e-12) {
      throw std::invalid_argument("ProbVector: negative entry");
    }
    if (p_(i) < 0.0) p_(i) = 0.0;
    sum += p_(i);
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("ProbVector: entries do not sum to 1");
  }
}

SignedVector::SignedVector(RealVector d) : d_(std::move(d)) {
  if (std::abs(d_.sum()) > 1e-12) {
    throw std::invalid_argument("SignedVector: entries do not sum to 0");
  }
}

double classical_fisher(const ProbVector& p, const SignedVector& d) {
  if (p.size() != d.size()) {
    throw std::invalid_argument("classical_fisher: length mismatch");
  }
  constexpr double tol = 1e-12;
  double j = 0.0;
  for (Eigen::Index x = 0; x < p.size(); ++x) {
    const double px = p.vec()(x);
    const double dx = d.vec()(x);
    if (px <= tol) {
      if (std::abs(dx) > tol) return kInf;
      continue;
    }
    j += dx * dx / px;
  }
  return j;
}

SldResult solve_sld(const DensityMatrix& rho, const StateTangent& delta) {
  return solve_sld(rho.herm(), delta.herm());
}

SldResult solve_sld(const Hermitian& rho, const Hermitian& delta) {
  if (rho.dim() != delta.dim()) {
    throw std::invalid_argument("solve_sld: dimension mismatch");
  }
  const EigSystem es = eig_hermitian(rho);
  // Symmetrize the rotated tangent first: division by near-cutoff denominators
  // amplifies its last-ulp asymmetry far beyond the Hermitian gate.
  Matrix d_eig = es.vectors.adjoint() * delta.mat() * es.vectors;
  d_eig = 0.5 * (d_eig + d_eig.adjoint().eval());
  const Eigen::Index n = rho.dim();
  Matrix l_eig = Matrix::Zero(n, n);
  double escape_sq = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double denom = std::max(es.values(i), 0.0) + std::max(es.values(j), 0.0);
      if (denom <= kSupportTol) {
        escape_sq += std::norm(d_eig(i, j));
      } else {
        l_eig(i, j) = 2.0 * d_eig(i, j) / denom;
      }
    }
  }
  const double escape = std::sqrt(escape_sq);
  Matrix l = es.vectors * l_eig * es.vectors.adjoint();
  l = 0.5 * (l + l.adjoint().eval());
  return SldResult{Hermitian(std::move(l)), escape <= kEscapeTol, escape};
}

Hermitian sld(const DensityMatrix& rho, const StateTangent& delta) {
  SldResult r = solve_sld(rho, delta);
  if (!r.support_ok) {
    throw numerical_error("sld: tangent has mass outside the state support");
  }
  return r.l;
}

double sld_fisher(const DensityMatrix& rho, const StateTangent& delta) {
  SldResult r = solve_sld(rho, delta);
  if (!r.support_ok) return kInf;
  return (rho.mat() * r.l.mat() * r.l.mat()).trace().real();
}

double rld_fisher(const DensityMatrix& rho, const StateTangent& delta) {
  return rld_fisher(rho.herm(), delta.herm());
}

double rld_fisher(const Hermitian& rho, const Hermitian& delta) {
  if (rho.dim() != delta.dim()) {
    throw std::invalid_argument("rld_fisher: dimension mismatch");
  }
  const EigSystem es = eig_hermitian(rho);
  const Matrix d_eig = es.vectors.adjoint() * delta.mat() * es.vectors;
  const Eigen::Index n = rho.dim();
  // δ = Lρ is solvable only when δ vanishes on every row/column in ρ's
  // kernel, i.e. δ = πδπ for the support projector π.
  double escape_sq = 0.0;
  double j = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool i_in = es.values(i) > kSupportTol;
    for (Eigen::Index k = 0; k < n; ++k) {
      const bool k_in = es.values(k) > kSupportTol;
      if (i_in && k_in) {
        j += std::norm(d_eig(i, k)) / es.values(k);
      } else {
        escape_sq += std::norm(d_eig(i, k));
      }
    }
  }
  if (std::sqrt(escape_sq) > kEscapeTol) return kInf;
  return j;
}

double measured_fisher(const DensityMatrix& rho, const StateTangent& delta,
                       const Povm& m) {
  if (m.dim() != rho.dim()) {
    throw std::invalid_argument("measured_fisher: POVM dimension mismatch");
  }
  RealVector p(m.size()), d(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) {
    p(Eigen::Index(x)) = (rho.mat() * m.element(x).mat()).trace().real();
    d(Eigen::Index(x)) = (delta.mat() * m.element(x).mat()).trace().real();
  }
  return classical_fisher(ProbVector(std::move(p)), SignedVector(std::move(d)));
}

}  // namespace chanmet
