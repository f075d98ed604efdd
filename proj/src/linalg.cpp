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

#include "chanmet/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace chanmet {

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

Hermitian::Hermitian(Matrix a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("Hermitian: matrix must be square and nonempty");
  }
  if (!a.allFinite()) {
    throw numerical_error("Hermitian: non-finite entries");
  }
  const double asym = max_abs(a - a.adjoint());
  if (asym > 1e-12 * std::max(1.0, max_abs(a))) {
    throw std::invalid_argument("Hermitian: input is not Hermitian within tolerance");
  }
  mat_ = 0.5 * (a + a.adjoint().eval());
}

EigSystem eig_hermitian(const Hermitian& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat());
  if (solver.info() != Eigen::Success) {
    throw numerical_error("eig_hermitian: solver did not converge");
  }
  return EigSystem{solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Hermitian& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("min_eigenvalue: solver did not converge");
  }
  return solver.eigenvalues()(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& a, int keep, int d1, int d2) {
  if (d1 <= 0 || d2 <= 0 || a.rows() != a.cols() ||
      a.rows() != Eigen::Index(d1) * d2) {
    throw std::invalid_argument("partial_trace: dimension mismatch");
  }
  if (keep != 0 && keep != 1) {
    throw std::invalid_argument("partial_trace: keep must be 0 or 1");
  }
  if (keep == 0) {
    Matrix out = Matrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k)
          out(i, j) += a(Eigen::Index(i) * d2 + k, Eigen::Index(j) * d2 + k);
    return out;
  }
  Matrix out = Matrix::Zero(d2, d2);
  for (int k = 0; k < d2; ++k)
    for (int l = 0; l < d2; ++l)
      for (int i = 0; i < d1; ++i)
        out(k, l) += a(Eigen::Index(i) * d2 + k, Eigen::Index(i) * d2 + l);
  return out;
}

Matrix permute_factors(const Matrix& a, const std::vector<int>& dims,
                       const std::vector<int>& perm) {
  const size_t k = dims.size();
  if (perm.size() != k) {
    throw std::invalid_argument("permute_factors: dims/perm size mismatch");
  }
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("permute_factors: nonpositive dim");
    total *= d;
  }
  if (a.rows() != total || a.cols() != total) {
    throw std::invalid_argument("permute_factors: matrix does not match dims");
  }
  std::vector<bool> seen(k, false);
  for (int p : perm) {
    if (p < 0 || size_t(p) >= k || seen[p]) {
      throw std::invalid_argument("permute_factors: perm is not a bijection");
    }
    seen[p] = true;
  }

  // Map each old flat index to its new position. Digits are extracted with the
  // first factor most significant; the new slot j carries old digit perm[j].
  std::vector<Eigen::Index> new_index(total);
  std::vector<int> digits(k);
  for (Eigen::Index r = 0; r < total; ++r) {
    Eigen::Index rest = r;
    for (size_t f = k; f-- > 0;) {
      digits[f] = int(rest % dims[f]);
      rest /= dims[f];
    }
    Eigen::Index out = 0;
    for (size_t j = 0; j < k; ++j) {
      out = out * dims[perm[j]] + digits[perm[j]];
    }
    new_index[r] = out;
  }

  Matrix b(total, total);
  for (Eigen::Index r = 0; r < total; ++r)
    for (Eigen::Index c = 0; c < total; ++c)
      b(new_index[r], new_index[c]) = a(r, c);
  return b;
}

Matrix identity_matrix(Eigen::Index n) { return Matrix::Identity(n, n); }

}  // namespace chanmet
