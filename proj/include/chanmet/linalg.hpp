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

#ifndef CHANMET_LINALG_HPP
#define CHANMET_LINALG_HPP

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chanmet/errors.hpp"

namespace chanmet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Index convention, fixed project-wide: composite spaces are indexed row-major
// with the FIRST tensor factor as the most significant digit, i.e. the basis
// vector |i⟩⊗|k⟩ of H₁⊗H₂ sits at flat index i·dim(H₂)+k.

/// Hermitian matrix. Construction requires max|A - A†| ≤ 1e-12·max(1, max|A|)
/// and then stores the symmetrization (A + A†)/2, so A = A† holds exactly.
class Hermitian {
 public:
  explicit Hermitian(Matrix a);

  const Matrix& mat() const noexcept { return mat_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }
  double trace_real() const { return mat_.trace().real(); }

 private:
  Matrix mat_;
};

/// Eigendecomposition A = V diag(values) V†, eigenvalues ascending,
/// columns of `vectors` orthonormal.
struct EigSystem {
  RealVector values;
  Matrix vectors;
};

EigSystem eig_hermitian(const Hermitian& a);

double min_eigenvalue(const Hermitian& a);

/// Kronecker product, (A⊗B)[(i·rB+k),(j·cB+l)] = A[i,j]·B[k,l].
Matrix kron(const Matrix& a, const Matrix& b);

/// Partial trace of a square matrix on H₁⊗H₂ with dims (d1, d2).
/// keep = 0 traces out the second factor, keep = 1 the first.
Matrix partial_trace(const Matrix& a, int keep, int d1, int d2);

/// Reorders tensor factors: the result's factor slot j carries the input's
/// factor perm[j], applied to rows and columns alike. `dims` lists the factor
/// dimensions of the input in order.
Matrix permute_factors(const Matrix& a, const std::vector<int>& dims,
                       const std::vector<int>& perm);

Matrix identity_matrix(Eigen::Index n);

}  // namespace chanmet

#endif  // CHANMET_LINALG_HPP
