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

#include "chanmet/povm.hpp"

namespace chanmet {

Povm::Povm(std::vector<Hermitian> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw std::invalid_argument("Povm: no elements");
  }
  const Eigen::Index d = elements_.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.dim() != d) {
      throw std::invalid_argument("Povm: mixed element dimensions");
    }
    if (min_eigenvalue(e) < -1e-10) {
      throw std::invalid_argument("Povm: element is not PSD");
    }
    sum += e.mat();
  }
  if ((sum - Matrix::Identity(d, d)).norm() > 1e-10) {
    throw std::invalid_argument("Povm: elements do not sum to identity");
  }
}

Povm Povm::projective(const Matrix& basis) {
  if (basis.rows() != basis.cols()) {
    throw std::invalid_argument("Povm::projective: basis must be square");
  }
  std::vector<Hermitian> els;
  els.reserve(std::size_t(basis.cols()));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    const Vector v = basis.col(k);
    els.emplace_back(Matrix(v * v.adjoint()));
  }
  return Povm(std::move(els));
}

Povm Povm::computational(int dim) {
  return projective(Matrix::Identity(dim, dim));
}

Povm Povm::trivial(int dim) {
  std::vector<Hermitian> els;
  els.emplace_back(Matrix(Matrix::Identity(dim, dim)));
  return Povm(std::move(els));
}

}  // namespace chanmet
