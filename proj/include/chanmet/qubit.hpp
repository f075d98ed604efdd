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

#ifndef CHANMET_QUBIT_HPP
#define CHANMET_QUBIT_HPP

#include "chanmet/linalg.hpp"

namespace chanmet {

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Vector ket(int i, int dim) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

/// The four Bell vectors on C²⊗C², k = 1..4:
///   |Bell₁⟩ = (|00⟩+|11⟩)/√2,  |Bell₂⟩ = (|01⟩+|10⟩)/√2,
///   |Bell₃⟩ = (|01⟩−|10⟩)/√2,  |Bell₄⟩ = (|00⟩−|11⟩)/√2.
inline Vector bell_state(int k) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (k) {
    case 1: v(0) = s; v(3) = s; break;
    case 2: v(1) = s; v(2) = s; break;
    case 3: v(1) = s; v(2) = -s; break;
    case 4: v(0) = s; v(3) = -s; break;
    default: throw std::invalid_argument("bell_state: k must be 1..4");
  }
  return v;
}

/// Maximally entangled vector Σᵢ|ii⟩/√d on C^d ⊗ C^d.
inline Vector max_entangled(int d) {
  Vector v = Vector::Zero(Eigen::Index(d) * d);
  for (int i = 0; i < d; ++i) v(Eigen::Index(i) * d + i) = 1.0 / std::sqrt(double(d));
  return v;
}

}  // namespace chanmet

#endif  // CHANMET_QUBIT_HPP
