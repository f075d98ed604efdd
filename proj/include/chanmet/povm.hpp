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

#ifndef CHANMET_POVM_HPP
#define CHANMET_POVM_HPP

#include <vector>

#include "chanmet/linalg.hpp"

namespace chanmet {

/// Measurement as an explicit element list: each element PSD within 1e-10,
/// elements summing to the identity within 1e-10. Only outcome statistics are
/// modelled; there is no post-measurement state machinery.
class Povm {
 public:
  explicit Povm(std::vector<Hermitian> elements);

  /// Rank-1 projective measurement onto the columns of `basis` (must be unitary).
  static Povm projective(const Matrix& basis);
  static Povm computational(int dim);
  /// The trivial one-outcome measurement {I}.
  static Povm trivial(int dim);

  std::size_t size() const noexcept { return elements_.size(); }
  const Hermitian& element(std::size_t i) const { return elements_.at(i); }
  Eigen::Index dim() const { return elements_.front().dim(); }

 private:
  std::vector<Hermitian> elements_;
};

}  // namespace chanmet

#endif  // CHANMET_POVM_HPP
