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

#ifndef CHANMET_CHANNELS_HPP
#define CHANMET_CHANNELS_HPP

#include <utility>

#include "chanmet/states.hpp"

namespace chanmet {

// Choi convention, fixed project-wide:
//   C = Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|),
// input factor first, tr C = d_in. Φ is CP iff C ⪰ 0 and trace-preserving iff
// the partial trace over the output (second) factor equals I_{d_in}.

struct CpReport {
  bool is_cptp;
  double min_eig;      // smallest eigenvalue of the Choi matrix
  double tp_residual;  // ‖tr_out C − I‖_F
};

/// Membership test for the channel set: CP within 1e-9, TP within 1e-9.
CpReport cp_check(const Hermitian& choi, int d_in, int d_out);

/// CPTP map stored as its Choi matrix; invariants checked at construction.
class Channel {
 public:
  Channel(int d_in, int d_out, Hermitian choi);
  static Channel identity(int d);

  int d_in() const noexcept { return d_in_; }
  int d_out() const noexcept { return d_out_; }
  const Hermitian& choi() const noexcept { return choi_; }
  const Matrix& choi_mat() const noexcept { return choi_.mat(); }

 private:
  int d_in_, d_out_;
  Hermitian choi_;
};

/// Tangent direction at a channel, in Choi form: Hermitian with vanishing
/// partial trace over the output factor (derivative of trace preservation).
class ChannelTangent {
 public:
  ChannelTangent(int d_in, int d_out, Hermitian choi);
  static ChannelTangent zero(int d_in, int d_out);

  int d_in() const noexcept { return d_in_; }
  int d_out() const noexcept { return d_out_; }
  const Hermitian& choi() const noexcept { return choi_; }
  const Matrix& choi_mat() const noexcept { return choi_.mat(); }

 private:
  int d_in_, d_out_;
  Hermitian choi_;
};

/// Linear action on an arbitrary matrix: X ↦ tr_in[(Xᵀ⊗I)·C].
Matrix apply_raw(const Matrix& choi, int d_in, int d_out, const Matrix& x);

DensityMatrix apply(const Channel& phi, const DensityMatrix& rho);
StateTangent apply(const Channel& phi, const StateTangent& delta);
StateTangent apply(const ChannelTangent& dphi, const DensityMatrix& rho);

/// Heisenberg-picture adjoint: tr[Φ(ρ)A] = tr[ρ Φ*(A)] for all ρ.
Hermitian apply_adjoint(const Channel& phi, const Hermitian& a);
Hermitian apply_adjoint(const ChannelTangent& dphi, const Hermitian& a);

/// Composition `after ∘ before`; tangent overloads differentiate one factor.
Channel compose(const Channel& after, const Channel& before);
ChannelTangent compose(const Channel& after, const ChannelTangent& before);
ChannelTangent compose(const ChannelTangent& after, const Channel& before);

/// Tensor product with input factors grouped first: in₁in₂ → out₁out₂.
Channel tensor(const Channel& a, const Channel& b);
ChannelTangent tensor(const ChannelTangent& a, const Channel& b);
ChannelTangent tensor(const Channel& a, const ChannelTangent& b);

/// Largest d_in^n·d_out^n accepted by n_copy (qubit channels up to n = 4).
inline constexpr long kNCopyBudget = 256;

/// (Φ^{⊗n}, Δ^{(n)}) with Δ^{(n)} = Σ_k Φ^{⊗k} ⊗ Δ ⊗ Φ^{⊗(n−1−k)}.
std::pair<Channel, ChannelTangent> n_copy(const Channel& phi,
                                          const ChannelTangent& dphi, int n);

}  // namespace chanmet

#endif  // CHANMET_CHANNELS_HPP
