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

#ifndef CHANMET_STATES_HPP
#define CHANMET_STATES_HPP

#include <limits>

#include "chanmet/linalg.hpp"
#include "chanmet/povm.hpp"

namespace chanmet {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Support handling thresholds, shared by the SLD and RLD solvers: eigenvalues
// of ρ at or below kSupportTol count as kernel; tangent mass above kEscapeTol
// on kernel directions signals an infinitely distinguishable direction.
inline constexpr double kSupportTol = 1e-10;
inline constexpr double kEscapeTol = 1e-9;

/// Density operator: PSD within 1e-10, unit trace within 1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(Hermitian m);
  const Matrix& mat() const noexcept { return m_.mat(); }
  const Hermitian& herm() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.dim(); }

 private:
  Hermitian m_;
};

/// Tangent direction at a density operator: Hermitian, traceless within 1e-10.
class StateTangent {
 public:
  explicit StateTangent(Hermitian m);
  const Matrix& mat() const noexcept { return m_.mat(); }
  const Hermitian& herm() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.dim(); }

 private:
  Hermitian m_;
};

/// Probability vector: entries ≥ 0 (tiny negatives up to 1e-12 are clamped),
/// summing to 1 within 1e-12.
class ProbVector {
 public:
  explicit ProbVector(RealVector p);
  const RealVector& vec() const noexcept { return p_; }
  Eigen::Index size() const noexcept { return p_.size(); }

 private:
  RealVector p_;
};

/// Classical tangent: real vector summing to 0 within 1e-12.
class SignedVector {
 public:
  explicit SignedVector(RealVector d);
  const RealVector& vec() const noexcept { return d_; }
  Eigen::Index size() const noexcept { return d_.size(); }

 private:
  RealVector d_;
};

/// Classical Fisher information Σ_{x:p(x)>0} d(x)²/p(x). Returns +∞ when some
/// p(x) ≤ 1e-12 while |d(x)| > 1e-12.
double classical_fisher(const ProbVector& p, const SignedVector& d);

/// SLD solve δ = ½(Lρ + ρL) in ρ's eigenbasis: L_ij = 2δ_ij/(λ_i+λ_j), zeroed
/// where λ_i+λ_j ≤ 1e-10. support_ok is false when δ carries more than 1e-9
/// of Frobenius mass on those zeroed index pairs.
struct SldResult {
  Hermitian l;
  bool support_ok;
  double escape_mass;
};

SldResult solve_sld(const DensityMatrix& rho, const StateTangent& delta);

/// As solve_sld but throws numerical_error on support violation.
Hermitian sld(const DensityMatrix& rho, const StateTangent& delta);

/// SLD Fisher information tr ρL²; +∞ when the support condition fails.
double sld_fisher(const DensityMatrix& rho, const StateTangent& delta);

/// RLD Fisher information tr δρ⁻¹δ with the pseudo-inverse on ρ's support;
/// +∞ when δ has more than 1e-9 norm outside the support.
double rld_fisher(const DensityMatrix& rho, const StateTangent& delta);

// Low-level overloads for optimizer loops; the caller guarantees (ρ, δ) is
// valid local data. Skips the per-call invariant checks of the typed wrappers.
SldResult solve_sld(const Hermitian& rho, const Hermitian& delta);
double rld_fisher(const Hermitian& rho, const Hermitian& delta);

/// Classical Fisher information of the outcome statistics p(x) = tr ρM_x,
/// d(x) = tr δM_x.
double measured_fisher(const DensityMatrix& rho, const StateTangent& delta,
                       const Povm& m);

}  // namespace chanmet

#endif  // CHANMET_STATES_HPP
