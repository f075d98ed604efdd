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

#ifndef CHANMET_FAMILIES_HPP
#define CHANMET_FAMILIES_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "chanmet/channels.hpp"
#include "chanmet/mixture.hpp"

namespace chanmet {

/// One-parameter channel family θ ↦ Φ_θ with a derivative θ ↦ dΦ_θ/dθ,
/// either analytic or by central finite difference.
class ChannelFamily {
 public:
  using Evaluator = std::function<Channel(double)>;
  using Derivative = std::function<ChannelTangent(double)>;

  ChannelFamily(std::string name, int d_in, int d_out, Evaluator eval,
                Derivative deriv, double theta_lo, double theta_hi);

  /// Derivative by central difference of the Choi matrix at the given step.
  static ChannelFamily with_fd_derivative(std::string name, int d_in, int d_out,
                                          Evaluator eval, double theta_lo,
                                          double theta_hi, double step = 1e-5);

  Channel at(double theta) const { return eval_(theta); }
  ChannelTangent tangent_at(double theta) const { return deriv_(theta); }

  const std::string& name() const noexcept { return name_; }
  int d_in() const noexcept { return d_in_; }
  int d_out() const noexcept { return d_out_; }
  double theta_lo() const noexcept { return theta_lo_; }
  double theta_hi() const noexcept { return theta_hi_; }

  /// Families whose parameter enters only through classical branch weights
  /// (the Pauli catalog entries) expose their natural tangent simulation here;
  /// others return nullopt.
  using MixtureFn = std::function<MixtureSimulation(double)>;
  void set_canonical_mixture(MixtureFn fn) { mixture_ = std::move(fn); }
  std::optional<MixtureSimulation> canonical_mixture(double theta) const {
    if (!mixture_) return std::nullopt;
    return mixture_(theta);
  }

  /// Clone under a new name and parameter range, keeping the maps.
  ChannelFamily renamed(std::string name, double theta_lo, double theta_hi) const;

 private:
  std::string name_;
  int d_in_, d_out_;
  Evaluator eval_;
  Derivative deriv_;
  double theta_lo_, theta_hi_;
  MixtureFn mixture_;
};

/// Random Pauli application with affine probabilities p_i(θ) = offset_i + rate_i·θ:
///   ρ ↦ (1−Σp)ρ + p_x XρX + p_y YρY + p_z ZρZ.
ChannelFamily make_pauli(const std::array<double, 3>& offset,
                         const std::array<double, 3>& rate);

/// pauli(θ, 0, 0): ρ ↦ (1−θ)ρ + θXρX, θ ∈ [0, 1].
ChannelFamily make_bitflip();

/// ρ ↦ e^{−iθZ/2} ρ e^{+iθZ/2}.
ChannelFamily make_phase_unitary();

/// (1−r)·phase_unitary(θ) + r·(I/2)·tr.
ChannelFamily make_depolarized_phase(double r);

/// Constant-output channel through ρ + θδ; all inputs map to that state.
ChannelFamily make_constant_state(const DensityMatrix& rho,
                                  const StateTangent& delta);

/// Finite-alphabet classical channel with rows T_θ(y|x) = base[x,y] + θ·rate[x,y],
/// embedded as a quantum channel that dephases the input in the computational
/// basis and emits the output distribution on the diagonal.
ChannelFamily make_classical_finite(const RealMatrix& base,
                                    const RealMatrix& rate);

/// Catalog lookup by name with JSON parameters; names: pauli, bitflip,
/// phase_unitary, depolarized_phase, constant_state, classical_finite.
ChannelFamily family_catalog(const std::string& name, const nlohmann::json& params);

// Channel-spec files (JSON): either {"name", "params", "theta"} for catalog
// entries or {"choi": [[re, im], ...], "d_in", "d_out"} for explicit matrices,
// entries row-major. Explicit Chois round-trip bit-exactly.
nlohmann::json channel_to_json(const Channel& phi);
Channel channel_from_json(const nlohmann::json& j);
nlohmann::json tangent_to_json(const ChannelTangent& dphi);
ChannelTangent tangent_from_json(const nlohmann::json& j);

struct FamilySpec {
  ChannelFamily family;
  double theta;
};
FamilySpec family_from_json(const nlohmann::json& j);

}  // namespace chanmet

#endif  // CHANMET_FAMILIES_HPP
