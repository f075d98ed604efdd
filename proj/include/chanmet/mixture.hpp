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

#ifndef CHANMET_MIXTURE_HPP
#define CHANMET_MIXTURE_HPP

#include <vector>

#include "chanmet/channels.hpp"

namespace chanmet {

/// Classical tangent simulation {q, δ′, {Λ_y}} of a channel pair (Φ, Δ):
/// fixed branch channels Λ_y with Φ = Σ_y q(y)Λ_y and Δ = Σ_y δ′(y)Λ_y.
/// Its classical Fisher information J_q(δ′) upper-bounds the largest
/// monotone channel metric.
struct MixtureSimulation {
  ProbVector q;
  SignedVector dq;
  std::vector<Channel> branches;
};

}  // namespace chanmet

#endif  // CHANMET_MIXTURE_HPP
