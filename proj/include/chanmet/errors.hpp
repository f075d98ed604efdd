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

#ifndef CHANMET_ERRORS_HPP
#define CHANMET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chanmet {

// Bad user-facing configuration: unknown family name, invalid parameters,
// malformed spec files, inconsistent dimensions.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A dense solver failed to converge or produced non-finite values.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An n-copy construction exceeds the in-memory budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The measurement strategy carries no information about the parameter.
struct degenerate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mixture data fails to reconstruct the target channel and tangent.
struct simulation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace chanmet

#endif  // CHANMET_ERRORS_HPP
