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

#ifndef CHANMET_CLI_HPP
#define CHANMET_CLI_HPP

namespace chanmet {

// Exit codes, fixed for scripting: 0 success, 2 bad configuration, 3 numerical
// failure, 4 memory budget exceeded, 5 degenerate estimation strategy.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitBudget = 4;
inline constexpr int kExitDegenerate = 5;

/// Full command-line entry point (parse, run, write outputs). Never throws;
/// failures map onto the exit-code table above.
int cli_main(int argc, const char* const* argv);

}  // namespace chanmet

#endif  // CHANMET_CLI_HPP
