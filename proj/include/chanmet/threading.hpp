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

#ifndef CHANMET_THREADING_HPP
#define CHANMET_THREADING_HPP

#include <cstdint>
#include <functional>

namespace chanmet {

/// Worker count for a batch of `tasks` independent jobs: hardware concurrency,
/// capped by the CHANNEL_METRIC_THREADS environment variable when set.
int worker_count(int tasks);

/// Runs fn(0..n-1) across workers. Each index owns its output slot, so results
/// are identical to a sequential run regardless of worker count. Exceptions
/// from tasks are rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn);

/// splitmix64 step; used to derive independent per-task seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace chanmet

#endif  // CHANMET_THREADING_HPP
