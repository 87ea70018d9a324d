// Copyright 2026 The paulispec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace paulispec {

/// Number of worker threads to use when the caller passes 0.
std::size_t default_thread_count();

/// Calls body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Each index runs exactly once; callers write results into slot i so that
/// reductions can be done in index order afterwards. The first exception
/// thrown by any body is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)> &body);

}  // namespace paulispec
