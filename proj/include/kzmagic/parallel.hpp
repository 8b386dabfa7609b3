// Copyright 2026 The kzmagic Authors
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

namespace kzmagic {

// Worker count from KZMAGIC_THREADS (0 or unset = hardware concurrency).
int worker_count();

// Runs fn(i) for i in [0, n) on up to `threads` workers (<= 0 means
// worker_count()). Each index is handled exactly once; callers write into
// pre-sized slots so the result never depends on scheduling. If any call
// throws, remaining work is abandoned and the exception from the lowest
// failing index that ran is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn, int threads = 0);

}  // namespace kzmagic
