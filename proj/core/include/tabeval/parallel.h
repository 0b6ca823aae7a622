// Copyright 2026 The Tabeval Authors
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

#ifndef TABEVAL_PARALLEL_H_
#define TABEVAL_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace tabeval {

// Number of worker threads used by ParallelFor. Defaults to the hardware
// concurrency; SetMaxThreads(1) forces serial execution.
size_t MaxThreads();
void SetMaxThreads(size_t threads);

// Calls body(begin, end) over disjoint contiguous chunks covering [0, n).
// Chunks must write only to their own output slots; callers reduce results
// afterwards in index order so output never depends on scheduling.
void ParallelFor(size_t n, const std::function<void(size_t, size_t)>& body);

}  // namespace tabeval

#endif  // TABEVAL_PARALLEL_H_
