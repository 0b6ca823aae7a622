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

#include "tabeval/parallel.h"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace tabeval {
namespace {

std::atomic<size_t> g_max_threads{0};

}  // namespace

size_t MaxThreads() {
  const size_t configured = g_max_threads.load();
  if (configured > 0) return configured;
  return std::max<size_t>(1, std::thread::hardware_concurrency());
}

void SetMaxThreads(size_t threads) { g_max_threads.store(threads); }

void ParallelFor(size_t n, const std::function<void(size_t, size_t)>& body) {
  if (n == 0) return;
  // Below this many items the thread start-up cost dominates.
  constexpr size_t kMinChunk = 64;
  const size_t threads =
      std::min(MaxThreads(), (n + kMinChunk - 1) / kMinChunk);
  if (threads <= 1) {
    body(0, n);
    return;
  }
  const size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (size_t t = 0; t < threads; ++t) {
    const size_t begin = t * chunk;
    const size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (std::thread& worker : workers) worker.join();
}

}  // namespace tabeval
