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

#include <cstdint>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "tabeval/neighbors.h"
#include "tabeval/random.h"
#include "tabeval/similarity.h"
#include "tabeval/sinkhorn.h"

namespace tabeval {
namespace {

PointSet RandomPoints(size_t n, size_t dims, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> coords(n * dims);
  for (double& x : coords) x = rng.Uniform();
  return PointSet::FromCoordinates(dims, std::move(coords));
}

void BM_NearestNeighbors(benchmark::State& state) {
  const size_t n = state.range(0);
  const PointSet queries = RandomPoints(n, 8, 1);
  const PointSet reference = RandomPoints(n, 8, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(NearestNeighbors(queries, reference, 2));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_NearestNeighbors)
    ->RangeMultiplier(2)
    ->Range(256, 4096)
    ->Complexity(benchmark::oNSquared);

void BM_Sinkhorn(benchmark::State& state) {
  const size_t n = state.range(0);
  const PointSet a = RandomPoints(n, 5, 3);
  const PointSet b = RandomPoints(n, 5, 4);
  SinkhornOptions options;
  options.max_rows = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SinkhornPointClouds(a, b, options));
  }
}
BENCHMARK(BM_Sinkhorn)->RangeMultiplier(2)->Range(128, 1024);

void BM_KsStatistic(benchmark::State& state) {
  const size_t n = state.range(0);
  Rng rng(5);
  std::vector<double> x(n), y(n);
  for (double& v : x) v = rng.Normal();
  for (double& v : y) v = rng.Normal();
  for (auto _ : state) benchmark::DoNotOptimize(KsStatistic(x, y));
  state.SetComplexityN(n);
}
BENCHMARK(BM_KsStatistic)
    ->RangeMultiplier(4)
    ->Range(1 << 10, 1 << 18)
    ->Complexity(benchmark::oNLogN);

}  // namespace
}  // namespace tabeval

BENCHMARK_MAIN();
