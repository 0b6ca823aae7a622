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

#ifndef TABEVAL_SINKHORN_H_
#define TABEVAL_SINKHORN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "tabeval/neighbors.h"
#include "tabeval/tabular.h"

namespace tabeval {

struct SinkhornOptions {
  double epsilon = 0.05;
  int max_iter = 500;
  // Stop once the L1 violation of the row marginals drops below tol.
  double tol = 1e-6;
  // Each side is subsampled to at most this many rows; 0 disables the cap.
  size_t max_rows = 2000;
  // Record the transport cost after every iteration.
  bool record_trace = false;
};

struct SinkhornResult {
  // <P, C> for the final plan; not debiased, so positive even for
  // identical inputs when epsilon > 0.
  double cost = 0.0;
  double marginal_violation = 0.0;
  int iterations = 0;
  bool converged = false;
  size_t rows_original = 0;
  size_t rows_synthetic = 0;
  std::vector<double> cost_trace;
};

// Entropic optimal transport between uniform weights on n sources and m
// targets. `cost` is row-major n x m. Works in the log domain when
// max(cost) / epsilon is large and with the Gibbs kernel otherwise; the
// iterates are the same. Hitting max_iter is reported through `converged`,
// not as an error.
absl::StatusOr<SinkhornResult> SolveSinkhorn(std::span<const double> cost,
                                             size_t n, size_t m,
                                             const SinkhornOptions& options);

// Ground cost is the mixed Euclidean distance between points.
absl::StatusOr<SinkhornResult> SinkhornPointClouds(
    const PointSet& a, const PointSet& b, const SinkhornOptions& options);

// Normalizes both datasets to the original's ranges, applies the row cap
// (seeded) and solves.
absl::StatusOr<SinkhornResult> SinkhornDistance(const Dataset& original,
                                                const Dataset& synthetic,
                                                const SinkhornOptions& options,
                                                uint64_t seed);

}  // namespace tabeval

#endif  // TABEVAL_SINKHORN_H_
