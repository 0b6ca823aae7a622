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

#ifndef TABEVAL_NEIGHBORS_H_
#define TABEVAL_NEIGHBORS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "tabeval/tabular.h"

namespace tabeval {

// Records packed row-major for distance scans. Numeric cells are
// coordinates; categorical cells contribute 0 when equal and 1 otherwise,
// matching MixedDistance.
class PointSet {
 public:
  PointSet() = default;

  // Encodes the listed columns (all columns when empty).
  static absl::StatusOr<PointSet> Encode(const Dataset& dataset,
                                         std::span<const size_t> columns = {});
  // Purely numeric points, row-major.
  static PointSet FromCoordinates(size_t dims, std::vector<double> coords);

  size_t size() const { return size_; }
  size_t numeric_dims() const { return numeric_dims_; }
  size_t categorical_dims() const { return categorical_dims_; }

  double SquaredDistance(size_t i, const PointSet& other, size_t j) const;
  double Distance(size_t i, const PointSet& other, size_t j) const;

  // Squared distance that stops once the partial sum exceeds `bound`; any
  // result greater than `bound` only means "farther than bound".
  double BoundedSquaredDistance(size_t i, const PointSet& other, size_t j,
                                double bound) const;

  PointSet Subset(std::span<const size_t> rows) const;

 private:
  size_t size_ = 0;
  size_t numeric_dims_ = 0;
  size_t categorical_dims_ = 0;
  std::vector<double> numeric_;
  std::vector<int32_t> codes_;
};

struct Neighbor {
  double distance = 0.0;
  size_t index = 0;
};

// k nearest reference points for every query, row q at
// [q * k, (q + 1) * k), ordered by (distance, index). Exact full scan.
struct NeighborTable {
  size_t k = 0;
  std::vector<Neighbor> entries;

  std::span<const Neighbor> row(size_t q) const {
    return std::span<const Neighbor>(entries).subspan(q * k, k);
  }
};

// With `exclude_self`, reference index q is skipped for query q (within-set
// search). Requires k <= reference.size() (minus one when excluding self).
absl::StatusOr<NeighborTable> NearestNeighbors(const PointSet& queries,
                                               const PointSet& reference,
                                               size_t k,
                                               bool exclude_self = false);

}  // namespace tabeval

#endif  // TABEVAL_NEIGHBORS_H_
