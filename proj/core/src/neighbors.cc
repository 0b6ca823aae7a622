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

#include "tabeval/neighbors.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "tabeval/parallel.h"

namespace tabeval {

absl::StatusOr<PointSet> PointSet::Encode(const Dataset& dataset,
                                          std::span<const size_t> columns) {
  std::vector<size_t> selected(columns.begin(), columns.end());
  if (selected.empty()) {
    selected.resize(dataset.num_columns());
    std::iota(selected.begin(), selected.end(), size_t{0});
  }
  std::vector<size_t> numeric, categorical;
  for (size_t c : selected) {
    if (c >= dataset.num_columns()) {
      return absl::OutOfRangeError(absl::StrCat("column ", c, " out of range"));
    }
    (dataset.spec(c).is_numeric() ? numeric : categorical).push_back(c);
  }
  PointSet points;
  points.size_ = dataset.num_rows();
  points.numeric_dims_ = numeric.size();
  points.categorical_dims_ = categorical.size();
  points.numeric_.resize(points.size_ * numeric.size());
  points.codes_.resize(points.size_ * categorical.size());
  for (size_t r = 0; r < points.size_; ++r) {
    for (size_t d = 0; d < numeric.size(); ++d) {
      points.numeric_[r * numeric.size() + d] = dataset.value(r, numeric[d]);
    }
    for (size_t d = 0; d < categorical.size(); ++d) {
      points.codes_[r * categorical.size() + d] =
          dataset.code(r, categorical[d]);
    }
  }
  return points;
}

PointSet PointSet::FromCoordinates(size_t dims, std::vector<double> coords) {
  PointSet points;
  points.numeric_dims_ = dims;
  points.size_ = dims == 0 ? 0 : coords.size() / dims;
  points.numeric_ = std::move(coords);
  return points;
}

double PointSet::SquaredDistance(size_t i, const PointSet& other,
                                 size_t j) const {
  const double* a = numeric_.data() + i * numeric_dims_;
  const double* b = other.numeric_.data() + j * numeric_dims_;
  double sum = 0.0;
  for (size_t d = 0; d < numeric_dims_; ++d) {
    const double diff = a[d] - b[d];
    sum += diff * diff;
  }
  const int32_t* ca = codes_.data() + i * categorical_dims_;
  const int32_t* cb = other.codes_.data() + j * categorical_dims_;
  for (size_t d = 0; d < categorical_dims_; ++d) {
    sum += ca[d] != cb[d] ? 1.0 : 0.0;
  }
  return sum;
}

double PointSet::Distance(size_t i, const PointSet& other, size_t j) const {
  return std::sqrt(SquaredDistance(i, other, j));
}

double PointSet::BoundedSquaredDistance(size_t i, const PointSet& other,
                                        size_t j, double bound) const {
  const int32_t* ca = codes_.data() + i * categorical_dims_;
  const int32_t* cb = other.codes_.data() + j * categorical_dims_;
  double sum = 0.0;
  for (size_t d = 0; d < categorical_dims_; ++d) {
    sum += ca[d] != cb[d] ? 1.0 : 0.0;
  }
  if (sum > bound) return sum;
  const double* a = numeric_.data() + i * numeric_dims_;
  const double* b = other.numeric_.data() + j * numeric_dims_;
  size_t d = 0;
  // Check the bound every four dimensions; the sum only grows.
  for (; d + 4 <= numeric_dims_; d += 4) {
    const double d0 = a[d] - b[d];
    const double d1 = a[d + 1] - b[d + 1];
    const double d2 = a[d + 2] - b[d + 2];
    const double d3 = a[d + 3] - b[d + 3];
    sum += d0 * d0;
    sum += d1 * d1;
    sum += d2 * d2;
    sum += d3 * d3;
    if (sum > bound) return sum;
  }
  for (; d < numeric_dims_; ++d) {
    const double diff = a[d] - b[d];
    sum += diff * diff;
  }
  return sum;
}

PointSet PointSet::Subset(std::span<const size_t> rows) const {
  PointSet out;
  out.size_ = rows.size();
  out.numeric_dims_ = numeric_dims_;
  out.categorical_dims_ = categorical_dims_;
  out.numeric_.reserve(rows.size() * numeric_dims_);
  out.codes_.reserve(rows.size() * categorical_dims_);
  for (size_t r : rows) {
    out.numeric_.insert(out.numeric_.end(),
                        numeric_.begin() + r * numeric_dims_,
                        numeric_.begin() + (r + 1) * numeric_dims_);
    out.codes_.insert(out.codes_.end(), codes_.begin() + r * categorical_dims_,
                      codes_.begin() + (r + 1) * categorical_dims_);
  }
  return out;
}

absl::StatusOr<NeighborTable> NearestNeighbors(const PointSet& queries,
                                               const PointSet& reference,
                                               size_t k, bool exclude_self) {
  if (queries.numeric_dims() != reference.numeric_dims() ||
      queries.categorical_dims() != reference.categorical_dims()) {
    return absl::InvalidArgumentError("point sets have different layouts");
  }
  const size_t available = reference.size() - (exclude_self ? 1 : 0);
  if (k == 0 || reference.size() < (exclude_self ? 1 : 0) + 1 ||
      k > available) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need ", k, " neighbors but the reference set has ", reference.size(),
        exclude_self ? " points (self excluded)" : " points"));
  }
  if (exclude_self && queries.size() > reference.size()) {
    return absl::InvalidArgumentError(
        "self-exclusion needs queries to index into the reference set");
  }

  NeighborTable table;
  table.k = k;
  table.entries.resize(queries.size() * k);
  ParallelFor(queries.size(), [&](size_t begin, size_t end) {
    // Squared distances, kept sorted by (distance, index).
    std::vector<Neighbor> best(k);
    for (size_t q = begin; q < end; ++q) {
      size_t filled = 0;
      double bound = std::numeric_limits<double>::infinity();
      for (size_t r = 0; r < reference.size(); ++r) {
        if (exclude_self && r == q) continue;
        const double d2 =
            reference.BoundedSquaredDistance(r, queries, q, bound);
        // Later indices never win ties, so only strictly closer points enter.
        if (filled == k && !(d2 < bound)) continue;
        size_t pos = filled < k ? filled++ : k - 1;
        while (pos > 0 && best[pos - 1].distance > d2) {
          best[pos] = best[pos - 1];
          --pos;
        }
        best[pos] = Neighbor{d2, r};
        if (filled == k) bound = best[k - 1].distance;
      }
      for (size_t i = 0; i < k; ++i) {
        table.entries[q * k + i] =
            Neighbor{std::sqrt(best[i].distance), best[i].index};
      }
    }
  });
  return table;
}

}  // namespace tabeval
