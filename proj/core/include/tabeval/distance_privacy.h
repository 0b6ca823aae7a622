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

// Distance- and frequency-based disclosure metrics between an original
// table and a synthetic one.

#ifndef TABEVAL_DISTANCE_PRIVACY_H_
#define TABEVAL_DISTANCE_PRIVACY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "tabeval/tabular.h"

namespace tabeval {

struct DistancePrivacyReport {
  double disco = 0.0;  // percent
  double rep_u = 0.0;  // percent
  double nndr = 0.0;
  double dcr = 0.0;
  double nnaa = 0.0;
  std::vector<std::string> keys;
  std::string target;
  int bins = kDefaultBins;
  // Rows per side actually compared by NNAA after alignment and capping.
  size_t nnaa_rows = 0;
};

// Percentage of original records whose quasi-identifier combination is
// disclosive in the synthetic data (every synthetic record sharing it has
// the same target value) and whose own target equals the disclosed value.
// Keys and target are grouped on exact cell values, so continuous columns
// should be discretized first.
// Percent of original records whose key group holds a single target value
// in both tables, with the synthetic value equal to the record's own.
absl::StatusOr<double> Disco(const Dataset& original, const Dataset& synthetic,
                             std::span<const std::string> keys,
                             std::string_view target);

// Percentage (of original records) of key combinations that are unique in
// the original and unique in the synthetic data.
absl::StatusOr<double> RepU(const Dataset& original, const Dataset& synthetic,
                            std::span<const std::string> keys);

// Mean over synthetic records of nearest / second-nearest original
// distance, with 0/0 taken as 0. Needs at least two original records.
absl::StatusOr<double> Nndr(const Dataset& synthetic, const Dataset& original);

// Mean over synthetic records of the distance to the closest original.
absl::StatusOr<double> Dcr(const Dataset& synthetic, const Dataset& original);

struct NndrDcr {
  double nndr = 0.0;
  double dcr = 0.0;
};

// Both from one two-nearest-neighbor scan.
absl::StatusOr<NndrDcr> NndrAndDcr(const Dataset& synthetic,
                                   const Dataset& original);

// Nearest-neighbor adversarial accuracy. When sizes differ the larger side
// is subsampled once (seeded) to the smaller size; `max_rows` > 0 caps both.
// Ties between cross and within distances count as not exceeding.
absl::StatusOr<double> Nnaa(const Dataset& original, const Dataset& synthetic,
                            uint64_t seed, size_t max_rows = 0,
                            size_t* rows_used = nullptr);

struct DistancePrivacyOptions {
  std::vector<std::string> keys;
  std::string target;
  int bins = kDefaultBins;
  uint64_t seed = 0;
  size_t nnaa_max_rows = 0;
};

// Runs all five metrics on comparable raw datasets: numeric keys and target
// are discretized over the original's ranges for DiSCO/repU, and distances
// use data normalized to the original's ranges.
absl::StatusOr<DistancePrivacyReport> EvaluateDistancePrivacy(
    const Dataset& original, const Dataset& synthetic,
    const DistancePrivacyOptions& options);

}  // namespace tabeval

#endif  // TABEVAL_DISTANCE_PRIVACY_H_
