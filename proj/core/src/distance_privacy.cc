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

#include "tabeval/distance_privacy.h"

#include <algorithm>
#include <bit>
#include <map>

#include "absl/strings/str_cat.h"
#include "tabeval/neighbors.h"
#include "tabeval/random.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

using CellKey = std::vector<uint64_t>;

uint64_t CellBits(const Dataset& d, size_t row, size_t c) {
  if (d.spec(c).is_numeric()) {
    const double v = d.value(row, c);
    return std::bit_cast<uint64_t>(v == 0.0 ? 0.0 : v);
  }
  return static_cast<uint64_t>(d.code(row, c));
}

CellKey RowKey(const Dataset& d, size_t row, std::span<const size_t> cols) {
  CellKey key;
  key.reserve(cols.size());
  for (size_t c : cols) key.push_back(CellBits(d, row, c));
  return key;
}

std::map<CellKey, size_t> CountKeys(const Dataset& d,
                                    std::span<const size_t> cols) {
  std::map<CellKey, size_t> counts;
  for (size_t r = 0; r < d.num_rows(); ++r) ++counts[RowKey(d, r, cols)];
  return counts;
}

absl::Status RequireRows(const Dataset& d, std::string_view what) {
  if (d.num_rows() == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(what), " dataset is empty"));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<size_t>> KeyColumns(
    const Dataset& original, std::span<const std::string> keys) {
  if (keys.empty()) {
    return absl::InvalidArgumentError("no quasi-identifier keys given");
  }
  return original.schema().IndicesOf(keys);
}

}  // namespace

absl::StatusOr<double> Disco(const Dataset& original, const Dataset& synthetic,
                             std::span<const std::string> keys,
                             std::string_view target) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  RETURN_IF_ERROR(RequireRows(original, "original"));
  ASSIGN_OR_RETURN(std::vector<size_t> key_cols, KeyColumns(original, keys));
  ASSIGN_OR_RETURN(size_t target_col, original.schema().IndexOf(target));
  if (std::find(key_cols.begin(), key_cols.end(), target_col) !=
      key_cols.end()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "target '", std::string(target), "' is listed among the keys"));
  }

  struct Group {
    uint64_t target = 0;
    bool single_target = true;
  };
  auto group = [&](const Dataset& data) {
    std::map<CellKey, Group> groups;
    for (size_t r = 0; r < data.num_rows(); ++r) {
      const uint64_t t = CellBits(data, r, target_col);
      auto [it, inserted] =
          groups.try_emplace(RowKey(data, r, key_cols), Group{t});
      if (!inserted && it->second.target != t) it->second.single_target = false;
    }
    return groups;
  };
  const std::map<CellKey, Group> original_groups = group(original);
  const std::map<CellKey, Group> synthetic_groups = group(synthetic);

  // A record counts when its key group is disclosive in both tables and
  // the synthetic group discloses the record's own target.
  size_t disclosed = 0;
  for (size_t r = 0; r < original.num_rows(); ++r) {
    const CellKey key = RowKey(original, r, key_cols);
    auto it = synthetic_groups.find(key);
    if (it == synthetic_groups.end() || !it->second.single_target) continue;
    if (!original_groups.at(key).single_target) continue;
    if (it->second.target == CellBits(original, r, target_col)) ++disclosed;
  }
  return 100.0 * static_cast<double>(disclosed) /
         static_cast<double>(original.num_rows());
}

absl::StatusOr<double> RepU(const Dataset& original, const Dataset& synthetic,
                            std::span<const std::string> keys) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  RETURN_IF_ERROR(RequireRows(original, "original"));
  ASSIGN_OR_RETURN(std::vector<size_t> key_cols, KeyColumns(original, keys));
  const std::map<CellKey, size_t> in_original = CountKeys(original, key_cols);
  const std::map<CellKey, size_t> in_synthetic = CountKeys(synthetic, key_cols);
  size_t replicated = 0;
  for (const auto& [key, count] : in_original) {
    if (count != 1) continue;
    auto it = in_synthetic.find(key);
    if (it != in_synthetic.end() && it->second == 1) ++replicated;
  }
  return 100.0 * static_cast<double>(replicated) /
         static_cast<double>(original.num_rows());
}

absl::StatusOr<NndrDcr> NndrAndDcr(const Dataset& synthetic,
                                   const Dataset& original) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  RETURN_IF_ERROR(RequireRows(synthetic, "synthetic"));
  if (original.num_rows() < 2) {
    return absl::InvalidArgumentError("NNDR needs at least 2 original records");
  }
  ASSIGN_OR_RETURN(PointSet queries, PointSet::Encode(synthetic));
  ASSIGN_OR_RETURN(PointSet reference, PointSet::Encode(original));
  ASSIGN_OR_RETURN(NeighborTable nn, NearestNeighbors(queries, reference, 2));
  double ratio_sum = 0.0;
  double closest_sum = 0.0;
  for (size_t q = 0; q < queries.size(); ++q) {
    const auto row = nn.row(q);
    const double first = row[0].distance;
    const double second = row[1].distance;
    ratio_sum += first > 0.0 ? first / second : 0.0;
    closest_sum += first;
  }
  const double n = static_cast<double>(queries.size());
  return NndrDcr{ratio_sum / n, closest_sum / n};
}

absl::StatusOr<double> Nndr(const Dataset& synthetic, const Dataset& original) {
  ASSIGN_OR_RETURN(NndrDcr both, NndrAndDcr(synthetic, original));
  return both.nndr;
}

absl::StatusOr<double> Dcr(const Dataset& synthetic, const Dataset& original) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  RETURN_IF_ERROR(RequireRows(synthetic, "synthetic"));
  RETURN_IF_ERROR(RequireRows(original, "original"));
  ASSIGN_OR_RETURN(PointSet queries, PointSet::Encode(synthetic));
  ASSIGN_OR_RETURN(PointSet reference, PointSet::Encode(original));
  ASSIGN_OR_RETURN(NeighborTable nn, NearestNeighbors(queries, reference, 1));
  double sum = 0.0;
  for (size_t q = 0; q < queries.size(); ++q) sum += nn.row(q)[0].distance;
  return sum / static_cast<double>(queries.size());
}

absl::StatusOr<double> Nnaa(const Dataset& original, const Dataset& synthetic,
                            uint64_t seed, size_t max_rows, size_t* rows_used) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  size_t n = std::min(original.num_rows(), synthetic.num_rows());
  if (max_rows > 0) n = std::min(n, max_rows);
  if (n < 2) {
    return absl::InvalidArgumentError(
        "NNAA needs at least 2 records on each side");
  }
  ASSIGN_OR_RETURN(PointSet target, PointSet::Encode(original));
  ASSIGN_OR_RETURN(PointSet source, PointSet::Encode(synthetic));
  if (target.size() > n) {
    Rng rng(DeriveSeed(seed, 0));
    target = target.Subset(SampleWithoutReplacement(target.size(), n, rng));
  }
  if (source.size() > n) {
    Rng rng(DeriveSeed(seed, 1));
    source = source.Subset(SampleWithoutReplacement(source.size(), n, rng));
  }
  ASSIGN_OR_RETURN(NeighborTable ts, NearestNeighbors(target, source, 1));
  ASSIGN_OR_RETURN(NeighborTable tt, NearestNeighbors(target, target, 1, true));
  ASSIGN_OR_RETURN(NeighborTable st, NearestNeighbors(source, target, 1));
  ASSIGN_OR_RETURN(NeighborTable ss, NearestNeighbors(source, source, 1, true));
  size_t target_hits = 0, source_hits = 0;
  for (size_t i = 0; i < n; ++i) {
    if (ts.row(i)[0].distance > tt.row(i)[0].distance) ++target_hits;
    if (st.row(i)[0].distance > ss.row(i)[0].distance) ++source_hits;
  }
  if (rows_used != nullptr) *rows_used = n;
  const double dn = static_cast<double>(n);
  return 0.5 * (static_cast<double>(target_hits) / dn +
                static_cast<double>(source_hits) / dn);
}

absl::StatusOr<DistancePrivacyReport> EvaluateDistancePrivacy(
    const Dataset& original, const Dataset& synthetic,
    const DistancePrivacyOptions& options) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  DistancePrivacyReport report;
  report.keys = options.keys;
  report.target = options.target;
  report.bins = options.bins;

  ASSIGN_OR_RETURN(
      Dataset original_bins,
      DiscretizeNumeric(original, options.bins, original.schema()));
  ASSIGN_OR_RETURN(
      Dataset synthetic_bins,
      DiscretizeNumeric(synthetic, options.bins, original.schema()));
  ASSIGN_OR_RETURN(report.disco, Disco(original_bins, synthetic_bins,
                                       options.keys, options.target));
  ASSIGN_OR_RETURN(report.rep_u,
                   RepU(original_bins, synthetic_bins, options.keys));

  ASSIGN_OR_RETURN(Dataset original_norm,
                   Normalize(original, original.schema()));
  ASSIGN_OR_RETURN(Dataset synthetic_norm,
                   Normalize(synthetic, original.schema()));
  ASSIGN_OR_RETURN(NndrDcr nd, NndrAndDcr(synthetic_norm, original_norm));
  report.nndr = nd.nndr;
  report.dcr = nd.dcr;
  ASSIGN_OR_RETURN(report.nnaa,
                   Nnaa(original_norm, synthetic_norm, options.seed,
                        options.nnaa_max_rows, &report.nnaa_rows));
  return report;
}

}  // namespace tabeval
