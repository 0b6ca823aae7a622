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

// Typed columnar tables shared by every metric: schema inference,
// normalization anchored to a reference schema, discretization, sampling
// and train/test splitting.

#ifndef TABEVAL_TABULAR_H_
#define TABEVAL_TABULAR_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace tabeval {

inline constexpr int kDefaultBins = 20;

enum class ColumnKind { kNumeric, kCategorical };

std::string_view ColumnKindName(ColumnKind kind);

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  // Observed range; numeric columns only.
  double min = 0.0;
  double max = 0.0;
  // Distinct labels in code order; categorical columns only.
  std::vector<std::string> categories;
  // True once Normalize() has mapped the column into [0, 1].
  bool normalized = false;

  bool is_numeric() const { return kind == ColumnKind::kNumeric; }
  std::optional<int32_t> CodeOf(std::string_view label) const;

  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

struct Schema {
  std::vector<ColumnSpec> columns;

  size_t size() const { return columns.size(); }
  std::optional<size_t> Find(std::string_view name) const;
  // NotFound error naming the column when absent.
  absl::StatusOr<size_t> IndexOf(std::string_view name) const;
  absl::StatusOr<std::vector<size_t>> IndicesOf(
      std::span<const std::string> names) const;
  std::vector<std::string> names() const;
  // Checks min <= max and non-empty, duplicate-free category lists.
  absl::Status Validate() const;

  friend bool operator==(const Schema&, const Schema&) = default;
};

// Header plus text cells, as read from a CSV file.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct LoadStats {
  size_t rows_read = 0;
  size_t rows_dropped_missing = 0;
};

// Empty cells and the usual NA spellings count as missing.
bool IsMissingCell(std::string_view cell);

// Cells of one column. Numeric columns fill `values`; categorical columns
// fill `codes`, which index ColumnSpec::categories.
struct Column {
  std::vector<double> values;
  std::vector<int32_t> codes;
};

// Immutable table of complete records.
class Dataset {
 public:
  Dataset() = default;

  static absl::StatusOr<Dataset> Create(Schema schema,
                                        std::vector<Column> columns);

  // Builds a dataset from text cells. Rows holding a missing cell are dropped
  // and counted in `stats`. Without a schema one is inferred from the
  // remaining rows; with a schema the header must name the same columns
  // (any order) and categorical labels not in the schema are appended.
  static absl::StatusOr<Dataset> FromText(const RawTable& table,
                                          const Schema* schema = nullptr,
                                          LoadStats* stats = nullptr);

  // All-numeric dataset from row-major values; the schema range is the
  // observed one.
  static absl::StatusOr<Dataset> FromNumericRows(
      std::vector<std::string> names,
      const std::vector<std::vector<double>>& rows);

  const Schema& schema() const { return schema_; }
  size_t num_rows() const { return num_rows_; }
  size_t num_columns() const { return columns_.size(); }
  const ColumnSpec& spec(size_t c) const { return schema_.columns[c]; }
  const Column& column(size_t c) const { return columns_[c]; }
  std::span<const double> values(size_t c) const { return columns_[c].values; }
  std::span<const int32_t> codes(size_t c) const { return columns_[c].codes; }
  double value(size_t row, size_t c) const { return columns_[c].values[row]; }
  int32_t code(size_t row, size_t c) const { return columns_[c].codes[row]; }

  // Text form of a cell: the category label, or the shortest round-trip
  // decimal of a number.
  std::string CellText(size_t row, size_t c) const;

  // Rows in the given order; indices may repeat.
  Dataset SelectRows(std::span<const size_t> rows) const;
  absl::StatusOr<Dataset> SelectColumns(
      std::span<const std::string> names) const;

 private:
  Dataset(Schema schema, std::vector<Column> columns, size_t num_rows)
      : schema_(std::move(schema)),
        columns_(std::move(columns)),
        num_rows_(num_rows) {}

  Schema schema_;
  std::vector<Column> columns_;
  size_t num_rows_ = 0;
};

// Shortest decimal text that parses back to the same double.
std::string FormatNumber(double value);
std::optional<double> ParseNumber(std::string_view text);

// A column is numeric iff every non-missing cell parses as a real number.
absl::StatusOr<Schema> InferSchema(const RawTable& table);

// Re-encodes `dataset` onto `reference`: columns are matched by name and put
// in reference order, numeric ranges are taken from the reference, and
// categorical codes follow the reference category order with unseen labels
// appended. Numeric cells in a reference-categorical column are matched by
// their text form.
absl::StatusOr<Dataset> Conform(const Dataset& dataset,
                                const Schema& reference);

// OK when both datasets have the same column names and kinds in the same
// order and, per categorical column, one category list is a prefix of the
// other, so equal codes mean equal labels.
absl::Status CheckComparable(const Dataset& a, const Dataset& b);

// Maps numeric cells to (x - min) / (max - min) using the reference range,
// clamped to [0, 1]; constant reference columns map to 0. Columns already
// normalized are left as they are, which makes the operation idempotent.
absl::StatusOr<Dataset> Normalize(const Dataset& dataset,
                                  const Schema& reference);

// Euclidean norm over numeric differences and 0/1 categorical mismatches.
// The datasets must be comparable.
double MixedDistance(const Dataset& a, size_t row_a, const Dataset& b,
                     size_t row_b);

// Equal-width bin of x over [min, max]. The first bin is closed, later bins
// are (lo, hi]; out-of-range values go to the end bins and a constant range
// maps everything to bin 0.
int32_t BinIndex(double x, double min, double max, int bins);
std::string BinLabel(int32_t bin);

// Bin labels of one numeric column over the reference column's range.
absl::StatusOr<std::vector<int32_t>> Discretize(const Dataset& dataset,
                                                size_t column, int bins,
                                                const Schema& reference);

// Replaces every numeric column by a categorical column with categories
// bin0..bin{bins-1}, binned over the reference ranges.
absl::StatusOr<Dataset> DiscretizeNumeric(const Dataset& dataset, int bins,
                                          const Schema& reference);

struct SplitPair {
  Dataset train;
  Dataset test;
  std::vector<size_t> train_rows;
  std::vector<size_t> test_rows;
  double ratio = 0.0;  // test fraction
  uint64_t seed = 0;
};

inline constexpr size_t kSmallDatasetRows = 2000;

// Test fraction by size tier: 0.3 below kSmallDatasetRows rows, else 0.2.
double TestFractionFor(size_t num_rows);

// Seeded split with the tiered test fraction; stratified on `stratify` when
// given. Needs at least 10 rows.
absl::StatusOr<SplitPair> DynamicTrainTestSplit(
    const Dataset& dataset, uint64_t seed,
    std::optional<std::string> stratify = std::nullopt);

// n rows copied verbatim in random order.
absl::StatusOr<Dataset> SampleRows(const Dataset& dataset, size_t n,
                                   bool with_replacement, uint64_t seed);

}  // namespace tabeval

#endif  // TABEVAL_TABULAR_H_
