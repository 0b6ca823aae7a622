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

#include "tabeval/tabular.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "tabeval/random.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Maps labels to codes for one categorical column, appending unseen labels.
class CategoryEncoder {
 public:
  explicit CategoryEncoder(std::vector<std::string>* categories)
      : categories_(categories) {
    for (size_t i = 0; i < categories_->size(); ++i) {
      index_.emplace((*categories_)[i], static_cast<int32_t>(i));
    }
  }

  int32_t Encode(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    const int32_t code = static_cast<int32_t>(categories_->size());
    categories_->push_back(label);
    index_.emplace(label, code);
    return code;
  }

 private:
  std::vector<std::string>* categories_;
  std::unordered_map<std::string, int32_t> index_;
};

absl::Status RequireSameColumns(const Dataset& dataset,
                                const Schema& reference) {
  if (dataset.num_columns() != reference.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema mismatch: dataset has ", dataset.num_columns(),
                     " columns, reference has ", reference.size()));
  }
  for (size_t c = 0; c < reference.size(); ++c) {
    const ColumnSpec& have = dataset.spec(c);
    const ColumnSpec& want = reference.columns[c];
    if (have.name != want.name || have.kind != want.kind) {
      return absl::InvalidArgumentError(absl::StrCat(
          "schema mismatch at column ", c, ": '", have.name, "' (",
          std::string(ColumnKindName(have.kind)), ") vs reference '", want.name,
          "' (", std::string(ColumnKindName(want.kind)), ")"));
    }
  }
  return absl::OkStatus();
}

bool IsPrefix(const std::vector<std::string>& a,
              const std::vector<std::string>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

std::string_view ColumnKindName(ColumnKind kind) {
  return kind == ColumnKind::kNumeric ? "numeric" : "categorical";
}

std::optional<int32_t> ColumnSpec::CodeOf(std::string_view label) const {
  for (size_t i = 0; i < categories.size(); ++i) {
    if (categories[i] == label) return static_cast<int32_t>(i);
  }
  return std::nullopt;
}

std::optional<size_t> Schema::Find(std::string_view name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  return std::nullopt;
}

absl::StatusOr<size_t> Schema::IndexOf(std::string_view name) const {
  if (auto index = Find(name)) return *index;
  return absl::NotFoundError(
      absl::StrCat("unknown column '", std::string(name), "'"));
}

absl::StatusOr<std::vector<size_t>> Schema::IndicesOf(
    std::span<const std::string> names) const {
  std::vector<size_t> indices;
  indices.reserve(names.size());
  for (const std::string& name : names) {
    ASSIGN_OR_RETURN(size_t index, IndexOf(name));
    indices.push_back(index);
  }
  return indices;
}

std::vector<std::string> Schema::names() const {
  std::vector<std::string> out;
  out.reserve(columns.size());
  for (const ColumnSpec& spec : columns) out.push_back(spec.name);
  return out;
}

absl::Status Schema::Validate() const {
  std::set<std::string_view> seen_names;
  for (const ColumnSpec& spec : columns) {
    if (!seen_names.insert(spec.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate column name '", spec.name, "'"));
    }
    if (spec.is_numeric()) {
      if (!(spec.min <= spec.max)) {
        return absl::InvalidArgumentError(
            absl::StrCat("column '", spec.name, "': min > max"));
      }
      continue;
    }
    if (spec.categories.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("column '", spec.name, "': no categories"));
    }
    std::set<std::string_view> seen(spec.categories.begin(),
                                    spec.categories.end());
    if (seen.size() != spec.categories.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("column '", spec.name, "': duplicate categories"));
    }
  }
  return absl::OkStatus();
}

bool IsMissingCell(std::string_view cell) {
  cell = Trim(cell);
  static constexpr std::string_view kMissing[] = {
      "", "NA", "N/A", "na", "NaN", "nan", "null", "NULL", "None", "?"};
  return std::find(std::begin(kMissing), std::end(kMissing), cell) !=
         std::end(kMissing);
}

std::string FormatNumber(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

std::optional<double> ParseNumber(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

absl::StatusOr<Dataset> Dataset::Create(Schema schema,
                                        std::vector<Column> columns) {
  RETURN_IF_ERROR(schema.Validate());
  if (columns.size() != schema.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", columns.size(), " columns for a schema of ", schema.size()));
  }
  std::optional<size_t> num_rows;
  for (size_t c = 0; c < columns.size(); ++c) {
    const ColumnSpec& spec = schema.columns[c];
    Column& column = columns[c];
    size_t rows;
    if (spec.is_numeric()) {
      if (!column.codes.empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat("numeric column '", spec.name, "' carries codes"));
      }
      rows = column.values.size();
      for (double v : column.values) {
        if (!std::isfinite(v)) {
          return absl::InvalidArgumentError(
              absl::StrCat("non-finite value in column '", spec.name, "'"));
        }
      }
    } else {
      if (!column.values.empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "categorical column '", spec.name, "' carries numbers"));
      }
      rows = column.codes.size();
      const auto limit = static_cast<int32_t>(spec.categories.size());
      for (int32_t code : column.codes) {
        if (code < 0 || code >= limit) {
          return absl::InvalidArgumentError(
              absl::StrCat("code out of range in column '", spec.name, "'"));
        }
      }
    }
    if (num_rows.has_value() && *num_rows != rows) {
      return absl::InvalidArgumentError(
          absl::StrCat("column '", spec.name, "' has ", rows,
                       " rows, expected ", *num_rows));
    }
    num_rows = rows;
  }
  return Dataset(std::move(schema), std::move(columns), num_rows.value_or(0));
}

absl::StatusOr<Schema> InferSchema(const RawTable& table) {
  if (table.rows.empty()) {
    return absl::InvalidArgumentError("cannot infer a schema: no data rows");
  }
  Schema schema;
  for (size_t c = 0; c < table.header.size(); ++c) {
    ColumnSpec spec;
    spec.name = table.header[c];
    bool numeric = true;
    bool any_value = false;
    double lo = 0.0, hi = 0.0;
    std::set<std::string> labels;
    for (const auto& row : table.rows) {
      if (c >= row.size()) {
        return absl::InvalidArgumentError("ragged row in table");
      }
      const std::string& cell = row[c];
      if (IsMissingCell(cell)) continue;
      labels.insert(std::string(Trim(cell)));
      if (!numeric) continue;
      std::optional<double> value = ParseNumber(cell);
      if (!value.has_value()) {
        numeric = false;
        continue;
      }
      if (!any_value) {
        lo = hi = *value;
        any_value = true;
      } else {
        lo = std::min(lo, *value);
        hi = std::max(hi, *value);
      }
    }
    if (numeric && any_value) {
      spec.kind = ColumnKind::kNumeric;
      spec.min = lo;
      spec.max = hi;
    } else {
      spec.kind = ColumnKind::kCategorical;
      spec.categories.assign(labels.begin(), labels.end());
      if (spec.categories.empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat("column '", spec.name, "' has no values"));
      }
    }
    schema.columns.push_back(std::move(spec));
  }
  return schema;
}

absl::StatusOr<Dataset> Dataset::FromText(const RawTable& table,
                                          const Schema* schema,
                                          LoadStats* stats) {
  const size_t width = table.header.size();
  RawTable complete;
  complete.header = table.header;
  size_t dropped = 0;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != width) {
      return absl::InvalidArgumentError(
          absl::StrCat("ragged row ", r + 1, ": ", row.size(),
                       " cells under a ", width, "-column header"));
    }
    if (std::any_of(row.begin(), row.end(), IsMissingCell)) {
      ++dropped;
      continue;
    }
    complete.rows.push_back(row);
  }
  if (stats != nullptr) {
    stats->rows_read = table.rows.size();
    stats->rows_dropped_missing = dropped;
  }

  Schema target;
  if (schema != nullptr) {
    target = *schema;
    std::multiset<std::string> have(table.header.begin(), table.header.end());
    std::multiset<std::string> want;
    for (const ColumnSpec& spec : schema->columns) want.insert(spec.name);
    if (have != want) {
      return absl::InvalidArgumentError(
          absl::StrCat("header [", absl::StrJoin(table.header, ","),
                       "] does not match schema columns [",
                       absl::StrJoin(schema->names(), ","), "]"));
    }
  } else {
    ASSIGN_OR_RETURN(target, InferSchema(complete));
  }

  std::vector<Column> columns(target.size());
  for (size_t c = 0; c < target.size(); ++c) {
    ColumnSpec& spec = target.columns[c];
    const size_t source =
        std::find(table.header.begin(), table.header.end(), spec.name) -
        table.header.begin();
    Column& column = columns[c];
    if (spec.is_numeric()) {
      column.values.reserve(complete.rows.size());
      for (size_t r = 0; r < complete.rows.size(); ++r) {
        std::optional<double> value = ParseNumber(complete.rows[r][source]);
        if (!value.has_value()) {
          return absl::InvalidArgumentError(
              absl::StrCat("column '", spec.name, "' is numeric but cell '",
                           complete.rows[r][source], "' is not a number"));
        }
        column.values.push_back(*value);
      }
    } else {
      CategoryEncoder encoder(&spec.categories);
      column.codes.reserve(complete.rows.size());
      for (const auto& row : complete.rows) {
        column.codes.push_back(encoder.Encode(std::string(Trim(row[source]))));
      }
    }
  }
  return Create(std::move(target), std::move(columns));
}

absl::StatusOr<Dataset> Dataset::FromNumericRows(
    std::vector<std::string> names,
    const std::vector<std::vector<double>>& rows) {
  Schema schema;
  std::vector<Column> columns(names.size());
  for (size_t c = 0; c < names.size(); ++c) {
    ColumnSpec spec;
    spec.name = std::move(names[c]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != columns.size()) {
        return absl::InvalidArgumentError(absl::StrCat("ragged row ", r + 1));
      }
      const double v = rows[r][c];
      columns[c].values.push_back(v);
      if (r == 0) {
        spec.min = spec.max = v;
      } else {
        spec.min = std::min(spec.min, v);
        spec.max = std::max(spec.max, v);
      }
    }
    schema.columns.push_back(std::move(spec));
  }
  return Create(std::move(schema), std::move(columns));
}

std::string Dataset::CellText(size_t row, size_t c) const {
  const ColumnSpec& s = spec(c);
  if (s.is_numeric()) return FormatNumber(value(row, c));
  return s.categories[code(row, c)];
}

Dataset Dataset::SelectRows(std::span<const size_t> rows) const {
  std::vector<Column> columns(columns_.size());
  for (size_t c = 0; c < columns_.size(); ++c) {
    if (spec(c).is_numeric()) {
      columns[c].values.reserve(rows.size());
      for (size_t r : rows) columns[c].values.push_back(columns_[c].values[r]);
    } else {
      columns[c].codes.reserve(rows.size());
      for (size_t r : rows) columns[c].codes.push_back(columns_[c].codes[r]);
    }
  }
  return Dataset(schema_, std::move(columns), rows.size());
}

absl::StatusOr<Dataset> Dataset::SelectColumns(
    std::span<const std::string> names) const {
  ASSIGN_OR_RETURN(std::vector<size_t> indices, schema_.IndicesOf(names));
  Schema schema;
  std::vector<Column> columns;
  for (size_t index : indices) {
    schema.columns.push_back(schema_.columns[index]);
    columns.push_back(columns_[index]);
  }
  return Dataset(std::move(schema), std::move(columns), num_rows_);
}

absl::StatusOr<Dataset> Conform(const Dataset& dataset,
                                const Schema& reference) {
  if (dataset.num_columns() != reference.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "schema mismatch: [", absl::StrJoin(dataset.schema().names(), ","),
        "] vs [", absl::StrJoin(reference.names(), ","), "]"));
  }
  Schema schema = reference;
  std::vector<Column> columns(reference.size());
  for (size_t c = 0; c < reference.size(); ++c) {
    ColumnSpec& want = schema.columns[c];
    std::optional<size_t> source = dataset.schema().Find(want.name);
    if (!source.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("schema mismatch: column '", want.name, "' missing"));
    }
    const ColumnSpec& have = dataset.spec(*source);
    Column& out = columns[c];
    if (want.is_numeric()) {
      if (have.is_numeric()) {
        if (have.normalized && !want.normalized) {
          return absl::InvalidArgumentError(
              absl::StrCat("column '", want.name,
                           "' is normalized but the reference is not"));
        }
        out.values.assign(dataset.values(*source).begin(),
                          dataset.values(*source).end());
      } else {
        out.values.reserve(dataset.num_rows());
        for (int32_t code : dataset.codes(*source)) {
          std::optional<double> v = ParseNumber(have.categories[code]);
          if (!v.has_value()) {
            return absl::InvalidArgumentError(
                absl::StrCat("schema mismatch: column '", want.name,
                             "' is numeric in the reference but holds '",
                             have.categories[code], "'"));
          }
          out.values.push_back(*v);
        }
      }
    } else {
      CategoryEncoder encoder(&want.categories);
      out.codes.reserve(dataset.num_rows());
      for (size_t r = 0; r < dataset.num_rows(); ++r) {
        out.codes.push_back(encoder.Encode(dataset.CellText(r, *source)));
      }
    }
  }
  return Dataset::Create(std::move(schema), std::move(columns));
}

absl::Status CheckComparable(const Dataset& a, const Dataset& b) {
  RETURN_IF_ERROR(RequireSameColumns(b, a.schema()));
  for (size_t c = 0; c < a.num_columns(); ++c) {
    if (a.spec(c).is_numeric()) continue;
    const auto& ca = a.spec(c).categories;
    const auto& cb = b.spec(c).categories;
    if (!IsPrefix(ca, cb) && !IsPrefix(cb, ca)) {
      return absl::InvalidArgumentError(
          absl::StrCat("column '", a.spec(c).name,
                       "': category codes differ; conform the datasets first"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> Normalize(const Dataset& dataset,
                                  const Schema& reference) {
  RETURN_IF_ERROR(RequireSameColumns(dataset, reference));
  Schema schema = dataset.schema();
  std::vector<Column> columns(dataset.num_columns());
  for (size_t c = 0; c < dataset.num_columns(); ++c) {
    ColumnSpec& spec = schema.columns[c];
    const ColumnSpec& ref = reference.columns[c];
    columns[c] = dataset.column(c);
    if (!spec.is_numeric() || spec.normalized) continue;
    if (ref.normalized) {
      return absl::InvalidArgumentError(absl::StrCat(
          "column '", spec.name, "': reference range is already normalized"));
    }
    const double range = ref.max - ref.min;
    for (double& v : columns[c].values) {
      v = range > 0.0 ? std::clamp((v - ref.min) / range, 0.0, 1.0) : 0.0;
    }
    spec.min = 0.0;
    spec.max = range > 0.0 ? 1.0 : 0.0;
    spec.normalized = true;
  }
  return Dataset::Create(std::move(schema), std::move(columns));
}

double MixedDistance(const Dataset& a, size_t row_a, const Dataset& b,
                     size_t row_b) {
  double sum = 0.0;
  for (size_t c = 0; c < a.num_columns(); ++c) {
    if (a.spec(c).is_numeric()) {
      const double d = a.value(row_a, c) - b.value(row_b, c);
      sum += d * d;
    } else if (a.code(row_a, c) != b.code(row_b, c)) {
      sum += 1.0;
    }
  }
  return std::sqrt(sum);
}

int32_t BinIndex(double x, double min, double max, int bins) {
  if (!(max > min)) return 0;
  const double t = (x - min) * bins / (max - min);
  const double bin = std::ceil(t) - 1.0;
  return static_cast<int32_t>(std::clamp(bin, 0.0, bins - 1.0));
}

std::string BinLabel(int32_t bin) { return absl::StrCat("bin", bin); }

absl::StatusOr<std::vector<int32_t>> Discretize(const Dataset& dataset,
                                                size_t column, int bins,
                                                const Schema& reference) {
  if (bins < 2) {
    return absl::InvalidArgumentError("discretization needs at least 2 bins");
  }
  if (column >= dataset.num_columns()) {
    return absl::OutOfRangeError("column index out of range");
  }
  const ColumnSpec& spec = dataset.spec(column);
  if (!spec.is_numeric()) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot discretize non-numeric column '", spec.name, "'"));
  }
  ASSIGN_OR_RETURN(size_t ref_index, reference.IndexOf(spec.name));
  const ColumnSpec& ref = reference.columns[ref_index];
  if (!ref.is_numeric()) {
    return absl::InvalidArgumentError(
        absl::StrCat("reference column '", spec.name, "' is not numeric"));
  }
  double lo = ref.min, hi = ref.max;
  if (spec.normalized && !ref.normalized) {
    lo = 0.0;
    hi = ref.max > ref.min ? 1.0 : 0.0;
  }
  std::vector<int32_t> out;
  out.reserve(dataset.num_rows());
  for (double v : dataset.values(column)) {
    out.push_back(BinIndex(v, lo, hi, bins));
  }
  return out;
}

absl::StatusOr<Dataset> DiscretizeNumeric(const Dataset& dataset, int bins,
                                          const Schema& reference) {
  Schema schema = dataset.schema();
  std::vector<Column> columns(dataset.num_columns());
  for (size_t c = 0; c < dataset.num_columns(); ++c) {
    if (!dataset.spec(c).is_numeric()) {
      columns[c] = dataset.column(c);
      continue;
    }
    ASSIGN_OR_RETURN(columns[c].codes, Discretize(dataset, c, bins, reference));
    ColumnSpec& spec = schema.columns[c];
    spec.kind = ColumnKind::kCategorical;
    spec.min = spec.max = 0.0;
    spec.normalized = false;
    spec.categories.clear();
    for (int b = 0; b < bins; ++b) spec.categories.push_back(BinLabel(b));
  }
  return Dataset::Create(std::move(schema), std::move(columns));
}

double TestFractionFor(size_t num_rows) {
  return num_rows < kSmallDatasetRows ? 0.3 : 0.2;
}

absl::StatusOr<SplitPair> DynamicTrainTestSplit(
    const Dataset& dataset, uint64_t seed,
    std::optional<std::string> stratify) {
  const size_t n = dataset.num_rows();
  if (n < 10) {
    return absl::InvalidArgumentError(
        absl::StrCat("dataset too small to split: ", n, " rows (need 10)"));
  }
  SplitPair split;
  split.ratio = TestFractionFor(n);
  split.seed = seed;
  Rng rng(seed);

  // Strata keyed by the target cell; a single stratum when unstratified.
  std::map<double, std::vector<size_t>> strata;
  if (stratify.has_value()) {
    ASSIGN_OR_RETURN(size_t target, dataset.schema().IndexOf(*stratify));
    for (size_t r = 0; r < n; ++r) {
      const double key = dataset.spec(target).is_numeric()
                             ? dataset.value(r, target)
                             : static_cast<double>(dataset.code(r, target));
      strata[key].push_back(r);
    }
  } else {
    std::vector<size_t>& all = strata[0.0];
    all.resize(n);
    std::iota(all.begin(), all.end(), size_t{0});
  }
  for (auto& [key, rows] : strata) {
    rng.Shuffle(rows);
    const auto take = static_cast<size_t>(
        std::llround(static_cast<double>(rows.size()) * split.ratio));
    split.test_rows.insert(split.test_rows.end(), rows.begin(),
                           rows.begin() + take);
    split.train_rows.insert(split.train_rows.end(), rows.begin() + take,
                            rows.end());
  }
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  if (split.train_rows.empty() || split.test_rows.empty()) {
    return absl::InvalidArgumentError("split produced an empty side");
  }
  split.train = dataset.SelectRows(split.train_rows);
  split.test = dataset.SelectRows(split.test_rows);
  return split;
}

absl::StatusOr<Dataset> SampleRows(const Dataset& dataset, size_t n,
                                   bool with_replacement, uint64_t seed) {
  Rng rng(seed);
  if (with_replacement) {
    if (dataset.num_rows() == 0 && n > 0) {
      return absl::InvalidArgumentError("cannot sample from an empty dataset");
    }
    return dataset.SelectRows(
        SampleWithReplacement(dataset.num_rows(), n, rng));
  }
  if (n > dataset.num_rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot sample ", n, " rows without replacement from ",
                     dataset.num_rows()));
  }
  return dataset.SelectRows(
      SampleWithoutReplacement(dataset.num_rows(), n, rng));
}

}  // namespace tabeval
