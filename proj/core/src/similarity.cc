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

#include "tabeval/similarity.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "tabeval/parallel.h"
#include "tabeval/random.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<size_t> NumericColumns(const Dataset& dataset) {
  std::vector<size_t> out;
  for (size_t c = 0; c < dataset.num_columns(); ++c) {
    if (dataset.spec(c).is_numeric()) out.push_back(c);
  }
  return out;
}

std::vector<double> Sorted(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool IsConstant(const std::vector<double>& values) {
  return std::adjacent_find(values.begin(), values.end(),
                            std::not_equal_to<>()) == values.end();
}

double Mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

// Sweeps the merged support of two sorted samples and calls
// visit(x_current, x_next, count_a, count_b) after each distinct value.
template <typename Visit>
void SweepCdfs(const std::vector<double>& a, const std::vector<double>& b,
               Visit visit) {
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    double next = x;
    if (i < a.size()) next = a[i];
    if (j < b.size()) next = (i < a.size()) ? std::min(next, b[j]) : b[j];
    visit(x, next, i, j);
  }
}

// |i/n - j/m| computed from integers so equal CDFs give exactly 0.
double CdfGap(size_t i, size_t n, size_t j, size_t m) {
  const double lhs = static_cast<double>(i) * static_cast<double>(m);
  const double rhs = static_cast<double>(j) * static_cast<double>(n);
  return std::abs(lhs - rhs) /
         (static_cast<double>(n) * static_cast<double>(m));
}

std::vector<double> CodeFrequencies(std::span<const int32_t> codes,
                                    size_t num_categories) {
  std::vector<double> counts(num_categories, 0.0);
  for (int32_t c : codes) counts[static_cast<size_t>(c)] += 1.0;
  const double n = static_cast<double>(codes.size());
  if (n > 0) {
    for (double& c : counts) c /= n;
  }
  return counts;
}

size_t CategoryCount(const Dataset& a, const Dataset& b, size_t column) {
  return std::max(a.spec(column).categories.size(),
                  b.spec(column).categories.size());
}

double Entropy(const std::vector<int64_t>& counts, double n) {
  double h = 0.0;
  for (int64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

std::vector<int64_t> RunLengths(std::vector<int64_t> keys) {
  std::sort(keys.begin(), keys.end());
  std::vector<int64_t> counts;
  for (size_t i = 0; i < keys.size();) {
    size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    counts.push_back(static_cast<int64_t>(j - i));
    i = j;
  }
  return counts;
}

// Labels for NMI: categorical codes, or bins of numeric columns over the
// reference range.
absl::StatusOr<std::vector<std::vector<int32_t>>> LabelColumns(
    const Dataset& dataset, int bins, const Schema& reference) {
  std::vector<std::vector<int32_t>> out(dataset.num_columns());
  for (size_t c = 0; c < dataset.num_columns(); ++c) {
    if (dataset.spec(c).is_numeric()) {
      ASSIGN_OR_RETURN(out[c], Discretize(dataset, c, bins, reference));
    } else {
      auto codes = dataset.codes(c);
      out[c].assign(codes.begin(), codes.end());
    }
  }
  return out;
}

SquareMatrix MakeMatrix(std::vector<std::string> columns) {
  SquareMatrix m;
  const size_t p = columns.size();
  m.columns = std::move(columns);
  m.values.assign(p * p, kNaN);
  return m;
}

std::vector<std::string> NamesOf(const Dataset& dataset,
                                 const std::vector<size_t>& columns) {
  std::vector<std::string> names;
  for (size_t c : columns) names.push_back(dataset.spec(c).name);
  return names;
}

}  // namespace

std::string_view WassersteinModeName(WassersteinMode mode) {
  switch (mode) {
    case WassersteinMode::kExact1d:
      return "exact_1d";
    case WassersteinMode::kSampled:
      return "sampled";
    case WassersteinMode::kSinkhorn:
      return "sinkhorn";
  }
  return "unknown";
}

std::optional<WassersteinMode> ParseWassersteinMode(std::string_view name) {
  for (WassersteinMode mode :
       {WassersteinMode::kExact1d, WassersteinMode::kSampled,
        WassersteinMode::kSinkhorn}) {
    if (WassersteinModeName(mode) == name) return mode;
  }
  return std::nullopt;
}

double Wasserstein1d(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return kNaN;
  const std::vector<double> sa = Sorted(a), sb = Sorted(b);
  double total = 0.0;
  SweepCdfs(sa, sb, [&](double x, double next, size_t i, size_t j) {
    total += CdfGap(i, sa.size(), j, sb.size()) * (next - x);
  });
  return total;
}

absl::StatusOr<ColumnScores> WassersteinExact1d(const Dataset& original,
                                                const Dataset& synthetic) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  const std::vector<size_t> numeric = NumericColumns(original);
  if (numeric.empty()) {
    return absl::FailedPreconditionError(
        "Wasserstein distance needs at least one numeric column");
  }
  if (original.num_rows() == 0 || synthetic.num_rows() == 0) {
    return absl::InvalidArgumentError("Wasserstein distance on empty data");
  }
  ColumnScores out;
  out.columns = NamesOf(original, numeric);
  out.scores.resize(numeric.size());
  ParallelFor(numeric.size(), [&](size_t begin, size_t end) {
    for (size_t k = begin; k < end; ++k) {
      out.scores[k] = Wasserstein1d(original.values(numeric[k]),
                                    synthetic.values(numeric[k]));
    }
  });
  out.overall = Mean(out.scores);
  return out;
}

absl::StatusOr<ColumnScores> WassersteinSampled(const Dataset& original,
                                                const Dataset& synthetic,
                                                size_t sample_size,
                                                uint64_t seed,
                                                std::string* warning) {
  if (sample_size < 2) {
    return absl::InvalidArgumentError("Wasserstein sample size must be >= 2");
  }
  std::string note;
  auto subsample = [&](const Dataset& dataset, uint64_t stream,
                       std::string_view label) -> Dataset {
    if (dataset.num_rows() <= sample_size) {
      if (dataset.num_rows() < sample_size) {
        absl::StrAppend(&note, note.empty() ? "" : "; ", std::string(label),
                        " has ", dataset.num_rows(),
                        " rows, below sample size ", sample_size,
                        "; using all rows");
      }
      return dataset;
    }
    Rng rng(DeriveSeed(seed, stream));
    const std::vector<size_t> rows =
        SampleWithoutReplacement(dataset.num_rows(), sample_size, rng);
    return dataset.SelectRows(rows);
  };
  const Dataset a = subsample(original, 0, "original");
  const Dataset b = subsample(synthetic, 1, "synthetic");
  if (warning != nullptr) *warning = note;
  return WassersteinExact1d(a, b);
}

double KsStatistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return kNaN;
  const std::vector<double> sa = Sorted(a), sb = Sorted(b);
  double d = 0.0;
  SweepCdfs(sa, sb, [&](double, double, size_t i, size_t j) {
    d = std::max(d, CdfGap(i, sa.size(), j, sb.size()));
  });
  return d;
}

double CategoricalKsStatistic(std::span<const int32_t> a,
                              std::span<const int32_t> b,
                              size_t num_categories) {
  if (a.empty() || b.empty()) return kNaN;
  std::vector<int64_t> ca(num_categories, 0), cb(num_categories, 0);
  for (int32_t c : a) ++ca[static_cast<size_t>(c)];
  for (int32_t c : b) ++cb[static_cast<size_t>(c)];
  size_t i = 0, j = 0;
  double d = 0.0;
  for (size_t k = 0; k < num_categories; ++k) {
    i += static_cast<size_t>(ca[k]);
    j += static_cast<size_t>(cb[k]);
    d = std::max(d, CdfGap(i, a.size(), j, b.size()));
  }
  return d;
}

absl::StatusOr<ColumnScores> KsSimilarity(const Dataset& original,
                                          const Dataset& synthetic) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  if (original.num_columns() == 0) {
    return absl::InvalidArgumentError(
        "KS similarity needs at least one column");
  }
  if (original.num_rows() == 0 || synthetic.num_rows() == 0) {
    return absl::InvalidArgumentError("KS similarity on empty data");
  }
  ColumnScores out;
  out.columns = original.schema().names();
  out.scores.resize(original.num_columns());
  ParallelFor(original.num_columns(), [&](size_t begin, size_t end) {
    for (size_t c = begin; c < end; ++c) {
      const double d =
          original.spec(c).is_numeric()
              ? KsStatistic(original.values(c), synthetic.values(c))
              : CategoricalKsStatistic(original.codes(c), synthetic.codes(c),
                                       CategoryCount(original, synthetic, c));
      out.scores[c] = 1.0 - d;
    }
  });
  out.overall = Mean(out.scores);
  return out;
}

std::string_view CorrelationMethodName(CorrelationMethod method) {
  return method == CorrelationMethod::kPearson ? "pearson" : "spearman";
}

double PearsonCorrelation(std::span<const double> a,
                          std::span<const double> b) {
  const size_t n = a.size();
  if (n != b.size() || n < 2) return kNaN;
  std::vector<std::pair<double, double>> pairs(n);
  for (size_t i = 0; i < n; ++i) pairs[i] = {a[i], b[i]};
  std::sort(pairs.begin(), pairs.end());
  double sum_a = 0.0, sum_b = 0.0;
  for (const auto& [x, y] : pairs) {
    sum_a += x;
    sum_b += y;
  }
  const double mean_a = sum_a / static_cast<double>(n);
  const double mean_b = sum_b / static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (const auto& [x, y] : pairs) {
    const double dx = x - mean_a, dy = y - mean_b;
    saa += dx * dx;
    sbb += dy * dy;
    sab += dx * dy;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return kNaN;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> AverageRanks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t x, size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(n);
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j; their average is (i + j + 1) / 2.
    const double rank = static_cast<double>(i + j + 1) / 2.0;
    for (size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

absl::StatusOr<CorrelationResult> CorrelationSimilarity(
    const Dataset& original, const Dataset& synthetic, CorrelationMethod method,
    std::span<const std::string> ordinal_columns) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  std::vector<size_t> used;
  for (size_t c = 0; c < original.num_columns(); ++c) {
    const ColumnSpec& spec = original.spec(c);
    if (spec.is_numeric()) {
      used.push_back(c);
    } else if (method == CorrelationMethod::kSpearman &&
               std::find(ordinal_columns.begin(), ordinal_columns.end(),
                         spec.name) != ordinal_columns.end()) {
      used.push_back(c);
    }
  }
  for (const std::string& name : ordinal_columns) {
    ASSIGN_OR_RETURN(size_t c, original.schema().IndexOf(name));
    (void)c;
  }
  if (used.size() < 2) {
    return absl::FailedPreconditionError(
        absl::StrCat(std::string(CorrelationMethodName(method)),
                     " correlation needs at least 2 ", "usable columns, found ",
                     used.size()));
  }

  auto prepare = [&](const Dataset& dataset) {
    std::vector<std::vector<double>> cols(used.size());
    for (size_t k = 0; k < used.size(); ++k) {
      const size_t c = used[k];
      if (dataset.spec(c).is_numeric()) {
        auto v = dataset.values(c);
        cols[k].assign(v.begin(), v.end());
      } else {
        for (int32_t code : dataset.codes(c)) {
          cols[k].push_back(static_cast<double>(code));
        }
      }
      if (method == CorrelationMethod::kSpearman) {
        cols[k] = AverageRanks(cols[k]);
      }
    }
    return cols;
  };
  const auto orig_cols = prepare(original);
  const auto synth_cols = prepare(synthetic);

  CorrelationResult result;
  result.original = MakeMatrix(NamesOf(original, used));
  result.synthetic = MakeMatrix(NamesOf(original, used));
  const size_t p = used.size();
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < p; ++i) {
    for (size_t j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
  }
  ParallelFor(pairs.size(), [&](size_t begin, size_t end) {
    for (size_t k = begin; k < end; ++k) {
      const auto [i, j] = pairs[k];
      const double o = PearsonCorrelation(orig_cols[i], orig_cols[j]);
      const double s = PearsonCorrelation(synth_cols[i], synth_cols[j]);
      result.original.values[i * p + j] = result.original.values[j * p + i] = o;
      result.synthetic.values[i * p + j] = result.synthetic.values[j * p + i] =
          s;
    }
  });
  for (size_t i = 0; i < p; ++i) {
    result.original.values[i * p + i] = IsConstant(orig_cols[i]) ? kNaN : 1.0;
    result.synthetic.values[i * p + i] = IsConstant(synth_cols[i]) ? kNaN : 1.0;
  }

  double total = 0.0;
  for (const auto& [i, j] : pairs) {
    const double o = result.original.at(i, j);
    const double s = result.synthetic.at(i, j);
    if (std::isnan(o) || std::isnan(s)) {
      result.warnings.push_back(
          absl::StrCat("skipped pair (", result.original.columns[i], ", ",
                       result.original.columns[j], "): zero variance in ",
                       std::isnan(o) ? "original" : "synthetic"));
      continue;
    }
    total += 1.0 - std::abs(s - o) / 2.0;
    ++result.pairs_used;
  }
  if (result.pairs_used == 0) {
    return absl::FailedPreconditionError(
        absl::StrCat("no ", std::string(CorrelationMethodName(method)),
                     " correlation pair is defined in both datasets"));
  }
  result.overall = total / static_cast<double>(result.pairs_used);
  return result;
}

double NormalizedMutualInformation(std::span<const int32_t> x,
                                   std::span<const int32_t> y) {
  const size_t n = x.size();
  if (n == 0 || n != y.size()) return kNaN;
  std::vector<int64_t> kx(x.begin(), x.end()), ky(y.begin(), y.end());
  std::vector<int64_t> kxy(n);
  for (size_t i = 0; i < n; ++i) {
    kxy[i] = (static_cast<int64_t>(x[i]) << 32) |
             static_cast<int64_t>(static_cast<uint32_t>(y[i]));
  }
  const double dn = static_cast<double>(n);
  const double hx = Entropy(RunLengths(std::move(kx)), dn);
  const double hy = Entropy(RunLengths(std::move(ky)), dn);
  if (!(hx > 0.0) || !(hy > 0.0)) return 0.0;
  const double hxy = Entropy(RunLengths(std::move(kxy)), dn);
  const double mi = std::max(0.0, hx + hy - hxy);
  return std::clamp(2.0 * mi / (hx + hy), 0.0, 1.0);
}

absl::StatusOr<NmiResult> NmiSimilarity(const Dataset& original,
                                        const Dataset& synthetic, int bins) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  if (original.num_columns() < 2) {
    return absl::FailedPreconditionError("NMI needs at least 2 columns");
  }
  if (original.num_rows() == 0 || synthetic.num_rows() == 0) {
    return absl::InvalidArgumentError("NMI on empty data");
  }
  ASSIGN_OR_RETURN(auto orig_labels,
                   LabelColumns(original, bins, original.schema()));
  ASSIGN_OR_RETURN(auto synth_labels,
                   LabelColumns(synthetic, bins, original.schema()));
  const size_t p = original.num_columns();
  NmiResult result;
  result.original = MakeMatrix(original.schema().names());
  result.synthetic = MakeMatrix(original.schema().names());
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < p; ++i) {
    for (size_t j = i; j < p; ++j) pairs.emplace_back(i, j);
  }
  ParallelFor(pairs.size(), [&](size_t begin, size_t end) {
    for (size_t k = begin; k < end; ++k) {
      const auto [i, j] = pairs[k];
      const double o =
          NormalizedMutualInformation(orig_labels[i], orig_labels[j]);
      const double s =
          NormalizedMutualInformation(synth_labels[i], synth_labels[j]);
      result.original.values[i * p + j] = result.original.values[j * p + i] = o;
      result.synthetic.values[i * p + j] = result.synthetic.values[j * p + i] =
          s;
    }
  });
  for (size_t i = 0; i < p; ++i) {
    if (result.original.at(i, i) == 0.0) {
      result.warnings.push_back(
          absl::StrCat("column '", result.original.columns[i],
                       "' has zero entropy in original; its NMI is 0"));
    }
    if (result.synthetic.at(i, i) == 0.0) {
      result.warnings.push_back(
          absl::StrCat("column '", result.original.columns[i],
                       "' has zero entropy in synthetic; its NMI is 0"));
    }
  }
  double total = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < p; ++i) {
    for (size_t j = i + 1; j < p; ++j) {
      total +=
          1.0 - std::abs(result.synthetic.at(i, j) - result.original.at(i, j));
      ++count;
    }
  }
  result.overall = total / static_cast<double>(count);
  return result;
}

double JensenShannonDivergence(std::span<const double> p,
                               std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) return kNaN;
  double total = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    const double m = (p[k] + q[k]) / 2.0;
    if (p[k] > 0.0) total += 0.5 * p[k] * std::log2(p[k] / m);
    if (q[k] > 0.0) total += 0.5 * q[k] * std::log2(q[k] / m);
  }
  return std::clamp(total, 0.0, 1.0);
}

absl::StatusOr<ColumnScores> JsSimilarity(const Dataset& original,
                                          const Dataset& synthetic, int bins) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  if (original.num_columns() == 0) {
    return absl::InvalidArgumentError(
        "JS similarity needs at least one column");
  }
  if (original.num_rows() == 0 || synthetic.num_rows() == 0) {
    return absl::InvalidArgumentError("JS similarity on empty data");
  }
  ColumnScores out;
  out.columns = original.schema().names();
  out.scores.resize(original.num_columns());
  for (size_t c = 0; c < original.num_columns(); ++c) {
    std::vector<double> p, q;
    if (original.spec(c).is_numeric()) {
      ASSIGN_OR_RETURN(auto a,
                       Discretize(original, c, bins, original.schema()));
      ASSIGN_OR_RETURN(auto b,
                       Discretize(synthetic, c, bins, original.schema()));
      p = CodeFrequencies(a, static_cast<size_t>(bins));
      q = CodeFrequencies(b, static_cast<size_t>(bins));
    } else {
      const size_t k = CategoryCount(original, synthetic, c);
      p = CodeFrequencies(original.codes(c), k);
      q = CodeFrequencies(synthetic.codes(c), k);
    }
    out.scores[c] = 1.0 - JensenShannonDivergence(p, q);
  }
  out.overall = Mean(out.scores);
  return out;
}

ColumnStats ComputeColumnStats(std::span<const double> values) {
  ColumnStats stats;
  if (values.empty()) {
    stats.mean = stats.median = stats.variance = kNaN;
    return stats;
  }
  const std::vector<double> sorted = Sorted(values);
  const size_t n = sorted.size();
  stats.mean = Mean(sorted);
  stats.median =
      n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  double ss = 0.0;
  for (double v : sorted) ss += (v - stats.mean) * (v - stats.mean);
  stats.variance = ss / static_cast<double>(n);
  return stats;
}

absl::StatusOr<BasicStatsResult> BasicStatsDiff(const Dataset& original,
                                                const Dataset& synthetic) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  const std::vector<size_t> numeric = NumericColumns(original);
  if (numeric.empty()) {
    return absl::FailedPreconditionError(
        "basic statistics need at least one numeric column");
  }
  if (original.num_rows() == 0 || synthetic.num_rows() == 0) {
    return absl::InvalidArgumentError("basic statistics on empty data");
  }
  BasicStatsResult result;
  result.columns = NamesOf(original, numeric);
  double mean = 0.0, median = 0.0, var = 0.0;
  for (size_t c : numeric) {
    const ColumnStats o = ComputeColumnStats(original.values(c));
    const ColumnStats s = ComputeColumnStats(synthetic.values(c));
    result.original.push_back(o);
    result.synthetic.push_back(s);
    mean += std::abs(s.mean - o.mean);
    median += std::abs(s.median - o.median);
    var += std::abs(s.variance - o.variance);
  }
  const double k = static_cast<double>(numeric.size());
  result.overall = {mean / k, median / k, var / k};
  return result;
}

WassersteinMode ResolveWassersteinMode(const SimilarityOptions& options,
                                       size_t rows) {
  if (options.wasserstein_mode.has_value()) return *options.wasserstein_mode;
  return rows > options.auto_sinkhorn_rows ? WassersteinMode::kSinkhorn
                                           : WassersteinMode::kExact1d;
}

absl::StatusOr<double> WassersteinByMode(const Dataset& original_norm,
                                         const Dataset& synthetic_norm,
                                         WassersteinMode mode,
                                         const SimilarityOptions& options) {
  switch (mode) {
    case WassersteinMode::kExact1d: {
      ASSIGN_OR_RETURN(ColumnScores s,
                       WassersteinExact1d(original_norm, synthetic_norm));
      return s.overall;
    }
    case WassersteinMode::kSampled: {
      ASSIGN_OR_RETURN(
          ColumnScores s,
          WassersteinSampled(original_norm, synthetic_norm,
                             options.wasserstein_sample, options.seed));
      return s.overall;
    }
    case WassersteinMode::kSinkhorn: {
      ASSIGN_OR_RETURN(SinkhornResult r,
                       SinkhornDistance(original_norm, synthetic_norm,
                                        options.sinkhorn, options.seed));
      return r.cost;
    }
  }
  return absl::InvalidArgumentError("unknown Wasserstein mode");
}

absl::StatusOr<SimilarityReport> EvaluateSimilarity(
    const Dataset& original, const Dataset& synthetic,
    const SimilarityOptions& options) {
  RETURN_IF_ERROR(CheckComparable(original, synthetic));
  ASSIGN_OR_RETURN(Dataset a, Normalize(original, original.schema()));
  ASSIGN_OR_RETURN(Dataset b, Normalize(synthetic, original.schema()));
  SimilarityReport report;
  report.wasserstein_mode = ResolveWassersteinMode(
      options, std::max(original.num_rows(), synthetic.num_rows()));
  ASSIGN_OR_RETURN(report.wasserstein,
                   WassersteinByMode(a, b, report.wasserstein_mode, options));
  ASSIGN_OR_RETURN(ColumnScores ks, KsSimilarity(a, b));
  report.ks = ks.overall;
  ASSIGN_OR_RETURN(CorrelationResult pearson,
                   CorrelationSimilarity(a, b, CorrelationMethod::kPearson));
  report.corr_pearson = pearson.overall;
  ASSIGN_OR_RETURN(CorrelationResult spearman,
                   CorrelationSimilarity(a, b, CorrelationMethod::kSpearman,
                                         options.ordinal_columns));
  report.corr_spearman = spearman.overall;
  ASSIGN_OR_RETURN(NmiResult nmi, NmiSimilarity(a, b, options.bins));
  report.nmi = nmi.overall;
  ASSIGN_OR_RETURN(ColumnScores js, JsSimilarity(a, b, options.bins));
  report.js = js.overall;
  ASSIGN_OR_RETURN(BasicStatsResult stats, BasicStatsDiff(a, b));
  report.stats_diff = stats.overall;
  return report;
}

}  // namespace tabeval
