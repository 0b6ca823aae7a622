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

// Evaluation results and their JSON, Markdown and plot-data renderings.

#ifndef TABEVAL_REPORT_H_
#define TABEVAL_REPORT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tabeval/attack_privacy.h"
#include "tabeval/config.h"
#include "tabeval/ml_utility.h"
#include "tabeval/similarity.h"

namespace tabeval {

// Reason codes for skipped metrics.
inline constexpr std::string_view kSkipNotConfigured = "not_configured";

// Maps a status to a machine-readable reason code, e.g. "invalid_argument".
std::string ReasonCode(const absl::Status& status);

// A metric value, or why it was not computed.
template <typename T>
struct Outcome {
  std::optional<T> value;
  std::string reason;
  std::string detail;

  static Outcome Of(T v) { return Outcome{std::move(v), "", ""}; }
  static Outcome Skipped(std::string reason, std::string detail) {
    return Outcome{std::nullopt, std::move(reason), std::move(detail)};
  }
  static Outcome From(absl::StatusOr<T> result) {
    if (result.ok()) return Of(*std::move(result));
    return Skipped(ReasonCode(result.status()),
                   std::string(result.status().message()));
  }
  bool ok() const { return value.has_value(); }
};

struct UtilityEntry {
  std::string learner;
  Outcome<UtilityReport> result;
};

struct ModelReport {
  std::string name;
  // File path, or "generated:<model>" for in-run generation.
  std::string source;
  size_t rows = 0;
  size_t rows_dropped_missing = 0;

  Outcome<double> disco;
  Outcome<double> rep_u;
  Outcome<double> nndr;
  Outcome<double> dcr;
  Outcome<double> nnaa;
  size_t nnaa_rows = 0;

  Outcome<RiskEstimate> singling_out;
  Outcome<RiskEstimate> linkability;
  Outcome<RiskEstimate> inference;
  // Per-column inference risk; empty unless inference_sweep is set.
  std::vector<std::pair<std::string, Outcome<RiskEstimate>>> inference_sweep;

  std::string wasserstein_mode;
  Outcome<double> wasserstein;
  // Every mode side by side, for the mode comparison plot.
  std::vector<std::pair<std::string, Outcome<double>>> wasserstein_modes;
  Outcome<ColumnScores> ks;
  Outcome<CorrelationResult> pearson;
  Outcome<CorrelationResult> spearman;
  Outcome<NmiResult> nmi;
  Outcome<ColumnScores> js;
  Outcome<BasicStatsResult> basic_stats;

  std::vector<UtilityEntry> utility;
  std::vector<std::string> notes;
};

struct MetricReport {
  std::string tool_version;
  EvalConfig config;
  std::string original_path;
  size_t original_rows = 0;
  size_t original_columns = 0;
  size_t original_rows_dropped_missing = 0;
  // Large-data policy decisions and other run-level notes.
  std::vector<std::string> notes;
  std::vector<ModelReport> models;
};

// Stable JSON: fixed key order, NaN written as null, two-space indent.
std::string ReportToJson(const MetricReport& report);
absl::StatusOr<MetricReport> ReportFromJson(std::string_view json);

// Model-by-metric tables: distance privacy, attacks, similarity, utility.
std::string ReportToMarkdown(const MetricReport& report);

// Rounds to `digits` decimals and prints the shortest form with at least
// one decimal: 0.99234 -> "0.9923", 1 -> "1.0".
std::string RoundedText(double value, int digits = 4);

// "risk,CI=(low, high)" with RoundedText values.
std::string RiskCell(const RiskEstimate& risk);

// Writes plot-ready CSV files into `dir`: ks_overall.csv, ks_columns.csv,
// corr_<method>_<model>.csv and corr_<method>_original.csv,
// nmi_<model>.csv and nmi_original.csv, basic_stats.csv and
// wasserstein_modes.csv. Returns the file names written.
absl::StatusOr<std::vector<std::string>> EmitPlotData(
    const MetricReport& report, const std::string& dir);

}  // namespace tabeval

#endif  // TABEVAL_REPORT_H_
