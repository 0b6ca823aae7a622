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

// End-to-end evaluation: loads the tables named by an EvalConfig and runs
// privacy, similarity and utility metrics for every synthetic table.

#ifndef TABEVAL_EVALUATION_H_
#define TABEVAL_EVALUATION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "tabeval/config.h"
#include "tabeval/report.h"
#include "tabeval/tabular.h"

namespace tabeval {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Wall-clock seconds per stage, kept out of the report so that reports stay
// reproducible.
struct RunTimings {
  std::vector<std::pair<std::string, double>> stages;
  double total_seconds = 0.0;
};

std::string TimingsToJson(const RunTimings& timings);

struct EvaluationResult {
  MetricReport report;
  RunTimings timings;
};

// Metric seed for one model; depends on the model name, not its position.
uint64_t ModelSeed(uint64_t master, std::string_view model_name);

// Runs every configured metric for one synthetic table, already conformed
// to the original's schema. `attack_original` is the (possibly sampled)
// original used by the attacks. Metric failures become skipped entries.
ModelReport EvaluateModel(const EvalConfig& config, const Dataset& original,
                          const Dataset& attack_original,
                          const Dataset& synthetic, std::string name,
                          std::string source, RunTimings* timings = nullptr);

// Loads inputs, validates columns, generates in-run tables and evaluates
// every model. Errors only for invalid configuration or unreadable or
// mismatched inputs.
absl::StatusOr<EvaluationResult> RunEvaluation(const EvalConfig& config);

enum class ReportFormat { kJson, kMarkdown, kBoth };

// Writes report.json and/or report.md, plots/*.csv and timings.json into
// `dir`. Returns the paths written.
absl::StatusOr<std::vector<std::string>> WriteOutputs(
    const EvaluationResult& result, const std::string& dir,
    ReportFormat format);

}  // namespace tabeval

#endif  // TABEVAL_EVALUATION_H_
