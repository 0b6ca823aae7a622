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

// tabeval evaluate --config run.json [--seed N] [--output DIR]
//                  [--format json|markdown|both]
// tabeval generate --model gmm|copula|random --input data.csv --n ROWS
//                  --seed N [--output out.csv] [--schema schema.json]

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tabeval/config.h"
#include "tabeval/csv.h"
#include "tabeval/evaluation.h"
#include "tabeval/generators.h"

namespace {

int Fail(const absl::Status& status) {
  std::cerr << "tabeval: " << status.message() << "\n";
  return 1;
}

int RunEvaluate(const std::string& config_path, std::optional<uint64_t> seed,
                const std::string& output, tabeval::ReportFormat format) {
  absl::StatusOr<tabeval::EvalConfig> config =
      tabeval::LoadConfigFile(config_path);
  if (!config.ok()) return Fail(config.status());
  if (seed.has_value()) config->seed = *seed;
  const std::string dir =
      output.empty() ? config->Resolve(config->output_dir) : output;
  absl::StatusOr<tabeval::EvaluationResult> result =
      tabeval::RunEvaluation(*config);
  if (!result.ok()) return Fail(result.status());
  absl::StatusOr<std::vector<std::string>> written =
      tabeval::WriteOutputs(*result, dir, format);
  if (!written.ok()) return Fail(written.status());
  for (const std::string& path : *written) std::cout << path << "\n";
  return 0;
}

int RunGenerate(const std::string& model, const std::string& input,
                const std::string& schema_path, size_t rows, uint64_t seed,
                std::string output) {
  const std::optional<tabeval::GeneratorKind> kind =
      tabeval::ParseGeneratorKind(model);
  if (!kind.has_value()) {
    return Fail(absl::InvalidArgumentError(
        absl::StrCat("unknown model '", model, "'")));
  }
  tabeval::Schema schema;
  const tabeval::Schema* schema_ptr = nullptr;
  if (!schema_path.empty()) {
    absl::StatusOr<tabeval::Schema> loaded =
        tabeval::LoadSchemaFile(schema_path);
    if (!loaded.ok()) return Fail(loaded.status());
    schema = *std::move(loaded);
    schema_ptr = &schema;
  }
  absl::StatusOr<tabeval::Dataset> data = tabeval::LoadCsv(input, schema_ptr);
  if (!data.ok()) return Fail(data.status());
  absl::StatusOr<tabeval::Dataset> synthetic =
      tabeval::Generate(*kind, *data, rows, seed);
  if (!synthetic.ok()) return Fail(synthetic.status());
  if (output.empty()) {
    std::cout << tabeval::FormatCsv(*synthetic);
    return 0;
  }
  const absl::Status status = tabeval::WriteCsv(*synthetic, output);
  if (!status.ok()) return Fail(status);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic tabular data evaluation"};
  app.require_subcommand(1);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Run privacy, similarity and utility metrics");
  std::string config_path;
  std::optional<uint64_t> eval_seed;
  std::string eval_output;
  tabeval::ReportFormat format = tabeval::ReportFormat::kBoth;
  const std::map<std::string, tabeval::ReportFormat> formats = {
      {"json", tabeval::ReportFormat::kJson},
      {"markdown", tabeval::ReportFormat::kMarkdown},
      {"both", tabeval::ReportFormat::kBoth}};
  evaluate->add_option("--config", config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--seed", eval_seed, "Overrides the config seed");
  evaluate->add_option("--output", eval_output,
                       "Output directory (default: config output_dir)");
  evaluate->add_option("--format", format, "json, markdown or both")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  CLI::App* generate =
      app.add_subcommand("generate", "Fit a baseline model and sample rows");
  std::string model, input, schema_path, gen_output;
  size_t rows = 0;
  uint64_t gen_seed = 0;
  generate->add_option("--model", model, "gmm, copula or random")
      ->required()
      ->check(CLI::IsMember({"gmm", "copula", "random"}));
  generate->add_option("--input", input, "Original CSV")
      ->required()
      ->check(CLI::ExistingFile);
  generate->add_option("--n", rows, "Rows to sample")
      ->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed, "Random seed")->required();
  generate->add_option("--output", gen_output, "Output CSV (default stdout)");
  generate->add_option("--schema", schema_path, "Schema sidecar JSON");

  CLI11_PARSE(app, argc, argv);

  if (*evaluate)
    return RunEvaluate(config_path, eval_seed, eval_output, format);
  return RunGenerate(model, input, schema_path, rows, gen_seed, gen_output);
}
