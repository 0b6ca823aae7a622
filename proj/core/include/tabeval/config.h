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

// Evaluation run configuration, read from JSON:
//
//   {
//     "original": "diabetes.csv",
//     "synthetic": {"gmm": "gmm.csv", "random": "random.csv"},
//     "generate": {"copula": {"model": "copula"}},
//     "keys": ["Age", "Pregnancies"], "target": "Outcome",
//     "aux_split": {"side_a": ["Age"], "side_b": ["BMI"]},
//     "secret": "Outcome",
//     "seed": 42
//   }
//
// Relative paths resolve against the directory of the config file. Only
// "original" and "seed" are required; see EvalConfig for the rest.

#ifndef TABEVAL_CONFIG_H_
#define TABEVAL_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tabeval/attack_privacy.h"
#include "tabeval/generators.h"
#include "tabeval/ml_utility.h"
#include "tabeval/similarity.h"
#include "tabeval/sinkhorn.h"
#include "tabeval/tabular.h"

namespace tabeval {

struct SyntheticSource {
  std::string name;
  std::string path;
};

// A synthetic table produced in-run from the original.
struct GeneratedSource {
  std::string name;
  GeneratorKind kind = GeneratorKind::kRandom;
  // Rows to draw; 0 means the original's row count.
  size_t rows = 0;
  GeneratorOptions options;
};

struct EvalConfig {
  std::string original_path;
  // Optional schema sidecar for the original (see SchemaToJson).
  std::string schema_path;
  // Evaluated in order: files first, then generated tables.
  std::vector<SyntheticSource> synthetic;
  std::vector<GeneratedSource> generate;

  std::vector<std::string> keys;
  std::string target;
  AuxSplit aux_split;
  std::string secret;
  // Attribute-inference knowledge; empty means every column but the secret.
  std::vector<std::string> aux_columns;

  int64_t n_attacks = 500;
  // Unset: 1, or 10 when the original exceeds attack_sample_threshold rows.
  std::optional<size_t> n_neighbors;
  SinglingOutMode singling_out_mode = SinglingOutMode::kMultivariate;
  double confidence = 0.95;
  double inference_tolerance = 0.05;
  // Also attack every column in turn, with all other columns as knowledge.
  bool inference_sweep = false;

  int bins = kDefaultBins;
  std::optional<WassersteinMode> wasserstein_mode;
  size_t wasserstein_sample = 20;
  size_t auto_sinkhorn_rows = 20000;
  SinkhornOptions sinkhorn;
  std::vector<std::string> ordinal_columns;

  std::vector<Learner> learners;

  // Large-data policy: above the threshold, attacks run on samples of
  // attack_sample_rows records per table; NNAA compares at most
  // nnaa_max_rows rows per side.
  size_t attack_sample_threshold = 10000;
  size_t attack_sample_rows = 1000;
  size_t nnaa_max_rows = 10000;

  uint64_t seed = 0;
  std::string output_dir = "tabeval_out";
  // Worker threads; 0 keeps the library default.
  size_t threads = 0;

  // Directory that relative paths resolve against; not serialized.
  std::string base_dir;

  std::string Resolve(const std::string& path) const;
};

// Parses and checks value ranges; column names are checked separately.
absl::StatusOr<EvalConfig> ParseConfig(std::string_view json);
absl::StatusOr<EvalConfig> LoadConfigFile(const std::string& path);

// Canonical JSON form, every field spelled out.
std::string ConfigToJson(const EvalConfig& config);

// Every referenced column must exist in the original's schema.
absl::Status ValidateColumns(const EvalConfig& config, const Schema& schema);

// Learners run when none are configured: logistic regression and k-NN with
// default hyperparameters.
std::vector<Learner> EffectiveLearners(const EvalConfig& config);

size_t EffectiveNeighbors(const EvalConfig& config, size_t original_rows);

}  // namespace tabeval

#endif  // TABEVAL_CONFIG_H_
