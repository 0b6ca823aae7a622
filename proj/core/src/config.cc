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

#include "tabeval/config.h"

#include <filesystem>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "nlohmann/json.hpp"
#include "tabeval/csv.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

using Json = nlohmann::ordered_json;

absl::Status CheckKeys(const Json& object, std::string_view where,
                       const std::set<std::string>& allowed) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(where), " must be a JSON object"));
  }
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown field '", key, "' in ", std::string(where),
                       "; expected ", absl::StrJoin(allowed, ", ")));
    }
  }
  return absl::OkStatus();
}

// Reads object[key] into `out` when present and not null.
template <typename T>
absl::Status Read(const Json& object, const std::string& key, T& out) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return absl::OkStatus();
  try {
    out = it->template get<T>();
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("field '", key, "': ", e.what()));
  }
  return absl::OkStatus();
}

template <typename T>
absl::Status ReadOptional(const Json& object, const std::string& key,
                          std::optional<T>& out) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) {
    out.reset();
    return absl::OkStatus();
  }
  T value{};
  RETURN_IF_ERROR(Read(object, key, value));
  out = value;
  return absl::OkStatus();
}

absl::StatusOr<Learner> ParseLearner(const Json& j) {
  RETURN_IF_ERROR(
      CheckKeys(j, "learner",
                {"kind", "learning_rate", "iterations", "l2", "k", "seed"}));
  Learner learner;
  std::string kind = std::string(LearnerKindName(learner.kind));
  RETURN_IF_ERROR(Read(j, "kind", kind));
  auto parsed = ParseLearnerKind(kind);
  if (!parsed.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown learner '", kind,
                     "'; expected logistic_regression or k_nearest_neighbors"));
  }
  learner.kind = *parsed;
  RETURN_IF_ERROR(Read(j, "learning_rate", learner.learning_rate));
  RETURN_IF_ERROR(Read(j, "iterations", learner.iterations));
  RETURN_IF_ERROR(Read(j, "l2", learner.l2));
  RETURN_IF_ERROR(Read(j, "k", learner.k));
  RETURN_IF_ERROR(Read(j, "seed", learner.seed));
  if (learner.iterations < 1 || learner.k < 1) {
    return absl::InvalidArgumentError("learner iterations and k must be >= 1");
  }
  if (!(learner.learning_rate > 0.0) || learner.l2 < 0.0) {
    return absl::InvalidArgumentError(
        "learner learning_rate must be > 0 and l2 >= 0");
  }
  return learner;
}

absl::StatusOr<GeneratedSource> ParseGenerated(const std::string& name,
                                               const Json& j) {
  RETURN_IF_ERROR(CheckKeys(j, absl::StrCat("generate.", name),
                            {"model", "rows", "components", "max_iter", "tol",
                             "regularization", "with_replacement"}));
  GeneratedSource source;
  source.name = name;
  std::string model;
  RETURN_IF_ERROR(Read(j, "model", model));
  auto kind = ParseGeneratorKind(model);
  if (!kind.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("generate.", name, ": unknown model '", model,
                     "'; expected gmm, copula or random"));
  }
  source.kind = *kind;
  RETURN_IF_ERROR(Read(j, "rows", source.rows));
  RETURN_IF_ERROR(Read(j, "components", source.options.gmm.components));
  RETURN_IF_ERROR(Read(j, "max_iter", source.options.gmm.max_iter));
  RETURN_IF_ERROR(Read(j, "tol", source.options.gmm.tol));
  RETURN_IF_ERROR(Read(j, "regularization", source.options.gmm.regularization));
  RETURN_IF_ERROR(Read(j, "with_replacement", source.options.with_replacement));
  if (source.options.gmm.components < 1 || source.options.gmm.max_iter < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "generate.", name, ": components and max_iter must be >= 1"));
  }
  return source;
}

absl::Status CheckColumns(const Schema& schema, std::string_view field,
                          const std::vector<std::string>& names) {
  for (const std::string& name : names) {
    if (!schema.Find(name).has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("config field '", std::string(field),
                       "' names unknown column '", name, "'"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

std::string EvalConfig::Resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

absl::StatusOr<EvalConfig> ParseConfig(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    return absl::InvalidArgumentError(absl::StrCat("config: ", e.what()));
  }
  RETURN_IF_ERROR(CheckKeys(j, "config",
                            {"original",
                             "schema",
                             "synthetic",
                             "generate",
                             "keys",
                             "target",
                             "aux_split",
                             "secret",
                             "aux_columns",
                             "n_attacks",
                             "n_neighbors",
                             "singling_out_mode",
                             "confidence",
                             "inference_tolerance",
                             "inference_sweep",
                             "bins",
                             "wasserstein_mode",
                             "wasserstein_sample",
                             "auto_sinkhorn_rows",
                             "sinkhorn",
                             "ordinal_columns",
                             "learners",
                             "attack_sample_threshold",
                             "attack_sample_rows",
                             "nnaa_max_rows",
                             "seed",
                             "output_dir",
                             "threads"}));
  EvalConfig config;
  if (!j.contains("original") || !j["original"].is_string()) {
    return absl::InvalidArgumentError("config: 'original' path is required");
  }
  if (!j.contains("seed") || !j["seed"].is_number_integer()) {
    return absl::InvalidArgumentError("config: integer 'seed' is required");
  }
  RETURN_IF_ERROR(Read(j, "original", config.original_path));
  RETURN_IF_ERROR(Read(j, "schema", config.schema_path));
  if (auto it = j.find("synthetic"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) {
      return absl::InvalidArgumentError(
          "'synthetic' must map model names to CSV paths");
    }
    for (const auto& [name, path] : it->items()) {
      if (!path.is_string()) {
        return absl::InvalidArgumentError(
            absl::StrCat("synthetic.", name, " must be a path string"));
      }
      config.synthetic.push_back({name, path.get<std::string>()});
    }
  }
  if (auto it = j.find("generate"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) {
      return absl::InvalidArgumentError(
          "'generate' must map model names to generator settings");
    }
    for (const auto& [name, settings] : it->items()) {
      ASSIGN_OR_RETURN(GeneratedSource source, ParseGenerated(name, settings));
      config.generate.push_back(std::move(source));
    }
  }
  std::set<std::string> names;
  for (const auto& s : config.synthetic) names.insert(s.name);
  for (const auto& g : config.generate) {
    if (!names.insert(g.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("model name '", g.name, "' is used twice"));
    }
  }

  RETURN_IF_ERROR(Read(j, "keys", config.keys));
  RETURN_IF_ERROR(Read(j, "target", config.target));
  if (auto it = j.find("aux_split"); it != j.end() && !it->is_null()) {
    RETURN_IF_ERROR(CheckKeys(*it, "aux_split", {"side_a", "side_b"}));
    RETURN_IF_ERROR(Read(*it, "side_a", config.aux_split.side_a));
    RETURN_IF_ERROR(Read(*it, "side_b", config.aux_split.side_b));
  }
  RETURN_IF_ERROR(Read(j, "secret", config.secret));
  RETURN_IF_ERROR(Read(j, "aux_columns", config.aux_columns));
  RETURN_IF_ERROR(Read(j, "n_attacks", config.n_attacks));
  RETURN_IF_ERROR(ReadOptional(j, "n_neighbors", config.n_neighbors));
  std::string mode = std::string(SinglingOutModeName(config.singling_out_mode));
  RETURN_IF_ERROR(Read(j, "singling_out_mode", mode));
  if (mode == "univariate") {
    config.singling_out_mode = SinglingOutMode::kUnivariate;
  } else if (mode == "multivariate") {
    config.singling_out_mode = SinglingOutMode::kMultivariate;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown singling_out_mode '", mode,
                     "'; expected univariate or multivariate"));
  }
  RETURN_IF_ERROR(Read(j, "confidence", config.confidence));
  RETURN_IF_ERROR(Read(j, "inference_tolerance", config.inference_tolerance));
  RETURN_IF_ERROR(Read(j, "inference_sweep", config.inference_sweep));
  RETURN_IF_ERROR(Read(j, "bins", config.bins));
  std::optional<std::string> ws_mode;
  RETURN_IF_ERROR(ReadOptional(j, "wasserstein_mode", ws_mode));
  if (ws_mode.has_value()) {
    config.wasserstein_mode = ParseWassersteinMode(*ws_mode);
    if (!config.wasserstein_mode.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown wasserstein_mode '", *ws_mode,
                       "'; expected exact_1d, sampled or sinkhorn"));
    }
  }
  RETURN_IF_ERROR(Read(j, "wasserstein_sample", config.wasserstein_sample));
  RETURN_IF_ERROR(Read(j, "auto_sinkhorn_rows", config.auto_sinkhorn_rows));
  if (auto it = j.find("sinkhorn"); it != j.end() && !it->is_null()) {
    RETURN_IF_ERROR(
        CheckKeys(*it, "sinkhorn", {"epsilon", "max_iter", "tol", "max_rows"}));
    RETURN_IF_ERROR(Read(*it, "epsilon", config.sinkhorn.epsilon));
    RETURN_IF_ERROR(Read(*it, "max_iter", config.sinkhorn.max_iter));
    RETURN_IF_ERROR(Read(*it, "tol", config.sinkhorn.tol));
    RETURN_IF_ERROR(Read(*it, "max_rows", config.sinkhorn.max_rows));
  }
  RETURN_IF_ERROR(Read(j, "ordinal_columns", config.ordinal_columns));
  if (auto it = j.find("learners"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) {
      return absl::InvalidArgumentError("'learners' must be an array");
    }
    for (const Json& l : *it) {
      ASSIGN_OR_RETURN(Learner learner, ParseLearner(l));
      config.learners.push_back(learner);
    }
  }
  RETURN_IF_ERROR(
      Read(j, "attack_sample_threshold", config.attack_sample_threshold));
  RETURN_IF_ERROR(Read(j, "attack_sample_rows", config.attack_sample_rows));
  RETURN_IF_ERROR(Read(j, "nnaa_max_rows", config.nnaa_max_rows));
  RETURN_IF_ERROR(Read(j, "seed", config.seed));
  RETURN_IF_ERROR(Read(j, "output_dir", config.output_dir));
  RETURN_IF_ERROR(Read(j, "threads", config.threads));

  if (config.n_attacks < 1) {
    return absl::InvalidArgumentError("n_attacks must be >= 1");
  }
  if (config.n_neighbors.has_value() && *config.n_neighbors < 1) {
    return absl::InvalidArgumentError("n_neighbors must be >= 1");
  }
  if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
    return absl::InvalidArgumentError("confidence must be in (0, 1)");
  }
  if (config.inference_tolerance < 0.0) {
    return absl::InvalidArgumentError("inference_tolerance must be >= 0");
  }
  if (config.bins < 2) return absl::InvalidArgumentError("bins must be >= 2");
  if (config.wasserstein_sample < 2) {
    return absl::InvalidArgumentError("wasserstein_sample must be >= 2");
  }
  if (!(config.sinkhorn.epsilon > 0.0) || config.sinkhorn.max_iter < 1 ||
      !(config.sinkhorn.tol > 0.0)) {
    return absl::InvalidArgumentError(
        "sinkhorn needs epsilon > 0, max_iter >= 1 and tol > 0");
  }
  if (config.attack_sample_rows < 1) {
    return absl::InvalidArgumentError("attack_sample_rows must be >= 1");
  }
  if (config.synthetic.empty() && config.generate.empty()) {
    return absl::InvalidArgumentError(
        "config lists no synthetic data ('synthetic' or 'generate')");
  }
  return config;
}

absl::StatusOr<EvalConfig> LoadConfigFile(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  ASSIGN_OR_RETURN(EvalConfig config, ParseConfig(text));
  config.base_dir = std::filesystem::path(path).parent_path().string();
  return config;
}

std::string ConfigToJson(const EvalConfig& config) {
  Json j;
  j["original"] = config.original_path;
  j["schema"] = config.schema_path;
  j["synthetic"] = Json::object();
  for (const auto& s : config.synthetic) j["synthetic"][s.name] = s.path;
  j["generate"] = Json::object();
  for (const auto& g : config.generate) {
    j["generate"][g.name] = {{"model", std::string(GeneratorKindName(g.kind))},
                             {"rows", g.rows},
                             {"components", g.options.gmm.components},
                             {"max_iter", g.options.gmm.max_iter},
                             {"tol", g.options.gmm.tol},
                             {"regularization", g.options.gmm.regularization},
                             {"with_replacement", g.options.with_replacement}};
  }
  j["keys"] = config.keys;
  j["target"] = config.target;
  j["aux_split"] = {{"side_a", config.aux_split.side_a},
                    {"side_b", config.aux_split.side_b}};
  j["secret"] = config.secret;
  j["aux_columns"] = config.aux_columns;
  j["n_attacks"] = config.n_attacks;
  j["n_neighbors"] = config.n_neighbors.has_value() ? Json(*config.n_neighbors)
                                                    : Json(nullptr);
  j["singling_out_mode"] =
      std::string(SinglingOutModeName(config.singling_out_mode));
  j["confidence"] = config.confidence;
  j["inference_tolerance"] = config.inference_tolerance;
  j["inference_sweep"] = config.inference_sweep;
  j["bins"] = config.bins;
  j["wasserstein_mode"] =
      config.wasserstein_mode.has_value()
          ? Json(std::string(WassersteinModeName(*config.wasserstein_mode)))
          : Json(nullptr);
  j["wasserstein_sample"] = config.wasserstein_sample;
  j["auto_sinkhorn_rows"] = config.auto_sinkhorn_rows;
  j["sinkhorn"] = {{"epsilon", config.sinkhorn.epsilon},
                   {"max_iter", config.sinkhorn.max_iter},
                   {"tol", config.sinkhorn.tol},
                   {"max_rows", config.sinkhorn.max_rows}};
  j["ordinal_columns"] = config.ordinal_columns;
  j["learners"] = Json::array();
  for (const Learner& l : config.learners) {
    j["learners"].push_back({{"kind", std::string(LearnerKindName(l.kind))},
                             {"learning_rate", l.learning_rate},
                             {"iterations", l.iterations},
                             {"l2", l.l2},
                             {"k", l.k},
                             {"seed", l.seed}});
  }
  j["attack_sample_threshold"] = config.attack_sample_threshold;
  j["attack_sample_rows"] = config.attack_sample_rows;
  j["nnaa_max_rows"] = config.nnaa_max_rows;
  j["seed"] = config.seed;
  j["output_dir"] = config.output_dir;
  j["threads"] = config.threads;
  return j.dump(2);
}

absl::Status ValidateColumns(const EvalConfig& config, const Schema& schema) {
  RETURN_IF_ERROR(CheckColumns(schema, "keys", config.keys));
  if (!config.target.empty()) {
    RETURN_IF_ERROR(CheckColumns(schema, "target", {config.target}));
  }
  RETURN_IF_ERROR(
      CheckColumns(schema, "aux_split.side_a", config.aux_split.side_a));
  RETURN_IF_ERROR(
      CheckColumns(schema, "aux_split.side_b", config.aux_split.side_b));
  if (!config.secret.empty()) {
    RETURN_IF_ERROR(CheckColumns(schema, "secret", {config.secret}));
  }
  RETURN_IF_ERROR(CheckColumns(schema, "aux_columns", config.aux_columns));
  RETURN_IF_ERROR(
      CheckColumns(schema, "ordinal_columns", config.ordinal_columns));
  return absl::OkStatus();
}

std::vector<Learner> EffectiveLearners(const EvalConfig& config) {
  if (!config.learners.empty()) return config.learners;
  Learner logistic;
  Learner knn;
  knn.kind = LearnerKind::kKNearestNeighbors;
  return {logistic, knn};
}

size_t EffectiveNeighbors(const EvalConfig& config, size_t original_rows) {
  if (config.n_neighbors.has_value()) return *config.n_neighbors;
  return original_rows > config.attack_sample_threshold ? 10 : 1;
}

}  // namespace tabeval
