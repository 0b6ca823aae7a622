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

#include "tabeval/evaluation.h"

#include <chrono>
#include <filesystem>
#include <system_error>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "tabeval/attack_privacy.h"
#include "tabeval/csv.h"
#include "tabeval/distance_privacy.h"
#include "tabeval/generators.h"
#include "tabeval/ml_utility.h"
#include "tabeval/parallel.h"
#include "tabeval/random.h"
#include "tabeval/similarity.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

// Per-model seed streams.
enum Stream : uint64_t {
  kNnaaStream = 1,
  kSinglingOutStream,
  kLinkabilityStream,
  kInferenceStream,
  kAttackSampleStream,
  kSimilarityStream,
  kUtilityStream,
};
// Run-level streams, derived from the master seed.
constexpr uint64_t kOriginalSampleStream = 101;
constexpr uint64_t kGenerateStream = 102;

class StageTimer {
 public:
  StageTimer(RunTimings* timings, std::string name)
      : timings_(timings),
        name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    if (timings_ == nullptr) return;
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start_;
    timings_->stages.emplace_back(std::move(name_), elapsed.count());
  }

 private:
  RunTimings* timings_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

template <typename T>
Outcome<T> NotConfigured(std::string_view what) {
  return Outcome<T>::Skipped(std::string(kSkipNotConfigured),
                             absl::StrCat(std::string(what), " not set"));
}

template <typename T>
Outcome<T> FailedWith(const absl::Status& status) {
  return Outcome<T>::Skipped(ReasonCode(status), std::string(status.message()));
}

// Samples `dataset` down to `rows` when it exceeds `threshold`.
absl::StatusOr<Dataset> CapRows(const Dataset& dataset, size_t threshold,
                                size_t rows, uint64_t seed) {
  if (dataset.num_rows() <= threshold || rows >= dataset.num_rows()) {
    return dataset;
  }
  return SampleRows(dataset, rows, /*with_replacement=*/false, seed);
}

void RunDistancePrivacy(const EvalConfig& config, const Dataset& original,
                        const Dataset& synthetic, uint64_t seed,
                        ModelReport& m) {
  const bool has_keys = !config.keys.empty();
  const bool has_target = !config.target.empty();
  absl::StatusOr<Dataset> original_bins =
      DiscretizeNumeric(original, config.bins, original.schema());
  absl::StatusOr<Dataset> synthetic_bins =
      DiscretizeNumeric(synthetic, config.bins, original.schema());
  absl::Status bins_status =
      original_bins.ok() ? synthetic_bins.status() : original_bins.status();
  if (!has_keys || !has_target) {
    m.disco = NotConfigured<double>(!has_keys ? "keys" : "target");
  } else if (!bins_status.ok()) {
    m.disco = FailedWith<double>(bins_status);
  } else {
    m.disco = Outcome<double>::From(
        Disco(*original_bins, *synthetic_bins, config.keys, config.target));
  }
  if (!has_keys) {
    m.rep_u = NotConfigured<double>("keys");
  } else if (!bins_status.ok()) {
    m.rep_u = FailedWith<double>(bins_status);
  } else {
    m.rep_u = Outcome<double>::From(
        RepU(*original_bins, *synthetic_bins, config.keys));
  }

  absl::StatusOr<Dataset> a = Normalize(original, original.schema());
  absl::StatusOr<Dataset> b = Normalize(synthetic, original.schema());
  const absl::Status norm_status = a.ok() ? b.status() : a.status();
  if (!norm_status.ok()) {
    m.nndr = m.dcr = m.nnaa = FailedWith<double>(norm_status);
    return;
  }
  absl::StatusOr<NndrDcr> nd = NndrAndDcr(*b, *a);
  if (nd.ok()) {
    m.nndr = Outcome<double>::Of(nd->nndr);
    m.dcr = Outcome<double>::Of(nd->dcr);
  } else {
    m.nndr = m.dcr = FailedWith<double>(nd.status());
  }
  m.nnaa = Outcome<double>::From(Nnaa(*a, *b, DeriveSeed(seed, kNnaaStream),
                                      config.nnaa_max_rows, &m.nnaa_rows));
}

void RunAttacks(const EvalConfig& config, const Dataset& attack_original,
                size_t original_rows, const Dataset& synthetic, uint64_t seed,
                ModelReport& m) {
  absl::StatusOr<Dataset> capped =
      CapRows(synthetic, config.attack_sample_threshold,
              config.attack_sample_rows, DeriveSeed(seed, kAttackSampleStream));
  if (!capped.ok()) {
    m.singling_out = m.linkability = m.inference =
        FailedWith<RiskEstimate>(capped.status());
    return;
  }
  if (capped->num_rows() < synthetic.num_rows()) {
    m.notes.push_back(absl::StrCat("attacks ran on ", capped->num_rows(),
                                   " sampled synthetic rows of ",
                                   synthetic.num_rows()));
  }

  SinglingOutOptions so;
  so.bins = config.bins;
  so.confidence = config.confidence;
  m.singling_out = Outcome<RiskEstimate>::From(SinglingOutRisk(
      attack_original, *capped, config.n_attacks, config.singling_out_mode,
      DeriveSeed(seed, kSinglingOutStream), so));

  if (config.aux_split.side_a.empty() || config.aux_split.side_b.empty()) {
    m.linkability = NotConfigured<RiskEstimate>("aux_split");
  } else {
    // The neighbor count follows the full original's size, so sampling for
    // the attack does not change it.
    const size_t neighbors = EffectiveNeighbors(config, original_rows);
    m.linkability = Outcome<RiskEstimate>::From(LinkabilityRisk(
        attack_original, *capped, config.aux_split, config.n_attacks, neighbors,
        DeriveSeed(seed, kLinkabilityStream), config.confidence));
  }

  if (config.secret.empty()) {
    m.inference = NotConfigured<RiskEstimate>("secret");
  } else {
    std::vector<std::string> aux = config.aux_columns;
    if (aux.empty()) {
      for (const std::string& name : attack_original.schema().names()) {
        if (name != config.secret) aux.push_back(name);
      }
    }
    InferenceOptions io;
    io.tolerance = config.inference_tolerance;
    io.confidence = config.confidence;
    m.inference = Outcome<RiskEstimate>::From(InferenceRisk(
        attack_original, *capped, aux, config.secret, config.n_attacks,
        DeriveSeed(seed, kInferenceStream), io));
  }

  if (!config.inference_sweep) return;
  InferenceOptions io;
  io.tolerance = config.inference_tolerance;
  io.confidence = config.confidence;
  const std::vector<std::string>& names = attack_original.schema().names();
  for (size_t i = 0; i < names.size(); ++i) {
    std::vector<std::string> aux;
    for (const std::string& name : names) {
      if (name != names[i]) aux.push_back(name);
    }
    m.inference_sweep.emplace_back(
        names[i],
        Outcome<RiskEstimate>::From(InferenceRisk(
            attack_original, *capped, aux, names[i], config.n_attacks,
            DeriveSeed(DeriveSeed(seed, kInferenceStream), i + 1), io)));
  }
}

void RunSimilarity(const EvalConfig& config, const Dataset& original,
                   const Dataset& synthetic, uint64_t seed, ModelReport& m) {
  absl::StatusOr<Dataset> a = Normalize(original, original.schema());
  absl::StatusOr<Dataset> b = Normalize(synthetic, original.schema());
  const absl::Status status = a.ok() ? b.status() : a.status();
  if (!status.ok()) {
    m.wasserstein = FailedWith<double>(status);
    m.ks = m.js = FailedWith<ColumnScores>(status);
    m.pearson = m.spearman = FailedWith<CorrelationResult>(status);
    m.nmi = FailedWith<NmiResult>(status);
    m.basic_stats = FailedWith<BasicStatsResult>(status);
    return;
  }
  SimilarityOptions options;
  options.wasserstein_mode = config.wasserstein_mode;
  options.auto_sinkhorn_rows = config.auto_sinkhorn_rows;
  options.wasserstein_sample = config.wasserstein_sample;
  options.sinkhorn = config.sinkhorn;
  options.bins = config.bins;
  options.seed = DeriveSeed(seed, kSimilarityStream);
  options.ordinal_columns = config.ordinal_columns;

  const WassersteinMode selected = ResolveWassersteinMode(
      options, std::max(original.num_rows(), synthetic.num_rows()));
  m.wasserstein_mode = std::string(WassersteinModeName(selected));
  for (WassersteinMode mode :
       {WassersteinMode::kExact1d, WassersteinMode::kSampled,
        WassersteinMode::kSinkhorn}) {
    Outcome<double> value =
        Outcome<double>::From(WassersteinByMode(*a, *b, mode, options));
    if (mode == selected) m.wasserstein = value;
    m.wasserstein_modes.emplace_back(std::string(WassersteinModeName(mode)),
                                     std::move(value));
  }
  m.ks = Outcome<ColumnScores>::From(KsSimilarity(*a, *b));
  m.pearson = Outcome<CorrelationResult>::From(
      CorrelationSimilarity(*a, *b, CorrelationMethod::kPearson));
  m.spearman = Outcome<CorrelationResult>::From(CorrelationSimilarity(
      *a, *b, CorrelationMethod::kSpearman, config.ordinal_columns));
  m.nmi = Outcome<NmiResult>::From(NmiSimilarity(*a, *b, config.bins));
  m.js = Outcome<ColumnScores>::From(JsSimilarity(*a, *b, config.bins));
  m.basic_stats = Outcome<BasicStatsResult>::From(BasicStatsDiff(*a, *b));
}

void RunUtility(const EvalConfig& config, const Dataset& original,
                const Dataset& synthetic, uint64_t seed, ModelReport& m) {
  for (const Learner& learner : EffectiveLearners(config)) {
    UtilityEntry entry;
    entry.learner = std::string(LearnerKindName(learner.kind));
    if (config.target.empty()) {
      entry.result = NotConfigured<UtilityReport>("target");
    } else {
      entry.result = Outcome<UtilityReport>::From(
          TstrCompare(original, synthetic, config.target, learner,
                      DeriveSeed(seed, kUtilityStream)));
    }
    m.utility.push_back(std::move(entry));
  }
}

absl::StatusOr<Dataset> LoadSynthetic(const std::string& path,
                                      const Schema& reference,
                                      LoadStats* stats) {
  ASSIGN_OR_RETURN(Dataset raw, LoadCsv(path, nullptr, {}, stats));
  absl::StatusOr<Dataset> conformed = Conform(raw, reference);
  if (!conformed.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", path, "' does not match the original: ",
                     std::string(conformed.status().message())));
  }
  return conformed;
}

}  // namespace

std::string TimingsToJson(const RunTimings& timings) {
  nlohmann::ordered_json j;
  j["total_seconds"] = timings.total_seconds;
  j["stages"] = nlohmann::ordered_json::array();
  for (const auto& [name, seconds] : timings.stages) {
    j["stages"].push_back({{"stage", name}, {"seconds", seconds}});
  }
  return j.dump(2) + "\n";
}

uint64_t ModelSeed(uint64_t master, std::string_view model_name) {
  uint64_t hash = 14695981039346656037ull;  // FNV-1a
  for (char c : model_name) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return DeriveSeed(master, hash);
}

ModelReport EvaluateModel(const EvalConfig& config, const Dataset& original,
                          const Dataset& attack_original,
                          const Dataset& synthetic, std::string name,
                          std::string source, RunTimings* timings) {
  ModelReport m;
  m.name = std::move(name);
  m.source = std::move(source);
  m.rows = synthetic.num_rows();
  const uint64_t seed = ModelSeed(config.seed, m.name);
  {
    StageTimer t(timings, m.name + "/distance_privacy");
    RunDistancePrivacy(config, original, synthetic, seed, m);
  }
  {
    StageTimer t(timings, m.name + "/attacks");
    RunAttacks(config, attack_original, original.num_rows(), synthetic, seed,
               m);
  }
  {
    StageTimer t(timings, m.name + "/similarity");
    RunSimilarity(config, original, synthetic, seed, m);
  }
  {
    StageTimer t(timings, m.name + "/utility");
    RunUtility(config, original, synthetic, seed, m);
  }
  return m;
}

absl::StatusOr<EvaluationResult> RunEvaluation(const EvalConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.threads > 0) SetMaxThreads(config.threads);
  EvaluationResult result;
  MetricReport& report = result.report;
  report.tool_version = std::string(kToolVersion);
  report.config = config;
  report.original_path = config.original_path;

  Schema schema;
  const Schema* schema_ptr = nullptr;
  if (!config.schema_path.empty()) {
    ASSIGN_OR_RETURN(schema,
                     LoadSchemaFile(config.Resolve(config.schema_path)));
    schema_ptr = &schema;
  }
  LoadStats original_stats;
  ASSIGN_OR_RETURN(Dataset original,
                   LoadCsv(config.Resolve(config.original_path), schema_ptr, {},
                           &original_stats));
  RETURN_IF_ERROR(ValidateColumns(config, original.schema()));
  report.original_rows = original.num_rows();
  report.original_columns = original.num_columns();
  report.original_rows_dropped_missing = original_stats.rows_dropped_missing;

  struct Input {
    std::string name;
    std::string source;
    Dataset data;
    size_t dropped = 0;
  };
  std::vector<Input> inputs;
  {
    StageTimer t(&result.timings, "load_synthetic");
    for (const SyntheticSource& s : config.synthetic) {
      LoadStats stats;
      ASSIGN_OR_RETURN(Dataset data, LoadSynthetic(config.Resolve(s.path),
                                                   original.schema(), &stats));
      inputs.push_back(
          {s.name, s.path, std::move(data), stats.rows_dropped_missing});
    }
  }
  for (const GeneratedSource& g : config.generate) {
    StageTimer t(&result.timings, "generate/" + g.name);
    const size_t rows = g.rows == 0 ? original.num_rows() : g.rows;
    absl::StatusOr<Dataset> data = Generate(
        g.kind, original, rows,
        DeriveSeed(ModelSeed(config.seed, g.name), kGenerateStream), g.options);
    if (!data.ok()) {
      report.notes.push_back(
          absl::StrCat("generator '", g.name,
                       "' failed: ", std::string(data.status().message())));
      continue;
    }
    inputs.push_back(
        {g.name,
         absl::StrCat("generated:", std::string(GeneratorKindName(g.kind))),
         *std::move(data), 0});
  }

  ASSIGN_OR_RETURN(Dataset attack_original,
                   CapRows(original, config.attack_sample_threshold,
                           config.attack_sample_rows,
                           DeriveSeed(config.seed, kOriginalSampleStream)));
  if (attack_original.num_rows() < original.num_rows()) {
    report.notes.push_back(absl::StrCat(
        "original has more than ", config.attack_sample_threshold,
        " rows: attacks ran on ", attack_original.num_rows(),
        " sampled records per table, linkability with ",
        EffectiveNeighbors(config, original.num_rows()), " neighbors"));
  }
  if (config.nnaa_max_rows > 0 && original.num_rows() > config.nnaa_max_rows) {
    report.notes.push_back(absl::StrCat(
        "NNAA compared at most ", config.nnaa_max_rows, " rows per side"));
  }
  if (config.sinkhorn.max_rows > 0 &&
      original.num_rows() > config.sinkhorn.max_rows) {
    report.notes.push_back(absl::StrCat(
        "Sinkhorn used at most ", config.sinkhorn.max_rows, " rows per side"));
  }

  for (Input& input : inputs) {
    ModelReport m = EvaluateModel(config, original, attack_original, input.data,
                                  input.name, input.source, &result.timings);
    m.rows_dropped_missing = input.dropped;
    report.models.push_back(std::move(m));
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  result.timings.total_seconds = elapsed.count();
  return result;
}

absl::StatusOr<std::vector<std::string>> WriteOutputs(
    const EvaluationResult& result, const std::string& dir,
    ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create '", dir, "': ", ec.message()));
  }
  const std::filesystem::path root(dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& name,
                   const std::string& contents) -> absl::Status {
    const std::string path = (root / name).string();
    RETURN_IF_ERROR(WriteFile(path, contents));
    written.push_back(path);
    return absl::OkStatus();
  };
  if (format != ReportFormat::kMarkdown) {
    RETURN_IF_ERROR(write("report.json", ReportToJson(result.report)));
  }
  if (format != ReportFormat::kJson) {
    RETURN_IF_ERROR(write("report.md", ReportToMarkdown(result.report)));
  }
  RETURN_IF_ERROR(write("timings.json", TimingsToJson(result.timings)));
  ASSIGN_OR_RETURN(std::vector<std::string> plots,
                   EmitPlotData(result.report, (root / "plots").string()));
  for (const std::string& p : plots) {
    written.push_back((root / "plots" / p).string());
  }
  return written;
}

}  // namespace tabeval
