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

#include "tabeval/report.h"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <limits>
#include <system_error>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "nlohmann/json.hpp"
#include "tabeval/csv.h"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Json Num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
double GetNum(const Json& j) { return j.is_null() ? kNaN : j.get<double>(); }

Json NumList(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(Num(v));
  return out;
}

std::vector<double> GetNumList(const Json& j) {
  std::vector<double> out;
  for (const Json& v : j) out.push_back(GetNum(v));
  return out;
}

// ToJson / FromJson pairs for every report component.

Json ToJson(double v) { return Num(v); }
void FromJson(const Json& j, double& v) { v = GetNum(j); }

Json ToJson(const RiskEstimate& r) {
  return {{"risk", Num(r.risk)},
          {"ci_low", Num(r.ci_low)},
          {"ci_high", Num(r.ci_high)},
          {"n_attacks", r.n_attacks},
          {"n_success", r.n_success},
          {"confidence", Num(r.confidence)},
          {"note", r.note}};
}
void FromJson(const Json& j, RiskEstimate& r) {
  r.risk = GetNum(j.at("risk"));
  r.ci_low = GetNum(j.at("ci_low"));
  r.ci_high = GetNum(j.at("ci_high"));
  r.n_attacks = j.at("n_attacks").get<int64_t>();
  r.n_success = j.at("n_success").get<int64_t>();
  r.confidence = GetNum(j.at("confidence"));
  r.note = j.at("note").get<std::string>();
}

Json ToJson(const ColumnScores& s) {
  return {{"overall", Num(s.overall)},
          {"columns", s.columns},
          {"scores", NumList(s.scores)}};
}
void FromJson(const Json& j, ColumnScores& s) {
  s.overall = GetNum(j.at("overall"));
  s.columns = j.at("columns").get<std::vector<std::string>>();
  s.scores = GetNumList(j.at("scores"));
}

Json ToJson(const SquareMatrix& m) {
  return {{"columns", m.columns}, {"values", NumList(m.values)}};
}
void FromJson(const Json& j, SquareMatrix& m) {
  m.columns = j.at("columns").get<std::vector<std::string>>();
  m.values = GetNumList(j.at("values"));
}

Json ToJson(const CorrelationResult& c) {
  return {{"overall", Num(c.overall)},
          {"pairs_used", c.pairs_used},
          {"original", ToJson(c.original)},
          {"synthetic", ToJson(c.synthetic)},
          {"warnings", c.warnings}};
}
void FromJson(const Json& j, CorrelationResult& c) {
  c.overall = GetNum(j.at("overall"));
  c.pairs_used = j.at("pairs_used").get<size_t>();
  FromJson(j.at("original"), c.original);
  FromJson(j.at("synthetic"), c.synthetic);
  c.warnings = j.at("warnings").get<std::vector<std::string>>();
}

Json ToJson(const NmiResult& n) {
  return {{"overall", Num(n.overall)},
          {"original", ToJson(n.original)},
          {"synthetic", ToJson(n.synthetic)},
          {"warnings", n.warnings}};
}
void FromJson(const Json& j, NmiResult& n) {
  n.overall = GetNum(j.at("overall"));
  FromJson(j.at("original"), n.original);
  FromJson(j.at("synthetic"), n.synthetic);
  n.warnings = j.at("warnings").get<std::vector<std::string>>();
}

Json ToJson(const ColumnStats& s) {
  return {{"mean", Num(s.mean)},
          {"median", Num(s.median)},
          {"variance", Num(s.variance)}};
}
void FromJson(const Json& j, ColumnStats& s) {
  s.mean = GetNum(j.at("mean"));
  s.median = GetNum(j.at("median"));
  s.variance = GetNum(j.at("variance"));
}

Json ToJson(const BasicStatsResult& b) {
  Json original = Json::array(), synthetic = Json::array();
  for (const ColumnStats& s : b.original) original.push_back(ToJson(s));
  for (const ColumnStats& s : b.synthetic) synthetic.push_back(ToJson(s));
  return {{"mean_diff", Num(b.overall.mean_diff)},
          {"median_diff", Num(b.overall.median_diff)},
          {"var_diff", Num(b.overall.var_diff)},
          {"columns", b.columns},
          {"original", original},
          {"synthetic", synthetic}};
}
void FromJson(const Json& j, BasicStatsResult& b) {
  b.overall.mean_diff = GetNum(j.at("mean_diff"));
  b.overall.median_diff = GetNum(j.at("median_diff"));
  b.overall.var_diff = GetNum(j.at("var_diff"));
  b.columns = j.at("columns").get<std::vector<std::string>>();
  b.original.clear();
  b.synthetic.clear();
  for (const Json& s : j.at("original")) FromJson(s, b.original.emplace_back());
  for (const Json& s : j.at("synthetic")) {
    FromJson(s, b.synthetic.emplace_back());
  }
}

Json OptionalNum(const std::optional<double>& v) {
  return v.has_value() ? Num(*v) : Json(nullptr);
}
std::optional<double> GetOptionalNum(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Json ToJson(const ClassificationMetrics& m) {
  return {{"accuracy", Num(m.accuracy)},
          {"f1", Num(m.f1)},
          {"auc", OptionalNum(m.auc)}};
}
void FromJson(const Json& j, ClassificationMetrics& m) {
  m.accuracy = GetNum(j.at("accuracy"));
  m.f1 = GetNum(j.at("f1"));
  m.auc = GetOptionalNum(j.at("auc"));
}

Json ToJson(const UtilityReport& u) {
  return {{"model_name", u.model_name},
          {"trtr", ToJson(u.trtr)},
          {"tstr", ToJson(u.tstr)},
          {"deltas",
           {{"accuracy", Num(u.deltas.accuracy)},
            {"f1", Num(u.deltas.f1)},
            {"auc", OptionalNum(u.deltas.auc)}}},
          {"train_rows", u.train_rows},
          {"test_rows", u.test_rows},
          {"notes", u.notes}};
}
void FromJson(const Json& j, UtilityReport& u) {
  u.model_name = j.at("model_name").get<std::string>();
  FromJson(j.at("trtr"), u.trtr);
  FromJson(j.at("tstr"), u.tstr);
  const Json& d = j.at("deltas");
  u.deltas.accuracy = GetNum(d.at("accuracy"));
  u.deltas.f1 = GetNum(d.at("f1"));
  u.deltas.auc = GetOptionalNum(d.at("auc"));
  u.train_rows = j.at("train_rows").get<size_t>();
  u.test_rows = j.at("test_rows").get<size_t>();
  u.notes = j.at("notes").get<std::vector<std::string>>();
}

template <typename T>
Json ToJson(const Outcome<T>& o) {
  if (o.ok()) return {{"status", "ok"}, {"value", ToJson(*o.value)}};
  return {{"status", "skipped"}, {"reason", o.reason}, {"detail", o.detail}};
}
template <typename T>
void FromJson(const Json& j, Outcome<T>& o) {
  if (j.at("status").get<std::string>() == "ok") {
    T value{};
    FromJson(j.at("value"), value);
    o = Outcome<T>::Of(std::move(value));
  } else {
    o = Outcome<T>::Skipped(j.at("reason").get<std::string>(),
                            j.at("detail").get<std::string>());
  }
}

Json ToJson(const ModelReport& m) {
  Json modes = Json::array();
  for (const auto& [mode, value] : m.wasserstein_modes) {
    modes.push_back({{"mode", mode}, {"result", ToJson(value)}});
  }
  Json utility = Json::array();
  for (const UtilityEntry& e : m.utility) {
    utility.push_back({{"learner", e.learner}, {"result", ToJson(e.result)}});
  }
  Json sweep = Json::array();
  for (const auto& [column, risk] : m.inference_sweep) {
    sweep.push_back({{"secret", column}, {"result", ToJson(risk)}});
  }
  Json j;
  j["name"] = m.name;
  j["source"] = m.source;
  j["rows"] = m.rows;
  j["rows_dropped_missing"] = m.rows_dropped_missing;
  j["privacy"] = {{"disco", ToJson(m.disco)},
                  {"rep_u", ToJson(m.rep_u)},
                  {"nndr", ToJson(m.nndr)},
                  {"dcr", ToJson(m.dcr)},
                  {"nnaa", ToJson(m.nnaa)},
                  {"nnaa_rows", m.nnaa_rows},
                  {"singling_out", ToJson(m.singling_out)},
                  {"linkability", ToJson(m.linkability)},
                  {"inference", ToJson(m.inference)},
                  {"inference_sweep", sweep}};
  j["similarity"] = {{"wasserstein_mode", m.wasserstein_mode},
                     {"wasserstein", ToJson(m.wasserstein)},
                     {"wasserstein_modes", modes},
                     {"ks", ToJson(m.ks)},
                     {"corr_pearson", ToJson(m.pearson)},
                     {"corr_spearman", ToJson(m.spearman)},
                     {"nmi", ToJson(m.nmi)},
                     {"js", ToJson(m.js)},
                     {"basic_stats", ToJson(m.basic_stats)}};
  j["utility"] = utility;
  j["notes"] = m.notes;
  return j;
}

void FromJson(const Json& j, ModelReport& m) {
  m.name = j.at("name").get<std::string>();
  m.source = j.at("source").get<std::string>();
  m.rows = j.at("rows").get<size_t>();
  m.rows_dropped_missing = j.at("rows_dropped_missing").get<size_t>();
  const Json& p = j.at("privacy");
  FromJson(p.at("disco"), m.disco);
  FromJson(p.at("rep_u"), m.rep_u);
  FromJson(p.at("nndr"), m.nndr);
  FromJson(p.at("dcr"), m.dcr);
  FromJson(p.at("nnaa"), m.nnaa);
  m.nnaa_rows = p.at("nnaa_rows").get<size_t>();
  FromJson(p.at("singling_out"), m.singling_out);
  FromJson(p.at("linkability"), m.linkability);
  FromJson(p.at("inference"), m.inference);
  m.inference_sweep.clear();
  for (const Json& e : p.at("inference_sweep")) {
    Outcome<RiskEstimate> risk;
    FromJson(e.at("result"), risk);
    m.inference_sweep.emplace_back(e.at("secret").get<std::string>(),
                                   std::move(risk));
  }
  const Json& s = j.at("similarity");
  m.wasserstein_mode = s.at("wasserstein_mode").get<std::string>();
  FromJson(s.at("wasserstein"), m.wasserstein);
  m.wasserstein_modes.clear();
  for (const Json& mode : s.at("wasserstein_modes")) {
    Outcome<double> value;
    FromJson(mode.at("result"), value);
    m.wasserstein_modes.emplace_back(mode.at("mode").get<std::string>(),
                                     std::move(value));
  }
  FromJson(s.at("ks"), m.ks);
  FromJson(s.at("corr_pearson"), m.pearson);
  FromJson(s.at("corr_spearman"), m.spearman);
  FromJson(s.at("nmi"), m.nmi);
  FromJson(s.at("js"), m.js);
  FromJson(s.at("basic_stats"), m.basic_stats);
  m.utility.clear();
  for (const Json& e : j.at("utility")) {
    UtilityEntry entry;
    entry.learner = e.at("learner").get<std::string>();
    FromJson(e.at("result"), entry.result);
    m.utility.push_back(std::move(entry));
  }
  m.notes = j.at("notes").get<std::vector<std::string>>();
}

template <typename T, typename F>
std::string Cell(const Outcome<T>& o, F format) {
  if (!o.ok()) return absl::StrCat("skipped (", o.reason, ")");
  return format(*o.value);
}

std::string Fixed(double v, int digits) {
  if (!std::isfinite(v)) return "n/a";
  return absl::StrFormat("%.*f", digits, v);
}

std::string MetricPair(double a, double b) {
  return absl::StrCat(Fixed(a, 4), " / ", Fixed(b, 4));
}

std::string OptionalPair(const std::optional<double>& a,
                         const std::optional<double>& b) {
  return absl::StrCat(a.has_value() ? Fixed(*a, 4) : "n/a", " / ",
                      b.has_value() ? Fixed(*b, 4) : "n/a");
}

std::string FileSafe(std::string_view name) {
  std::string out;
  for (char c : name) {
    out.push_back(
        std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_');
  }
  return out;
}

std::string CsvNum(double v) {
  return std::isfinite(v) ? FormatNumber(v) : "NaN";
}

std::string CsvText(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string MatrixCsv(const SquareMatrix& m) {
  std::string out = "column";
  for (const std::string& c : m.columns) absl::StrAppend(&out, ",", CsvText(c));
  out.push_back('\n');
  for (size_t i = 0; i < m.size(); ++i) {
    out += CsvText(m.columns[i]);
    for (size_t j = 0; j < m.size(); ++j) {
      absl::StrAppend(&out, ",", CsvNum(m.at(i, j)));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace

std::string ReasonCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return "ok";
    case absl::StatusCode::kInvalidArgument:
      return "invalid_argument";
    case absl::StatusCode::kFailedPrecondition:
      return "failed_precondition";
    case absl::StatusCode::kNotFound:
      return "not_found";
    case absl::StatusCode::kOutOfRange:
      return "out_of_range";
    case absl::StatusCode::kResourceExhausted:
      return "resource_exhausted";
    case absl::StatusCode::kUnimplemented:
      return "unimplemented";
    default:
      return "internal";
  }
}

std::string ReportToJson(const MetricReport& report) {
  Json j;
  j["tool_version"] = report.tool_version;
  j["config"] = Json::parse(ConfigToJson(report.config));
  j["original"] = {
      {"path", report.original_path},
      {"rows", report.original_rows},
      {"columns", report.original_columns},
      {"rows_dropped_missing", report.original_rows_dropped_missing}};
  j["notes"] = report.notes;
  j["models"] = Json::array();
  for (const ModelReport& m : report.models) j["models"].push_back(ToJson(m));
  return j.dump(2) + "\n";
}

absl::StatusOr<MetricReport> ReportFromJson(std::string_view text) {
  MetricReport report;
  try {
    const Json j = Json::parse(text.begin(), text.end());
    report.tool_version = j.at("tool_version").get<std::string>();
    ASSIGN_OR_RETURN(report.config, ParseConfig(j.at("config").dump()));
    const Json& o = j.at("original");
    report.original_path = o.at("path").get<std::string>();
    report.original_rows = o.at("rows").get<size_t>();
    report.original_columns = o.at("columns").get<size_t>();
    report.original_rows_dropped_missing =
        o.at("rows_dropped_missing").get<size_t>();
    report.notes = j.at("notes").get<std::vector<std::string>>();
    for (const Json& m : j.at("models")) {
      FromJson(m, report.models.emplace_back());
    }
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("report: ", e.what()));
  }
  return report;
}

std::string RoundedText(double value, int digits) {
  if (!std::isfinite(value)) return "nan";
  std::string text = absl::StrFormat("%.*f", digits, value);
  if (text.find('.') == std::string::npos) text += ".0";
  while (text.back() == '0' && text[text.size() - 2] != '.') text.pop_back();
  if (text == "-0.0") text = "0.0";
  return text;
}

std::string RiskCell(const RiskEstimate& risk) {
  return absl::StrCat(RoundedText(risk.risk), ",CI=(", RoundedText(risk.ci_low),
                      ", ", RoundedText(risk.ci_high), ")");
}

std::string ReportToMarkdown(const MetricReport& report) {
  std::string md = "# Synthetic data evaluation\n\n";
  absl::StrAppend(&md, "Original: `", report.original_path, "` (",
                  report.original_rows, " rows, ", report.original_columns,
                  " columns, ", report.original_rows_dropped_missing,
                  " rows dropped for missing values). Seed ",
                  report.config.seed, ".\n\n");

  md += "## Distance-based privacy\n\n";
  md += "| Model | DiSCO | repU | NNDR | DCR | NNAA |\n";
  md += "|---|---|---|---|---|---|\n";
  auto two = [](double v) { return Fixed(v, 2); };
  for (const ModelReport& m : report.models) {
    absl::StrAppend(&md, "| ", m.name, " | ", Cell(m.disco, two), " | ",
                    Cell(m.rep_u, two), " | ", Cell(m.nndr, two), " | ",
                    Cell(m.dcr, two), " | ", Cell(m.nnaa, two), " |\n");
  }

  md += "\n## Attack-based privacy\n\n";
  md += "| Model | S-Out | Link | Inf |\n|---|---|---|---|\n";
  for (const ModelReport& m : report.models) {
    absl::StrAppend(&md, "| ", m.name, " | ", Cell(m.singling_out, RiskCell),
                    " | ", Cell(m.linkability, RiskCell), " | ",
                    Cell(m.inference, RiskCell), " |\n");
  }
  for (const ModelReport& m : report.models) {
    if (m.inference_sweep.empty()) continue;
    absl::StrAppend(&md, "\nInference sweep for ", m.name, ":\n\n");
    md += "| Secret | Inf |\n|---|---|\n";
    for (const auto& [column, risk] : m.inference_sweep) {
      absl::StrAppend(&md, "| ", column, " | ", Cell(risk, RiskCell), " |\n");
    }
  }

  md += "\n## Statistical similarity\n\n";
  md += "| Model | WS | KS | P&S Corr | MI | JS | (Mean, Median, Var) |\n";
  md += "|---|---|---|---|---|---|---|\n";
  auto four = [](double v) { return Fixed(v, 4); };
  auto overall4 = [](const auto& r) { return Fixed(r.overall, 4); };
  for (const ModelReport& m : report.models) {
    std::string corr;
    if (m.pearson.ok() || m.spearman.ok()) {
      corr = absl::StrCat(
          "[", m.pearson.ok() ? Fixed(m.pearson.value->overall, 4) : "n/a",
          "; ", m.spearman.ok() ? Fixed(m.spearman.value->overall, 4) : "n/a",
          "]");
    } else {
      corr = Cell(m.pearson, overall4);
    }
    const std::string stats =
        Cell(m.basic_stats, [](const BasicStatsResult& b) {
          return absl::StrCat("(", RoundedText(b.overall.mean_diff), ", ",
                              RoundedText(b.overall.median_diff), ", ",
                              RoundedText(b.overall.var_diff), ")");
        });
    absl::StrAppend(&md, "| ", m.name, " | ", Cell(m.wasserstein, four), " | ",
                    Cell(m.ks, overall4), " | ", corr, " | ",
                    Cell(m.nmi, overall4), " | ", Cell(m.js, overall4), " | ",
                    stats, " |\n");
  }
  md += "\nWS mode per model: ";
  std::vector<std::string> modes;
  for (const ModelReport& m : report.models) {
    modes.push_back(absl::StrCat(m.name, " = ", m.wasserstein_mode));
  }
  md += absl::StrJoin(modes, ", ");
  md += ". JS is the base-2 Jensen-Shannon divergence subtracted from 1.\n";

  md += "\n## Machine-learning utility (TRTR / TSTR)\n\n";
  md += "| Model | Learner | Accuracy | F1 | AUC |\n|---|---|---|---|---|\n";
  for (const ModelReport& m : report.models) {
    for (const UtilityEntry& e : m.utility) {
      if (!e.result.ok()) {
        absl::StrAppend(&md, "| ", m.name, " | ", e.learner, " | skipped (",
                        e.result.reason, ") | | |\n");
        continue;
      }
      const UtilityReport& u = *e.result.value;
      absl::StrAppend(&md, "| ", m.name, " | ", e.learner, " | ",
                      MetricPair(u.trtr.accuracy, u.tstr.accuracy), " | ",
                      MetricPair(u.trtr.f1, u.tstr.f1), " | ",
                      OptionalPair(u.trtr.auc, u.tstr.auc), " |\n");
    }
  }

  std::vector<std::string> skipped;
  for (const ModelReport& m : report.models) {
    auto note = [&](std::string_view metric, const auto& o) {
      if (!o.ok()) {
        skipped.push_back(absl::StrCat("- ", m.name, " / ", std::string(metric),
                                       ": ", o.reason,
                                       o.detail.empty() ? "" : " (", o.detail,
                                       o.detail.empty() ? "" : ")"));
      }
    };
    note("DiSCO", m.disco);
    note("repU", m.rep_u);
    note("NNDR", m.nndr);
    note("DCR", m.dcr);
    note("NNAA", m.nnaa);
    note("singling out", m.singling_out);
    note("linkability", m.linkability);
    note("inference", m.inference);
    for (const auto& [column, risk] : m.inference_sweep) {
      note(absl::StrCat("inference on ", column), risk);
    }
    note("Wasserstein", m.wasserstein);
    note("KS", m.ks);
    note("Pearson", m.pearson);
    note("Spearman", m.spearman);
    note("NMI", m.nmi);
    note("JS", m.js);
    note("basic statistics", m.basic_stats);
    for (const UtilityEntry& e : m.utility) note(e.learner, e.result);
  }
  if (!skipped.empty()) {
    md += "\n## Skipped metrics\n\n" + absl::StrJoin(skipped, "\n") + "\n";
  }

  std::vector<std::string> notes;
  for (const std::string& n : report.notes) notes.push_back("- " + n);
  for (const ModelReport& m : report.models) {
    for (const std::string& n : m.notes) {
      notes.push_back(absl::StrCat("- ", m.name, ": ", n));
    }
  }
  if (!notes.empty()) {
    md += "\n## Notes\n\n" + absl::StrJoin(notes, "\n") + "\n";
  }
  return md;
}

absl::StatusOr<std::vector<std::string>> EmitPlotData(
    const MetricReport& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create '", dir, "': ", ec.message()));
  }
  std::vector<std::string> written;
  auto emit = [&](const std::string& name,
                  const std::string& contents) -> absl::Status {
    RETURN_IF_ERROR(
        WriteFile((std::filesystem::path(dir) / name).string(), contents));
    written.push_back(name);
    return absl::OkStatus();
  };

  std::string ks_overall = "model,ks\n";
  std::string ks_columns = "model,column,ks\n";
  std::string modes = "model,mode,wasserstein\n";
  for (const ModelReport& m : report.models) {
    if (m.ks.ok()) {
      absl::StrAppend(&ks_overall, CsvText(m.name), ",",
                      CsvNum(m.ks.value->overall), "\n");
      for (size_t c = 0; c < m.ks.value->columns.size(); ++c) {
        absl::StrAppend(&ks_columns, CsvText(m.name), ",",
                        CsvText(m.ks.value->columns[c]), ",",
                        CsvNum(m.ks.value->scores[c]), "\n");
      }
    }
    for (const auto& [mode, value] : m.wasserstein_modes) {
      if (!value.ok()) continue;
      absl::StrAppend(&modes, CsvText(m.name), ",", mode, ",",
                      CsvNum(*value.value), "\n");
    }
  }
  RETURN_IF_ERROR(emit("ks_overall.csv", ks_overall));
  RETURN_IF_ERROR(emit("ks_columns.csv", ks_columns));
  RETURN_IF_ERROR(emit("wasserstein_modes.csv", modes));

  // Original-side matrices are the same in every model section; the first
  // available one is written.
  bool wrote_pearson = false, wrote_spearman = false, wrote_nmi = false;
  std::string stats = "source,column,mean,median,variance\n";
  bool wrote_original_stats = false;
  for (const ModelReport& m : report.models) {
    const std::string safe = FileSafe(m.name);
    if (m.pearson.ok()) {
      if (!wrote_pearson) {
        RETURN_IF_ERROR(emit("corr_pearson_original.csv",
                             MatrixCsv(m.pearson.value->original)));
        wrote_pearson = true;
      }
      RETURN_IF_ERROR(emit(absl::StrCat("corr_pearson_", safe, ".csv"),
                           MatrixCsv(m.pearson.value->synthetic)));
    }
    if (m.spearman.ok()) {
      if (!wrote_spearman) {
        RETURN_IF_ERROR(emit("corr_spearman_original.csv",
                             MatrixCsv(m.spearman.value->original)));
        wrote_spearman = true;
      }
      RETURN_IF_ERROR(emit(absl::StrCat("corr_spearman_", safe, ".csv"),
                           MatrixCsv(m.spearman.value->synthetic)));
    }
    if (m.nmi.ok()) {
      if (!wrote_nmi) {
        RETURN_IF_ERROR(
            emit("nmi_original.csv", MatrixCsv(m.nmi.value->original)));
        wrote_nmi = true;
      }
      RETURN_IF_ERROR(emit(absl::StrCat("nmi_", safe, ".csv"),
                           MatrixCsv(m.nmi.value->synthetic)));
    }
    if (m.basic_stats.ok()) {
      const BasicStatsResult& b = *m.basic_stats.value;
      auto rows = [&](std::string_view source,
                      const std::vector<ColumnStats>& values) {
        for (size_t c = 0; c < b.columns.size(); ++c) {
          absl::StrAppend(&stats, CsvText(source), ",", CsvText(b.columns[c]),
                          ",", CsvNum(values[c].mean), ",",
                          CsvNum(values[c].median), ",",
                          CsvNum(values[c].variance), "\n");
        }
      };
      if (!wrote_original_stats) {
        rows("original", b.original);
        wrote_original_stats = true;
      }
      rows(m.name, b.synthetic);
    }
  }
  RETURN_IF_ERROR(emit("basic_stats.csv", stats));
  return written;
}

}  // namespace tabeval
