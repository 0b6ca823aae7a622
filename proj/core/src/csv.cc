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

#include "tabeval/csv.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "tabeval/status_macros.h"

namespace tabeval {
namespace {

bool NeedsQuoting(std::string_view field, char delimiter) {
  return field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
             std::string_view::npos ||
         (!field.empty() && (field.front() == ' ' || field.back() == ' '));
}

void AppendField(std::string& out, std::string_view field, char delimiter) {
  if (!NeedsQuoting(field, delimiter)) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
}

}  // namespace

absl::StatusOr<RawTable> ParseCsv(std::string_view text,
                                  const CsvOptions& options) {
  const char delim = options.delimiter;
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };

  // A UTF-8 byte order mark is not part of the first header name.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  for (size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"') {
      if (!field.empty() || field_was_quoted) {
        return absl::InvalidArgumentError(
            absl::StrCat("stray quote on line ", line));
      }
      in_quotes = true;
      field_was_quoted = true;
    } else if (ch == delim) {
      end_field();
    } else if (ch == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
      ++line;
    } else if (ch == '\n') {
      end_record();
      ++line;
    } else {
      if (field_was_quoted) {
        return absl::InvalidArgumentError(
            absl::StrCat("text after closing quote on line ", line));
      }
      field.push_back(ch);
    }
  }
  if (in_quotes) {
    return absl::InvalidArgumentError("unterminated quoted field");
  }
  if (!field.empty() || field_was_quoted || !record.empty()) end_record();

  if (records.empty()) {
    return absl::InvalidArgumentError("CSV input has no header row");
  }
  RawTable table;
  table.header = std::move(records.front());
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "ragged row ", r, ": ", records[r].size(), " cells under a ",
          table.header.size(), "-column header"));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write '", path, "'"));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    return absl::DataLossError(absl::StrCat("short write to '", path, "'"));
  }
  return absl::OkStatus();
}

absl::StatusOr<RawTable> ReadCsvFile(const std::string& path,
                                     const CsvOptions& options) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<RawTable> table = ParseCsv(text, options);
  if (!table.ok()) {
    return absl::Status(table.status().code(),
                        absl::StrCat(path, ": ", table.status().message()));
  }
  return table;
}

absl::StatusOr<Dataset> LoadCsv(const std::string& path, const Schema* schema,
                                const CsvOptions& options, LoadStats* stats) {
  ASSIGN_OR_RETURN(RawTable table, ReadCsvFile(path, options));
  absl::StatusOr<Dataset> dataset = Dataset::FromText(table, schema, stats);
  if (!dataset.ok()) {
    return absl::Status(dataset.status().code(),
                        absl::StrCat(path, ": ", dataset.status().message()));
  }
  return dataset;
}

std::string FormatCsv(const Dataset& dataset, const CsvOptions& options) {
  std::string out;
  const char delim = options.delimiter;
  for (size_t c = 0; c < dataset.num_columns(); ++c) {
    if (c > 0) out.push_back(delim);
    AppendField(out, dataset.spec(c).name, delim);
  }
  out.push_back('\n');
  for (size_t r = 0; r < dataset.num_rows(); ++r) {
    for (size_t c = 0; c < dataset.num_columns(); ++c) {
      if (c > 0) out.push_back(delim);
      AppendField(out, dataset.CellText(r, c), delim);
    }
    out.push_back('\n');
  }
  return out;
}

absl::Status WriteCsv(const Dataset& dataset, const std::string& path,
                      const CsvOptions& options) {
  return WriteFile(path, FormatCsv(dataset, options));
}

std::string SchemaToJson(const Schema& schema) {
  nlohmann::ordered_json columns = nlohmann::ordered_json::array();
  for (const ColumnSpec& spec : schema.columns) {
    nlohmann::ordered_json column;
    column["name"] = spec.name;
    column["kind"] = std::string(ColumnKindName(spec.kind));
    if (spec.is_numeric()) {
      column["min"] = spec.min;
      column["max"] = spec.max;
    } else {
      column["categories"] = spec.categories;
    }
    columns.push_back(std::move(column));
  }
  nlohmann::ordered_json root;
  root["columns"] = std::move(columns);
  return root.dump(2) + "\n";
}

absl::StatusOr<Schema> SchemaFromJson(std::string_view json) {
  nlohmann::json root = nlohmann::json::parse(json, nullptr,
                                              /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object() || !root.contains("columns") ||
      !root["columns"].is_array()) {
    return absl::InvalidArgumentError(
        "schema JSON must be an object with a 'columns' array");
  }
  Schema schema;
  for (const auto& column : root["columns"]) {
    if (!column.is_object() || !column.contains("name") ||
        !column["name"].is_string() || !column.contains("kind")) {
      return absl::InvalidArgumentError(
          "each schema column needs 'name' and 'kind'");
    }
    ColumnSpec spec;
    spec.name = column["name"].get<std::string>();
    const std::string kind = column["kind"].is_string()
                                 ? column["kind"].get<std::string>()
                                 : std::string();
    if (kind == "numeric") {
      spec.kind = ColumnKind::kNumeric;
      if (!column.contains("min") || !column.contains("max") ||
          !column["min"].is_number() || !column["max"].is_number()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "numeric column '", spec.name, "' needs numeric 'min' and 'max'"));
      }
      spec.min = column["min"].get<double>();
      spec.max = column["max"].get<double>();
    } else if (kind == "categorical") {
      spec.kind = ColumnKind::kCategorical;
      if (!column.contains("categories") || !column["categories"].is_array()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "categorical column '", spec.name, "' needs 'categories'"));
      }
      for (const auto& label : column["categories"]) {
        spec.categories.push_back(label.is_string() ? label.get<std::string>()
                                                    : label.dump());
      }
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          "column '", spec.name, "': kind must be numeric or categorical"));
    }
    schema.columns.push_back(std::move(spec));
  }
  RETURN_IF_ERROR(schema.Validate());
  return schema;
}

absl::StatusOr<Schema> LoadSchemaFile(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return SchemaFromJson(text);
}

}  // namespace tabeval
