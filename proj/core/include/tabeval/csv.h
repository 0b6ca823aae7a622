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

#ifndef TABEVAL_CSV_H_
#define TABEVAL_CSV_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tabeval/tabular.h"

namespace tabeval {

struct CsvOptions {
  char delimiter = ',';
};

// RFC 4180 parsing: quoted fields may hold delimiters, doubled quotes and
// line breaks; CRLF and LF line endings are accepted. The first record is
// the header. Blank lines are skipped.
absl::StatusOr<RawTable> ParseCsv(std::string_view text,
                                  const CsvOptions& options = {});

absl::StatusOr<RawTable> ReadCsvFile(const std::string& path,
                                     const CsvOptions& options = {});

// Reads a CSV file into a Dataset; see Dataset::FromText for schema handling.
absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                const Schema* schema = nullptr,
                                const CsvOptions& options = {},
                                LoadStats* stats = nullptr);

std::string FormatCsv(const Dataset& dataset, const CsvOptions& options = {});
absl::Status WriteCsv(const Dataset& dataset, const std::string& path,
                      const CsvOptions& options = {});

// Schema sidecar:
//   {"columns": [{"name": "age", "kind": "numeric", "min": 0, "max": 90},
//                {"name": "sex", "kind": "categorical",
//                 "categories": ["f", "m"]}]}
std::string SchemaToJson(const Schema& schema);
absl::StatusOr<Schema> SchemaFromJson(std::string_view json);
absl::StatusOr<Schema> LoadSchemaFile(const std::string& path);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace tabeval

#endif  // TABEVAL_CSV_H_
