// Copyright 2026 The Textaudit Authors
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
//

#ifndef TEXTAUDIT_CSV_H_
#define TEXTAUDIT_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace textaudit {

struct CsvRecord {
  std::vector<std::string> fields;
  int line = 0;  // 1-based physical line where the record starts.
};

// RFC-4180 reader. Accepts LF or CRLF line endings; blank lines are skipped.
absl::StatusOr<std::vector<CsvRecord>> ParseCsv(std::string_view content);

std::string CsvEscape(std::string_view field);
std::string FormatCsvRow(const std::vector<std::string>& fields);

}  // namespace textaudit

#endif  // TEXTAUDIT_CSV_H_
