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

#ifndef TEXTAUDIT_REPORT_H_
#define TEXTAUDIT_REPORT_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "textaudit/config.h"

namespace textaudit {

std::string_view ToolVersion();

struct EmissionsEstimate {
  double power_draw_kw = 0;
  double hours = 0;
  double pue = 1;
  double carbon_intensity_kg_per_kwh = 0;
  double co2eq_kg = 0;
};

// co2eq_kg = power_draw_kw * hours * pue * carbon_intensity_kg_per_kwh.
absl::StatusOr<EmissionsEstimate> EstimateEmissions(
    double power_draw_kw, double hours, double pue,
    double carbon_intensity_kg_per_kwh);

nlohmann::json ToJson(const EmissionsEstimate& e);

enum class SectionStatus { kComputed, kSkipped, kFailed };
std::string_view SectionStatusName(SectionStatus status);

struct SectionResult {
  SectionStatus status = SectionStatus::kSkipped;
  std::string detail;     // skip reason or error message
  nlohmann::json result;  // canonical; null unless computed

  bool operator==(const SectionResult&) const = default;
};

struct InputRecord {
  std::string role;
  std::string path;  // as written in the config
  std::string sha256;

  bool operator==(const InputRecord&) const = default;
};

struct AuditReport {
  std::string tool_version;
  nlohmann::json config;
  std::vector<InputRecord> inputs;
  std::map<std::string, SectionResult> sections;
  // Per-section CSV files (file name -> content); not part of the JSON.
  std::map<std::string, std::string> csv_files;

  bool AnyFailed() const;
  bool operator==(const AuditReport& other) const {
    return tool_version == other.tool_version && config == other.config &&
           inputs == other.inputs && sections == other.sections;
  }
};

// Runs every requested section. Only problems with the config or its inputs
// (dataset, lexicon and other resources) are returned as errors; section
// failures are recorded in the report.
absl::StatusOr<AuditReport> RunAudit(const AuditConfig& config);

// Rounds every floating-point value to 6 significant digits, maps magnitudes
// below 1e-12 to 0 and non-finite values to null. Object keys are already
// sorted.
nlohmann::json Canonicalize(const nlohmann::json& value);

nlohmann::json ReportToJson(const AuditReport& report);
std::string RenderReportJson(const AuditReport& report);
std::string RenderReportMarkdown(const AuditReport& report);
absl::StatusOr<AuditReport> ParseReportJson(std::string_view text);

// Writes report.json, report.md and the section CSVs, each atomically.
absl::Status WriteReport(const AuditReport& report,
                         const std::filesystem::path& dir);

}  // namespace textaudit

#endif  // TEXTAUDIT_REPORT_H_
