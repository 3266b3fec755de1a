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

#ifndef TEXTAUDIT_CONFIG_H_
#define TEXTAUDIT_CONFIG_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "textaudit/corpus.h"
#include "textaudit/explain.h"
#include "textaudit/modeliface.h"

namespace textaudit {

// Report sections, in execution order.
inline constexpr std::array<std::string_view, 9> kSectionNames = {
    "performance",    "data_bias",         "embedding_bias",
    "subgroup_stats", "swap_favor",        "counterfactual",
    "fairness_metrics", "explanations",    "emissions",
};

bool IsSectionName(std::string_view name);

struct SwapSpec {
  std::string attribute;
  std::string sub_a;
  std::string sub_b;
};

struct FairnessSpec {
  std::string attribute;
  std::string reference;
  std::string protected_group;
};

struct CounterfactualSpec {
  std::string attribute;
  std::vector<std::string> references;  // empty: every subgroup
};

struct ExplainConfig {
  bool global = true;
  ImportanceMethod method = ImportanceMethod::kOcclusion;
  int m_permutations = 200;
  int max_tokens_per_comment = 32;
  std::size_t top_tokens = 20;  // rows kept in the report
  std::vector<std::string> local_comments;
  int n_samples = 0;
  double kernel_width = 0.75;
  double l2_lambda = 1e-3;
};

struct EmissionsInputs {
  double power_draw_kw = 0;
  double hours = 0;
  double pue = 1;
  double carbon_intensity_kg_per_kwh = 0;
};

struct AuditConfig {
  // Directory that relative paths are resolved against; not echoed.
  std::filesystem::path base_dir;

  std::string dataset;
  DatasetFormat dataset_format = DatasetFormat::kCsv;
  // Optional resources; built-ins are used when absent.
  std::optional<std::string> lexicon;
  std::optional<std::string> gazetteer;
  std::optional<std::string> neutral_words;
  std::optional<std::string> identity_terms;
  std::optional<std::string> templates;
  std::optional<std::string> template_fills;
  std::optional<std::string> embeddings;

  AdapterConfig adapter;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  int rounding_decimals = 4;
  std::vector<std::string> attributes;  // empty: every lexicon attribute
  // Absent lists are derived from the lexicon; see ResolveDefaults in
  // report.cc.
  std::optional<std::vector<SwapSpec>> swap;
  std::optional<std::vector<FairnessSpec>> fairness;
  std::optional<std::vector<CounterfactualSpec>> counterfactual;
  ExplainConfig explain;
  std::optional<EmissionsInputs> emissions;
  std::vector<std::string> sections;  // empty: all
  std::string output_dir = "audit-out";

  std::filesystem::path Resolve(const std::string& path) const;
  bool Requested(std::string_view section) const;
};

absl::StatusOr<AuditConfig> ParseAuditConfig(
    std::string_view json, const std::filesystem::path& base_dir);
absl::StatusOr<AuditConfig> LoadAuditConfig(const std::filesystem::path& path);
absl::Status ValidateAuditConfig(const AuditConfig& config);

// Config echo for reports; omits base_dir and output_dir so the report does
// not depend on where it was written.
nlohmann::json ConfigToJson(const AuditConfig& config);

// The adapter with paths resolved: predictions files against base_dir,
// subprocess commands run from base_dir.
AdapterConfig ResolvedAdapter(const AuditConfig& config);

std::string_view DatasetFormatName(DatasetFormat format);

}  // namespace textaudit

#endif  // TEXTAUDIT_CONFIG_H_
