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

#ifndef TEXTAUDIT_CLASSBIAS_H_
#define TEXTAUDIT_CLASSBIAS_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "textaudit/corpus.h"
#include "textaudit/lexicon.h"
#include "textaudit/mining.h"
#include "textaudit/modeliface.h"

namespace textaudit {

inline constexpr double kDefaultThreshold = 0.5;

// Predicted class is hateful iff p >= threshold.
inline Label PredictedLabel(double p, double threshold) {
  return p >= threshold ? Label::kHateful : Label::kNotHateful;
}

// ---------------------------------------------------------------------------
// Performance report

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t support = 0;
};

struct ClassReport {
  std::array<ClassMetrics, 2> per_class;  // indexed by LabelValue()
  ClassMetrics macro_avg;
  ClassMetrics weighted_avg;
  double accuracy = 0;
  double threshold = kDefaultThreshold;
  // confusion[actual][predicted]
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  // Metrics whose denominator was zero (reported as 0).
  std::vector<std::string> zero_division;
};

absl::StatusOr<ClassReport> PerformanceReport(
    const LabeledCorpus& corpus, const std::vector<PredictionRecord>& preds,
    double threshold = kDefaultThreshold);

// Fixed-width table: rows Not-hateful, Hateful, Macro Avg., Weighted Avg.;
// columns Precision, Recall, F1-Score, Support.
std::string RenderClassReportTable(const ClassReport& report);
nlohmann::json ToJson(const ClassReport& report);

// ---------------------------------------------------------------------------
// Mean predicted probability per (actual label, subgroup)

struct SubgroupProbabilityRow {
  Label label = Label::kNotHateful;
  std::string subgroup;
  std::optional<double> mean_p_hateful;  // empty cell: not computable
  std::size_t n = 0;
};

struct SubgroupProbabilityStats {
  std::string attribute;
  std::vector<SubgroupProbabilityRow> rows;  // label, then subgroup order
};

// A comment that references several subgroups contributes to each.
absl::StatusOr<SubgroupProbabilityStats> ComputeSubgroupProbabilityStats(
    const AnnotatedCorpus& annotated, const std::vector<PredictionRecord>& preds,
    std::string_view attribute);

nlohmann::json ToJson(const SubgroupProbabilityStats& stats);

// ---------------------------------------------------------------------------
// Identity swapping

// Replaces every whole-token occurrence of a paired term by its partner, all
// at once. Initial-capital and all-caps tokens keep their casing pattern;
// anything else becomes lowercase.
std::string SwapText(std::string_view text, const SwapTable& table);

struct FavorCounts {
  std::size_t favor_a = 0;
  std::size_t favor_b = 0;
  std::size_t no_change = 0;
  std::size_t total() const { return favor_a + favor_b + no_change; }
};

enum class FavorOutcome { kFavorA, kFavorB, kNoChange };

struct SwapDetail {
  std::string comment_id;
  Label label = Label::kNotHateful;
  std::string original_subgroup;
  double p_original = 0;
  double p_swapped = 0;
  FavorOutcome outcome = FavorOutcome::kNoChange;
};

struct FavorReport {
  std::string attribute;
  std::string sub_a;
  std::string sub_b;
  double fraction_favor_a = 0;
  double fraction_favor_b = 0;
  double fraction_no_change = 0;
  std::size_t n_swapped = 0;
  int rounding_decimals = 4;
  FavorCounts hateful;
  FavorCounts not_hateful;
  std::vector<SwapDetail> details;
};

// Favor rule on a single swapped comment. After rounding both probabilities
// to `rounding_decimals`: equal means no change; for not-hateful comments the
// identity of the lower-probability version is favored, for hateful comments
// the identity of the higher-probability version.
FavorOutcome DecideFavor(Label label, bool original_is_a, double p_original,
                         double p_swapped, int rounding_decimals);

// Comments that reference exactly one of {sub_a, sub_b} are swapped and
// re-scored.
absl::StatusOr<FavorReport> SwapFavorAnalysis(
    const AnnotatedCorpus& annotated, Predictor& predictor,
    const SwapTable& table, std::string_view attribute, std::string_view sub_a,
    std::string_view sub_b, int rounding_decimals = 4);

nlohmann::json ToJson(const FavorReport& report);

// ---------------------------------------------------------------------------
// Counterfactual templates

struct CounterfactualRow {
  std::size_t template_id = 0;
  std::size_t group = 0;
  std::string subgroup;
  std::string fill;
  std::string text;
  Label label = Label::kNotHateful;
};

// Every group is one template realized once per subgroup.
struct CounterfactualCorpus {
  std::string attribute;
  std::vector<std::string> subgroups;
  std::vector<CounterfactualRow> rows;
  std::size_t group_count = 0;
};

// Group j of a template uses fill j of each subgroup; subgroups with fewer
// fills reuse them cyclically.
absl::StatusOr<CounterfactualCorpus> ExpandTemplates(
    const TemplateSet& templates, const AttributeLexicon& lexicon,
    std::string_view attribute,
    const std::map<std::string, TermList>& identity_terms_per_subgroup);

struct CounterfactualGroup {
  Label label = Label::kNotHateful;
  double p_reference = 0;
  std::vector<double> p_counterfactuals;
};

struct CBResult {
  std::string reference;
  double cb_total = 0;
  double cb_mean = 0;
  std::size_t n_examples = 0;
};

// Sum over groups of (p_reference - mean(p_counterfactuals)) * g(label),
// with g(hateful) = 1 and g(not-hateful) = -1. Positive favors the
// reference subgroup.
absl::StatusOr<CBResult> CounterfactualBiasFromGroups(
    std::span<const CounterfactualGroup> groups, std::string_view reference);

// `probabilities` is aligned with `corpus.rows`.
absl::StatusOr<CBResult> CounterfactualBias(
    const CounterfactualCorpus& corpus, std::span<const double> probabilities,
    std::string_view reference);

// Tables of mean probability per (label, subgroup) over realized templates.
SubgroupProbabilityStats CounterfactualProbabilityStats(
    const CounterfactualCorpus& corpus, std::span<const double> probabilities);

nlohmann::json ToJson(const CBResult& result);

// ---------------------------------------------------------------------------
// Group fairness metrics

struct ScoredExample {
  Label label = Label::kNotHateful;
  double p = 0;
};

// Per-group rates; empty when the denominator is zero.
struct GroupRates {
  std::size_t n = 0;
  std::optional<double> true_positive_rate;
  std::optional<double> gini;
  std::optional<double> normalized_treatment;  // FN / (FN + FP)
  std::optional<double> accuracy;
  std::optional<double> positive_predictive_value;
  std::optional<double> positive_class_balance;  // mean p | predicted positive
  std::optional<double> positive_rate;
};

GroupRates ComputeGroupRates(std::span<const ScoredExample> group,
                             double threshold);

// Gini coefficient via mean absolute difference; 0 for a single value,
// empty when the mean is 0.
std::optional<double> GiniCoefficient(std::span<const double> values);

// Every metric is reference minus protected; empty means not computable.
struct FairnessMetrics {
  std::string reference;
  std::string protected_group;
  double threshold = kDefaultThreshold;
  GroupRates reference_rates;
  GroupRates protected_rates;
  std::optional<double> equal_opportunity;
  std::optional<double> gini_equality;
  std::optional<double> normalized_treatment_equality;
  std::optional<double> overall_accuracy_equality;
  std::optional<double> positive_predictive_value;
  std::optional<double> positive_class_balance;
  std::optional<double> statistical_parity;
};

FairnessMetrics FairnessMetricsFromExamples(
    std::span<const ScoredExample> reference,
    std::span<const ScoredExample> protected_group, double threshold);

absl::StatusOr<FairnessMetrics> ComputeFairnessMetrics(
    const AnnotatedCorpus& annotated, const std::vector<PredictionRecord>& preds,
    std::string_view attribute, std::string_view reference,
    std::string_view protected_subgroup, double threshold = kDefaultThreshold);

nlohmann::json ToJson(const FairnessMetrics& metrics);

}  // namespace textaudit

#endif  // TEXTAUDIT_CLASSBIAS_H_
