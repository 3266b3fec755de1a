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

#include "textaudit/classbias.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include "textaudit/strings.h"
#include "textaudit/text.h"

namespace textaudit {
namespace {

using json = nlohmann::json;

double SafeDivide(double num, double den, bool* zero) {
  if (den == 0) {
    *zero = true;
    return 0;
  }
  return num / den;
}

std::optional<double> Ratio(double num, double den) {
  if (den == 0) return std::nullopt;
  return num / den;
}

std::optional<double> Difference(const std::optional<double>& a,
                                 const std::optional<double>& b) {
  if (!a || !b) return std::nullopt;
  return *a - *b;
}

json OptionalJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

// Aligns predictions to corpus order.
absl::StatusOr<std::vector<double>> AlignPredictions(
    const LabeledCorpus& corpus, const std::vector<PredictionRecord>& preds) {
  PredictionIndex index(preds);
  std::vector<double> out;
  out.reserve(corpus.size());
  std::vector<std::string> missing;
  for (const Comment& c : corpus.comments()) {
    std::optional<double> p = index.Find(c.id);
    if (!p) {
      missing.push_back(c.id);
      continue;
    }
    out.push_back(*p);
  }
  if (!missing.empty()) {
    if (missing.size() > 5) {
      missing.resize(5);
      missing.push_back("...");
    }
    return absl::FailedPreconditionError(
        StrCat("predictions missing for comment ids: ", StrJoin(missing, ", ")));
  }
  return out;
}

std::string WithThousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  const std::size_t lead = digits.size() % 3;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (i - lead) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

json ClassMetricsJson(const ClassMetrics& m) {
  return json{{"precision", m.precision},
              {"recall", m.recall},
              {"f1", m.f1},
              {"support", m.support}};
}

}  // namespace

// ---------------------------------------------------------------------------

absl::StatusOr<ClassReport> PerformanceReport(
    const LabeledCorpus& corpus, const std::vector<PredictionRecord>& preds,
    double threshold) {
  if (!(threshold > 0 && threshold < 1)) {
    return absl::InvalidArgumentError("threshold must lie strictly in (0, 1)");
  }
  if (corpus.empty()) return absl::FailedPreconditionError("corpus is empty");
  absl::StatusOr<std::vector<double>> probs = AlignPredictions(corpus, preds);
  if (!probs.ok()) return probs.status();

  ClassReport report;
  report.threshold = threshold;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const int actual = LabelValue(corpus.comments()[i].label);
    const int predicted = LabelValue(PredictedLabel((*probs)[i], threshold));
    ++report.confusion[actual][predicted];
  }
  const double total = static_cast<double>(corpus.size());
  for (int c = 0; c < 2; ++c) {
    const std::string name(LabelName(static_cast<Label>(c)));
    const double tp = report.confusion[c][c];
    const double predicted = report.confusion[0][c] + report.confusion[1][c];
    const double support = report.confusion[c][0] + report.confusion[c][1];
    ClassMetrics& m = report.per_class[c];
    m.support = static_cast<std::size_t>(support);
    bool zero = false;
    m.precision = SafeDivide(tp, predicted, &zero);
    if (zero) report.zero_division.push_back(StrCat(name, ".precision"));
    zero = false;
    m.recall = SafeDivide(tp, support, &zero);
    if (zero) report.zero_division.push_back(StrCat(name, ".recall"));
    zero = false;
    m.f1 = SafeDivide(2 * m.precision * m.recall, m.precision + m.recall, &zero);
    if (zero) report.zero_division.push_back(StrCat(name, ".f1"));
  }
  const ClassMetrics& a = report.per_class[0];
  const ClassMetrics& b = report.per_class[1];
  report.macro_avg = {(a.precision + b.precision) / 2, (a.recall + b.recall) / 2,
                      (a.f1 + b.f1) / 2, corpus.size()};
  const double wa = a.support / total;
  const double wb = b.support / total;
  report.weighted_avg = {wa * a.precision + wb * b.precision,
                         wa * a.recall + wb * b.recall, wa * a.f1 + wb * b.f1,
                         corpus.size()};
  report.accuracy = (report.confusion[0][0] + report.confusion[1][1]) / total;
  return report;
}

std::string RenderClassReportTable(const ClassReport& report) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-14s %9s %9s %9s %9s\n", "", "Precision",
                "Recall", "F1-Score", "Support");
  out += line;
  auto row = [&](const char* name, const ClassMetrics& m) {
    std::snprintf(line, sizeof(line), "%-14s %9.2f %9.2f %9.2f %9s\n", name,
                  m.precision, m.recall, m.f1,
                  WithThousands(m.support).c_str());
    out += line;
  };
  row("Not-hateful", report.per_class[0]);
  row("Hateful", report.per_class[1]);
  out += "\n";
  std::snprintf(line, sizeof(line), "%-14s %9s %9s %9.2f %9s\n", "Accuracy", "",
                "", report.accuracy,
                WithThousands(report.macro_avg.support).c_str());
  out += line;
  row("Macro Avg.", report.macro_avg);
  row("Weighted Avg.", report.weighted_avg);
  return out;
}

json ToJson(const ClassReport& report) {
  return json{
      {"threshold", report.threshold},
      {"accuracy", report.accuracy},
      {"not_hateful", ClassMetricsJson(report.per_class[0])},
      {"hateful", ClassMetricsJson(report.per_class[1])},
      {"macro_avg", ClassMetricsJson(report.macro_avg)},
      {"weighted_avg", ClassMetricsJson(report.weighted_avg)},
      {"confusion",
       json{{"tn", report.confusion[0][0]},
            {"fp", report.confusion[0][1]},
            {"fn", report.confusion[1][0]},
            {"tp", report.confusion[1][1]}}},
      {"zero_division", report.zero_division},
  };
}

// ---------------------------------------------------------------------------

absl::StatusOr<SubgroupProbabilityStats> ComputeSubgroupProbabilityStats(
    const AnnotatedCorpus& annotated, const std::vector<PredictionRecord>& preds,
    std::string_view attribute) {
  const LabeledCorpus& corpus = annotated.corpus();
  PredictionIndex index(preds);
  // (label, subgroup) -> (sum, n)
  std::map<std::pair<int, std::string>, std::pair<double, std::size_t>> cells;
  std::set<std::string> subgroups;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::set<std::string> refs = annotated.SubgroupsReferenced(i, attribute);
    if (refs.empty()) continue;
    const Comment& c = corpus.comments()[i];
    std::optional<double> p = index.Find(c.id);
    if (!p) {
      return absl::FailedPreconditionError(
          StrCat("no prediction for annotated comment \"", c.id, "\""));
    }
    for (const std::string& sub : refs) {
      subgroups.insert(sub);
      auto& cell = cells[{LabelValue(c.label), sub}];
      cell.first += *p;
      ++cell.second;
    }
  }
  SubgroupProbabilityStats stats;
  stats.attribute = std::string(attribute);
  for (int label = 0; label < 2; ++label) {
    for (const std::string& sub : subgroups) {
      SubgroupProbabilityRow row;
      row.label = static_cast<Label>(label);
      row.subgroup = sub;
      auto it = cells.find({label, sub});
      if (it != cells.end()) {
        row.n = it->second.second;
        row.mean_p_hateful = it->second.first / row.n;
      }
      stats.rows.push_back(std::move(row));
    }
  }
  return stats;
}

json ToJson(const SubgroupProbabilityStats& stats) {
  json rows = json::array();
  for (const SubgroupProbabilityRow& r : stats.rows) {
    rows.push_back(json{{"label", LabelName(r.label)},
                        {"subgroup", r.subgroup},
                        {"mean_p_hateful", OptionalJson(r.mean_p_hateful)},
                        {"n", r.n}});
  }
  return json{{"attribute", stats.attribute}, {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------------------

std::string SwapText(std::string_view text, const SwapTable& table) {
  std::set<std::string> abbreviations;
  TermIndex index;
  std::vector<const std::string*> partners;
  auto add = [&](const std::string& from, const std::string& to) {
    for (const std::string& token : SplitTerm(from)) {
      if (token.size() > 1 && token.back() == '.') abbreviations.insert(token);
    }
    index.Add(from, partners.size());
    partners.push_back(&to);
  };
  for (const auto& [a, b] : table.pairs()) {
    add(a, b);
    add(b, a);
  }
  const std::vector<TokenSpan> tokens =
      Tokenizer(std::move(abbreviations)).Tokenize(text);

  std::string out;
  std::size_t cursor = 0;
  for (const TermIndex::Match& m : index.FindAll(tokens)) {
    const std::size_t start = tokens[m.begin].start;
    const std::size_t end = tokens[m.end - 1].end;
    const std::string& partner = *partners[m.ids->front()];
    out.append(text.substr(cursor, start - cursor));
    out += ApplyCasePattern(partner,
                            DetectCasePattern(text.substr(start, end - start)));
    cursor = end;
  }
  out.append(text.substr(cursor));
  return out;
}

FavorOutcome DecideFavor(Label label, bool original_is_a, double p_original,
                         double p_swapped, int rounding_decimals) {
  const double scale = std::pow(10.0, rounding_decimals);
  const long long ro = std::llround(p_original * scale);
  const long long rs = std::llround(p_swapped * scale);
  if (ro == rs) return FavorOutcome::kNoChange;
  const bool swapped_wins =
      label == Label::kHateful ? rs > ro : rs < ro;
  const bool a_wins = swapped_wins ? !original_is_a : original_is_a;
  return a_wins ? FavorOutcome::kFavorA : FavorOutcome::kFavorB;
}

absl::StatusOr<FavorReport> SwapFavorAnalysis(
    const AnnotatedCorpus& annotated, Predictor& predictor,
    const SwapTable& table, std::string_view attribute, std::string_view sub_a,
    std::string_view sub_b, int rounding_decimals) {
  if (!predictor.serves_novel_texts()) {
    return absl::FailedPreconditionError(
        "swap analysis needs a live model adapter; a predictions file cannot "
        "score swapped texts");
  }
  if (rounding_decimals < 0 || rounding_decimals > 15) {
    return absl::InvalidArgumentError("rounding_decimals must be in [0, 15]");
  }
  if (sub_a == sub_b) {
    return absl::InvalidArgumentError("swap subgroups must differ");
  }
  const LabeledCorpus& corpus = annotated.corpus();
  FavorReport report;
  report.attribute = std::string(attribute);
  report.sub_a = std::string(sub_a);
  report.sub_b = std::string(sub_b);
  report.rounding_decimals = rounding_decimals;

  std::vector<std::string> texts;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const bool has_a = annotated.References(i, attribute, sub_a);
    const bool has_b = annotated.References(i, attribute, sub_b);
    if (has_a == has_b) continue;
    const Comment& c = corpus.comments()[i];
    SwapDetail detail;
    detail.comment_id = c.id;
    detail.label = c.label;
    detail.original_subgroup = std::string(has_a ? sub_a : sub_b);
    report.details.push_back(std::move(detail));
    texts.push_back(c.text);
    texts.push_back(SwapText(c.text, table));
  }
  if (report.details.empty()) {
    return absl::FailedPreconditionError(
        StrCat("no comment references exactly one of ", sub_a, " and ", sub_b));
  }
  absl::StatusOr<std::vector<double>> probs = predictor.PredictBatch(texts);
  if (!probs.ok()) return Annotate(probs.status(), "scoring swapped comments");

  for (std::size_t k = 0; k < report.details.size(); ++k) {
    SwapDetail& d = report.details[k];
    d.p_original = (*probs)[2 * k];
    d.p_swapped = (*probs)[2 * k + 1];
    d.outcome = DecideFavor(d.label, d.original_subgroup == sub_a, d.p_original,
                            d.p_swapped, rounding_decimals);
    FavorCounts& counts =
        d.label == Label::kHateful ? report.hateful : report.not_hateful;
    switch (d.outcome) {
      case FavorOutcome::kFavorA: ++counts.favor_a; break;
      case FavorOutcome::kFavorB: ++counts.favor_b; break;
      case FavorOutcome::kNoChange: ++counts.no_change; break;
    }
  }
  report.n_swapped = report.details.size();
  const double n = static_cast<double>(report.n_swapped);
  report.fraction_favor_a =
      (report.hateful.favor_a + report.not_hateful.favor_a) / n;
  report.fraction_favor_b =
      (report.hateful.favor_b + report.not_hateful.favor_b) / n;
  report.fraction_no_change =
      (report.hateful.no_change + report.not_hateful.no_change) / n;
  return report;
}

namespace {

json FavorCountsJson(const FavorCounts& c) {
  return json{{"favor_a", c.favor_a},
              {"favor_b", c.favor_b},
              {"no_change", c.no_change},
              {"n", c.total()}};
}

std::string_view OutcomeName(FavorOutcome o) {
  switch (o) {
    case FavorOutcome::kFavorA: return "favor_a";
    case FavorOutcome::kFavorB: return "favor_b";
    case FavorOutcome::kNoChange: return "no_change";
  }
  return "";
}

}  // namespace

json ToJson(const FavorReport& report) {
  json details = json::array();
  for (const SwapDetail& d : report.details) {
    details.push_back(json{{"id", d.comment_id},
                           {"label", LabelName(d.label)},
                           {"original_subgroup", d.original_subgroup},
                           {"p_original", d.p_original},
                           {"p_swapped", d.p_swapped},
                           {"outcome", OutcomeName(d.outcome)}});
  }
  return json{{"attribute", report.attribute},
              {"sub_a", report.sub_a},
              {"sub_b", report.sub_b},
              {"fraction_favor_a", report.fraction_favor_a},
              {"fraction_favor_b", report.fraction_favor_b},
              {"fraction_no_change", report.fraction_no_change},
              {"n_swapped", report.n_swapped},
              {"rounding_decimals", report.rounding_decimals},
              {"hateful", FavorCountsJson(report.hateful)},
              {"not_hateful", FavorCountsJson(report.not_hateful)},
              {"details", std::move(details)}};
}

// ---------------------------------------------------------------------------

absl::StatusOr<CounterfactualCorpus> ExpandTemplates(
    const TemplateSet& templates, const AttributeLexicon& lexicon,
    std::string_view attribute,
    const std::map<std::string, TermList>& identity_terms_per_subgroup) {
  const SubgroupTerms* subgroups = lexicon.FindAttribute(attribute);
  if (subgroups == nullptr) {
    return absl::NotFoundError(StrCat("unknown attribute \"", attribute, "\""));
  }
  for (const auto& [sub, fills] : identity_terms_per_subgroup) {
    if (!subgroups->contains(sub)) {
      return absl::InvalidArgumentError(StrCat("identity fills name subgroup \"",
                                               sub, "\" not in attribute \"",
                                               attribute, "\""));
    }
  }
  CounterfactualCorpus out;
  out.attribute = std::string(attribute);
  std::size_t width = 0;
  for (const auto& [sub, terms] : *subgroups) {
    auto it = identity_terms_per_subgroup.find(sub);
    if (it == identity_terms_per_subgroup.end() || it->second.empty()) {
      return absl::InvalidArgumentError(
          StrCat("subgroup \"", sub, "\" has no identity fill term"));
    }
    out.subgroups.push_back(sub);
    width = std::max(width, it->second.size());
  }
  for (std::size_t t = 0; t < templates.templates.size(); ++t) {
    const Template& tmpl = templates.templates[t];
    if (absl::Status s = ValidateTemplate(tmpl); !s.ok()) {
      return Annotate(s, StrCat("template ", t));
    }
    const std::size_t slot = tmpl.pattern.find(kIdentitySlot);
    for (std::size_t j = 0; j < width; ++j) {
      for (const std::string& sub : out.subgroups) {
        const TermList& fills = identity_terms_per_subgroup.at(sub);
        CounterfactualRow row;
        row.template_id = t;
        row.group = out.group_count;
        row.subgroup = sub;
        row.fill = fills[j % fills.size()];
        row.text = tmpl.pattern;
        row.text.replace(slot, kIdentitySlot.size(), row.fill);
        row.label = tmpl.label;
        out.rows.push_back(std::move(row));
      }
      ++out.group_count;
    }
  }
  return out;
}

absl::StatusOr<CBResult> CounterfactualBiasFromGroups(
    std::span<const CounterfactualGroup> groups, std::string_view reference) {
  if (groups.empty()) {
    return absl::FailedPreconditionError("no counterfactual groups");
  }
  CBResult result;
  result.reference = std::string(reference);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const CounterfactualGroup& g = groups[i];
    if (g.p_counterfactuals.empty()) {
      return absl::FailedPreconditionError(
          StrCat("group ", i, " has no counterfactual realization"));
    }
    double sum = 0;
    for (double p : g.p_counterfactuals) sum += p;
    const double mean = sum / g.p_counterfactuals.size();
    const double direction = g.label == Label::kHateful ? 1.0 : -1.0;
    result.cb_total += (g.p_reference - mean) * direction;
  }
  result.n_examples = groups.size();
  result.cb_mean = result.cb_total / result.n_examples;
  return result;
}

absl::StatusOr<CBResult> CounterfactualBias(
    const CounterfactualCorpus& corpus, std::span<const double> probabilities,
    std::string_view reference) {
  if (probabilities.size() != corpus.rows.size()) {
    return absl::InvalidArgumentError(
        StrCat("got ", probabilities.size(), " probabilities for ",
               corpus.rows.size(), " counterfactual rows"));
  }
  std::vector<CounterfactualGroup> groups(corpus.group_count);
  std::vector<bool> has_reference(corpus.group_count, false);
  for (std::size_t i = 0; i < corpus.rows.size(); ++i) {
    const CounterfactualRow& row = corpus.rows[i];
    CounterfactualGroup& g = groups[row.group];
    g.label = row.label;
    if (row.subgroup == reference) {
      g.p_reference = probabilities[i];
      has_reference[row.group] = true;
    } else {
      g.p_counterfactuals.push_back(probabilities[i]);
    }
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!has_reference[g]) {
      return absl::FailedPreconditionError(StrCat(
          "group ", g, " has no realization for reference \"", reference, "\""));
    }
  }
  return CounterfactualBiasFromGroups(groups, reference);
}

SubgroupProbabilityStats CounterfactualProbabilityStats(
    const CounterfactualCorpus& corpus, std::span<const double> probabilities) {
  std::map<std::pair<int, std::string>, std::pair<double, std::size_t>> cells;
  for (std::size_t i = 0; i < corpus.rows.size() && i < probabilities.size();
       ++i) {
    auto& cell =
        cells[{LabelValue(corpus.rows[i].label), corpus.rows[i].subgroup}];
    cell.first += probabilities[i];
    ++cell.second;
  }
  SubgroupProbabilityStats stats;
  stats.attribute = corpus.attribute;
  for (int label = 0; label < 2; ++label) {
    for (const std::string& sub : corpus.subgroups) {
      SubgroupProbabilityRow row;
      row.label = static_cast<Label>(label);
      row.subgroup = sub;
      auto it = cells.find({label, sub});
      if (it != cells.end()) {
        row.n = it->second.second;
        row.mean_p_hateful = it->second.first / row.n;
      }
      stats.rows.push_back(std::move(row));
    }
  }
  return stats;
}

json ToJson(const CBResult& result) {
  return json{{"reference", result.reference},
              {"cb_total", result.cb_total},
              {"cb_mean", result.cb_mean},
              {"n_examples", result.n_examples}};
}

// ---------------------------------------------------------------------------

std::optional<double> GiniCoefficient(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  if (values.size() == 1) return 0.0;
  double sum = 0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  const double mean = sum / n;
  if (mean == 0) return std::nullopt;
  // Sorted form of sum_i sum_j |x_i - x_j| in O(n log n).
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double pairwise = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    pairwise += sorted[i] * (2.0 * static_cast<double>(i) + 1.0 - n);
  }
  pairwise *= 2;
  return pairwise / (2 * n * n * mean);
}

GroupRates ComputeGroupRates(std::span<const ScoredExample> group,
                             double threshold) {
  GroupRates r;
  r.n = group.size();
  double tp = 0, fp = 0, tn = 0, fn = 0, sum_p_positive = 0;
  std::vector<double> benefits;
  benefits.reserve(group.size());
  for (const ScoredExample& e : group) {
    const bool actual = e.label == Label::kHateful;
    const bool predicted = PredictedLabel(e.p, threshold) == Label::kHateful;
    if (predicted) sum_p_positive += e.p;
    if (actual && predicted) ++tp;
    if (!actual && predicted) ++fp;
    if (!actual && !predicted) ++tn;
    if (actual && !predicted) ++fn;
    benefits.push_back(e.p - LabelValue(e.label) + 1);
  }
  r.true_positive_rate = Ratio(tp, tp + fn);
  r.gini = GiniCoefficient(benefits);
  r.normalized_treatment = Ratio(fn, fn + fp);
  r.accuracy = Ratio(tp + tn, static_cast<double>(group.size()));
  r.positive_predictive_value = Ratio(tp, tp + fp);
  r.positive_class_balance = Ratio(sum_p_positive, tp + fp);
  r.positive_rate = Ratio(tp + fp, static_cast<double>(group.size()));
  return r;
}

FairnessMetrics FairnessMetricsFromExamples(
    std::span<const ScoredExample> reference,
    std::span<const ScoredExample> protected_group, double threshold) {
  FairnessMetrics m;
  m.threshold = threshold;
  m.reference_rates = ComputeGroupRates(reference, threshold);
  m.protected_rates = ComputeGroupRates(protected_group, threshold);
  const GroupRates& r = m.reference_rates;
  const GroupRates& p = m.protected_rates;
  m.equal_opportunity = Difference(r.true_positive_rate, p.true_positive_rate);
  m.gini_equality = Difference(r.gini, p.gini);
  m.normalized_treatment_equality =
      Difference(r.normalized_treatment, p.normalized_treatment);
  m.overall_accuracy_equality = Difference(r.accuracy, p.accuracy);
  m.positive_predictive_value =
      Difference(r.positive_predictive_value, p.positive_predictive_value);
  m.positive_class_balance =
      Difference(r.positive_class_balance, p.positive_class_balance);
  m.statistical_parity = Difference(r.positive_rate, p.positive_rate);
  return m;
}

absl::StatusOr<FairnessMetrics> ComputeFairnessMetrics(
    const AnnotatedCorpus& annotated, const std::vector<PredictionRecord>& preds,
    std::string_view attribute, std::string_view reference,
    std::string_view protected_subgroup, double threshold) {
  if (!(threshold > 0 && threshold < 1)) {
    return absl::InvalidArgumentError("threshold must lie strictly in (0, 1)");
  }
  if (reference == protected_subgroup) {
    return absl::InvalidArgumentError(
        "reference and protected subgroups must differ");
  }
  const LabeledCorpus& corpus = annotated.corpus();
  PredictionIndex index(preds);
  std::vector<ScoredExample> ref_examples;
  std::vector<ScoredExample> prot_examples;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const bool in_ref = annotated.References(i, attribute, reference);
    const bool in_prot = annotated.References(i, attribute, protected_subgroup);
    if (!in_ref && !in_prot) continue;
    const Comment& c = corpus.comments()[i];
    std::optional<double> p = index.Find(c.id);
    if (!p) {
      return absl::FailedPreconditionError(
          StrCat("no prediction for annotated comment \"", c.id, "\""));
    }
    if (in_ref) ref_examples.push_back({c.label, *p});
    if (in_prot) prot_examples.push_back({c.label, *p});
  }
  if (ref_examples.empty()) {
    return absl::FailedPreconditionError(
        StrCat("no comment references reference subgroup \"", reference, "\""));
  }
  if (prot_examples.empty()) {
    return absl::FailedPreconditionError(StrCat(
        "no comment references protected subgroup \"", protected_subgroup,
        "\""));
  }
  FairnessMetrics m =
      FairnessMetricsFromExamples(ref_examples, prot_examples, threshold);
  m.reference = std::string(reference);
  m.protected_group = std::string(protected_subgroup);
  return m;
}

namespace {

json GroupRatesJson(const GroupRates& r) {
  return json{{"n", r.n},
              {"true_positive_rate", OptionalJson(r.true_positive_rate)},
              {"gini", OptionalJson(r.gini)},
              {"normalized_treatment", OptionalJson(r.normalized_treatment)},
              {"accuracy", OptionalJson(r.accuracy)},
              {"positive_predictive_value",
               OptionalJson(r.positive_predictive_value)},
              {"positive_class_balance", OptionalJson(r.positive_class_balance)},
              {"positive_rate", OptionalJson(r.positive_rate)}};
}

}  // namespace

json ToJson(const FairnessMetrics& m) {
  return json{
      {"reference", m.reference},
      {"protected", m.protected_group},
      {"threshold", m.threshold},
      {"reference_rates", GroupRatesJson(m.reference_rates)},
      {"protected_rates", GroupRatesJson(m.protected_rates)},
      {"metrics",
       json{{"equal_opportunity", OptionalJson(m.equal_opportunity)},
            {"gini_equality", OptionalJson(m.gini_equality)},
            {"normalized_treatment_equality",
             OptionalJson(m.normalized_treatment_equality)},
            {"overall_accuracy_equality",
             OptionalJson(m.overall_accuracy_equality)},
            {"positive_predictive_value",
             OptionalJson(m.positive_predictive_value)},
            {"positive_class_balance", OptionalJson(m.positive_class_balance)},
            {"statistical_parity", OptionalJson(m.statistical_parity)}}},
  };
}

}  // namespace textaudit
