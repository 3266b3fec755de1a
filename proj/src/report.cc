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

#include "textaudit/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <variant>

#include "textaudit/classbias.h"
#include "textaudit/csv.h"
#include "textaudit/databias.h"
#include "textaudit/embedbias.h"
#include "textaudit/explain.h"
#include "textaudit/io.h"
#include "textaudit/lexicon.h"
#include "textaudit/mining.h"
#include "textaudit/modeliface.h"
#include "textaudit/strings.h"

#ifndef TEXTAUDIT_VERSION
#define TEXTAUDIT_VERSION "0.0.0"
#endif

namespace textaudit {
namespace {

using json = nlohmann::json;

constexpr std::string_view kEmissionsFormula =
    "co2eq_kg = power_draw_kw * hours * pue * carbon_intensity_kg_per_kwh";

std::string Num(double v, int decimals = 4) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string Num6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Audit execution

struct Skip {
  std::string reason;
};
using SectionOutput = std::variant<json, Skip>;

class AuditRun {
 public:
  AuditRun(const AuditConfig& config, AuditReport& report)
      : config_(config), report_(report) {}

  absl::Status Load();
  void RunSections();

 private:
  absl::StatusOr<std::string> ReadInput(std::string_view role,
                                        const std::string& path);
  template <typename T, typename Parse>
  absl::Status LoadResource(std::string_view role,
                            const std::optional<std::string>& path,
                            const T& fallback, T* out, Parse parse);

  void Run(std::string_view name,
           const std::function<absl::StatusOr<SectionOutput>()>& fn);
  absl::StatusOr<const std::vector<PredictionRecord>*> CorpusPredictions();
  absl::StatusOr<Predictor*> LivePredictor();
  bool Referenced(std::string_view attribute, std::string_view subgroup) const;

  absl::StatusOr<SectionOutput> Performance();
  absl::StatusOr<SectionOutput> DataBias();
  absl::StatusOr<SectionOutput> EmbeddingBiasSection();
  absl::StatusOr<SectionOutput> SubgroupStats();
  absl::StatusOr<SectionOutput> SwapFavor();
  absl::StatusOr<SectionOutput> Counterfactual();
  absl::StatusOr<SectionOutput> Fairness();
  absl::StatusOr<SectionOutput> Explanations();
  absl::StatusOr<SectionOutput> Emissions();

  const AuditConfig& config_;
  AuditReport& report_;

  LabeledCorpus corpus_;
  AttributeLexicon lexicon_;
  Gazetteer gazetteer_;
  NeutralWordList neutrals_;
  IdentityTermList identity_terms_;
  TemplateSet templates_;
  TemplateFills fills_;
  AnnotatedCorpus annotated_;
  std::vector<std::string> attributes_;

  std::unique_ptr<Predictor> predictor_;
  absl::Status predictor_status_;
  std::optional<absl::StatusOr<std::vector<PredictionRecord>>> preds_;
};

absl::StatusOr<std::string> AuditRun::ReadInput(std::string_view role,
                                                const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(config_.Resolve(path));
  if (!content.ok()) return Annotate(content.status(), role);
  report_.inputs.push_back({std::string(role), path, Sha256Hex(*content)});
  return content;
}

template <typename T, typename Parse>
absl::Status AuditRun::LoadResource(std::string_view role,
                                    const std::optional<std::string>& path,
                                    const T& fallback, T* out, Parse parse) {
  if (!path) {
    *out = fallback;
    return absl::OkStatus();
  }
  absl::StatusOr<std::string> content = ReadInput(role, *path);
  if (!content.ok()) return content.status();
  absl::StatusOr<T> parsed = parse(*content);
  if (!parsed.ok()) return Annotate(parsed.status(), StrCat(role, " ", *path));
  *out = *std::move(parsed);
  return absl::OkStatus();
}

absl::StatusOr<TemplateFills> ParseTemplateFills(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError(
        "template fills must be a JSON object {attribute: {subgroup: [...]}}");
  }
  TemplateFills fills;
  for (const auto& [attr, subs] : doc.items()) {
    if (!subs.is_object()) {
      return absl::InvalidArgumentError(
          StrCat("template fills for \"", attr, "\" must be an object"));
    }
    for (const auto& [sub, terms] : subs.items()) {
      if (!terms.is_array()) {
        return absl::InvalidArgumentError(StrCat(
            "template fills for \"", attr, "/", sub, "\" must be an array"));
      }
      TermList& list = fills[attr][sub];
      for (const json& t : terms) {
        if (!t.is_string()) {
          return absl::InvalidArgumentError(StrCat(
              "template fills for \"", attr, "/", sub, "\" must be strings"));
        }
        list.push_back(t.get<std::string>());
      }
    }
  }
  return fills;
}

absl::Status AuditRun::Load() {
  absl::StatusOr<std::string> dataset = ReadInput("dataset", config_.dataset);
  if (!dataset.ok()) return dataset.status();
  absl::StatusOr<LabeledCorpus> corpus =
      ParseDataset(*dataset, config_.dataset_format);
  if (!corpus.ok()) {
    return Annotate(corpus.status(), StrCat("dataset ", config_.dataset));
  }
  corpus_ = *std::move(corpus);

  absl::Status s = LoadResource<AttributeLexicon>(
      "lexicon", config_.lexicon, DefaultLexicon(), &lexicon_,
      [](std::string_view t) { return ParseLexicon(t); });
  if (s.ok()) {
    s = LoadResource<Gazetteer>(
        "gazetteer", config_.gazetteer, DefaultGazetteer(), &gazetteer_,
        [](std::string_view t) { return ParseGazetteer(t); });
  }
  if (s.ok()) {
    s = LoadResource<NeutralWordList>(
        "neutral_words", config_.neutral_words, DefaultNeutralWords(),
        &neutrals_,
        [](std::string_view t) -> absl::StatusOr<NeutralWordList> {
          absl::StatusOr<std::vector<std::string>> w = ParseWordList(t);
          if (!w.ok()) return w.status();
          return NeutralWordList{*std::move(w)};
        });
  }
  if (s.ok()) {
    s = LoadResource<IdentityTermList>(
        "identity_terms", config_.identity_terms, DefaultIdentityTerms(),
        &identity_terms_,
        [](std::string_view t) -> absl::StatusOr<IdentityTermList> {
          absl::StatusOr<std::vector<std::string>> w = ParseWordList(t);
          if (!w.ok()) return w.status();
          return IdentityTermList{*std::move(w)};
        });
  }
  if (s.ok()) {
    s = LoadResource<TemplateSet>(
        "templates", config_.templates, DefaultTemplates(), &templates_,
        [](std::string_view t) { return ParseTemplates(t); });
  }
  if (s.ok()) {
    s = LoadResource<TemplateFills>("template_fills", config_.template_fills,
                                    DefaultTemplateFills(), &fills_,
                                    ParseTemplateFills);
  }
  if (!s.ok()) return s;

  if (config_.attributes.empty()) {
    for (const auto& [attr, subs] : lexicon_.attributes()) {
      attributes_.push_back(attr);
    }
  } else {
    for (const std::string& attr : config_.attributes) {
      if (lexicon_.FindAttribute(attr) == nullptr) {
        return absl::InvalidArgumentError(
            StrCat("attribute \"", attr, "\" is not in the lexicon"));
      }
      attributes_.push_back(attr);
    }
  }

  annotated_ = AnnotateCorpus(corpus_, lexicon_, gazetteer_);

  const AdapterConfig adapter = ResolvedAdapter(config_);
  if (adapter.kind == AdapterKind::kPredictionsFile) {
    // Hash the predictions file as an input; Open reads it again.
    if (absl::StatusOr<std::string> p =
            ReadInput("predictions", config_.adapter.location);
        !p.ok()) {
      predictor_status_ = p.status();
      return absl::OkStatus();
    }
  }
  absl::StatusOr<std::unique_ptr<Predictor>> predictor =
      Predictor::Open(adapter, &corpus_);
  if (predictor.ok()) {
    predictor_ = *std::move(predictor);
  } else {
    predictor_status_ = predictor.status();
  }
  return absl::OkStatus();
}

absl::StatusOr<const std::vector<PredictionRecord>*>
AuditRun::CorpusPredictions() {
  if (!predictor_) return predictor_status_;
  if (!preds_) preds_ = PredictCorpus(corpus_, *predictor_);
  if (!preds_->ok()) return preds_->status();
  return &**preds_;
}

absl::StatusOr<Predictor*> AuditRun::LivePredictor() {
  if (!predictor_) return predictor_status_;
  return predictor_.get();
}

bool AuditRun::Referenced(std::string_view attribute,
                          std::string_view subgroup) const {
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    if (annotated_.References(i, attribute, subgroup)) return true;
  }
  return false;
}

void AuditRun::Run(std::string_view name,
                   const std::function<absl::StatusOr<SectionOutput>()>& fn) {
  if (!config_.Requested(name)) return;
  SectionResult result;
  absl::StatusOr<SectionOutput> out = fn();
  if (!out.ok()) {
    result.status = SectionStatus::kFailed;
    result.detail = StatusMessage(out.status());
  } else if (const Skip* skip = std::get_if<Skip>(&*out)) {
    result.status = SectionStatus::kSkipped;
    result.detail = skip->reason;
  } else {
    result.status = SectionStatus::kComputed;
    result.result = Canonicalize(std::get<json>(*out));
  }
  report_.sections[std::string(name)] = std::move(result);
}

void AuditRun::RunSections() {
  Run("performance", [&] { return Performance(); });
  Run("data_bias", [&] { return DataBias(); });
  Run("embedding_bias", [&] { return EmbeddingBiasSection(); });
  Run("subgroup_stats", [&] { return SubgroupStats(); });
  Run("swap_favor", [&] { return SwapFavor(); });
  Run("counterfactual", [&] { return Counterfactual(); });
  Run("fairness_metrics", [&] { return Fairness(); });
  Run("explanations", [&] { return Explanations(); });
  Run("emissions", [&] { return Emissions(); });
}

const char* kNeedsLiveAdapter =
    "requires a live model adapter (subprocess or http)";

absl::StatusOr<SectionOutput> AuditRun::Performance() {
  absl::StatusOr<const std::vector<PredictionRecord>*> preds =
      CorpusPredictions();
  if (!preds.ok()) return preds.status();
  absl::StatusOr<ClassReport> r =
      PerformanceReport(corpus_, **preds, config_.threshold);
  if (!r.ok()) return r.status();
  std::string csv =
      FormatCsvRow({"class", "precision", "recall", "f1", "support"});
  auto row = [&](const std::string& name, const ClassMetrics& m) {
    csv += FormatCsvRow({name, Num6(m.precision), Num6(m.recall), Num6(m.f1),
                         std::to_string(m.support)});
  };
  row("not-hateful", r->per_class[0]);
  row("hateful", r->per_class[1]);
  row("macro_avg", r->macro_avg);
  row("weighted_avg", r->weighted_avg);
  report_.csv_files["performance.csv"] = std::move(csv);
  return SectionOutput(ToJson(*r));
}

absl::StatusOr<SectionOutput> AuditRun::DataBias() {
  absl::StatusOr<std::vector<FrequencyRow>> terms =
      IdentityTermFrequencies(corpus_, identity_terms_);
  if (!terms.ok()) return terms.status();
  absl::StatusOr<std::vector<FrequencyRow>> subs =
      SubgroupReferenceFrequencies(annotated_);
  if (!subs.ok()) return subs.status();
  std::vector<FrequencyRow> kept;
  const std::set<std::string> wanted(attributes_.begin(), attributes_.end());
  for (FrequencyRow& row : *subs) {
    if (wanted.contains(row.attribute)) kept.push_back(std::move(row));
  }
  json out{{"identity_terms", json::array()},
           {"subgroup_references", json::array()}};
  for (const FrequencyRow& row : *terms) {
    out["identity_terms"].push_back(ToJson(row));
  }
  for (const FrequencyRow& row : kept) {
    out["subgroup_references"].push_back(ToJson(row));
  }
  report_.csv_files["identity_terms.csv"] = FrequencyTableCsv(*terms);
  report_.csv_files["subgroup_references.csv"] = FrequencyTableCsv(kept);
  return SectionOutput(std::move(out));
}

absl::StatusOr<SectionOutput> AuditRun::EmbeddingBiasSection() {
  if (!config_.embeddings) return SectionOutput(Skip{"no embedding file"});
  absl::StatusOr<std::string> content =
      ReadInput("embeddings", *config_.embeddings);
  if (!content.ok()) return content.status();
  absl::StatusOr<EmbeddingTable> table = EmbeddingTable::Parse(*content);
  if (!table.ok()) return table.status();
  json out{{"dimension", table->dimension()},
           {"vocabulary", table->size()},
           {"duplicate_terms", table->duplicate_count()},
           {"attributes", json::object()}};
  for (const std::string& attr : attributes_) {
    absl::StatusOr<EmbeddingBiasResult> r =
        EmbeddingBias(neutrals_, lexicon_, attr, *table);
    if (!r.ok()) return Annotate(r.status(), StrCat("attribute ", attr));
    out["attributes"][attr] = ToJson(*r);
    report_.csv_files[StrCat("embedding_bias_", attr, ".csv")] =
        EmbeddingBiasCsv(*r);
  }
  return SectionOutput(std::move(out));
}

absl::StatusOr<SectionOutput> AuditRun::SubgroupStats() {
  absl::StatusOr<const std::vector<PredictionRecord>*> preds =
      CorpusPredictions();
  if (!preds.ok()) return preds.status();
  json out = json::object();
  std::string csv = FormatCsvRow(
      {"attribute", "label", "subgroup", "mean_p_hateful", "n"});
  for (const std::string& attr : attributes_) {
    absl::StatusOr<SubgroupProbabilityStats> s =
        ComputeSubgroupProbabilityStats(annotated_, **preds, attr);
    if (!s.ok()) return Annotate(s.status(), StrCat("attribute ", attr));
    out[attr] = ToJson(*s);
    for (const SubgroupProbabilityRow& row : s->rows) {
      csv += FormatCsvRow(
          {attr, std::string(LabelName(row.label)), row.subgroup,
           row.mean_p_hateful ? Num6(*row.mean_p_hateful) : "not-computable",
           std::to_string(row.n)});
    }
  }
  report_.csv_files["subgroup_stats.csv"] = std::move(csv);
  return SectionOutput(std::move(out));
}

absl::StatusOr<SectionOutput> AuditRun::SwapFavor() {
  if (config_.adapter.kind == AdapterKind::kPredictionsFile) {
    return SectionOutput(Skip{kNeedsLiveAdapter});
  }
  std::vector<SwapSpec> specs;
  if (config_.swap) {
    specs = *config_.swap;
  } else {
    // Attributes with exactly two equally long term lists whose subgroups
    // both occur in the corpus.
    for (const std::string& attr : attributes_) {
      const SubgroupTerms& subs = *lexicon_.FindAttribute(attr);
      if (subs.size() != 2) continue;
      const auto& a = *subs.begin();
      const auto& b = *std::next(subs.begin());
      if (a.second.size() != b.second.size()) continue;
      if (!Referenced(attr, a.first) || !Referenced(attr, b.first)) continue;
      specs.push_back({attr, a.first, b.first});
    }
  }
  if (specs.empty()) {
    return SectionOutput(Skip{"no attribute pair to swap"});
  }
  absl::StatusOr<Predictor*> predictor = LivePredictor();
  if (!predictor.ok()) return predictor.status();
  json out = json::array();
  std::string csv = FormatCsvRow({"attribute", "sub_a", "sub_b", "id", "label",
                                  "original_subgroup", "p_original",
                                  "p_swapped", "outcome"});
  for (const SwapSpec& spec : specs) {
    absl::StatusOr<SwapTable> table =
        AlignedSwapPairs(lexicon_, spec.attribute, spec.sub_a, spec.sub_b);
    if (!table.ok()) return table.status();
    absl::StatusOr<FavorReport> r =
        SwapFavorAnalysis(annotated_, **predictor, *table, spec.attribute,
                          spec.sub_a, spec.sub_b, config_.rounding_decimals);
    if (!r.ok()) {
      return Annotate(r.status(), StrCat(spec.attribute, " ", spec.sub_a, "/",
                                         spec.sub_b));
    }
    json item = ToJson(*r);
    item["swap_warnings"] = table->warnings();
    out.push_back(std::move(item));
    for (const json& d : out.back()["details"]) {
      csv += FormatCsvRow({spec.attribute, spec.sub_a, spec.sub_b,
                           d["id"].get<std::string>(),
                           d["label"].get<std::string>(),
                           d["original_subgroup"].get<std::string>(),
                           Num6(d["p_original"].get<double>()),
                           Num6(d["p_swapped"].get<double>()),
                           d["outcome"].get<std::string>()});
    }
  }
  report_.csv_files["swap_favor.csv"] = std::move(csv);
  return SectionOutput(std::move(out));
}

absl::StatusOr<SectionOutput> AuditRun::Counterfactual() {
  if (config_.adapter.kind == AdapterKind::kPredictionsFile) {
    return SectionOutput(Skip{kNeedsLiveAdapter});
  }
  std::vector<CounterfactualSpec> specs;
  if (config_.counterfactual) {
    specs = *config_.counterfactual;
  } else {
    for (const std::string& attr : attributes_) {
      if (fills_.contains(attr)) specs.push_back({attr, {}});
    }
  }
  if (specs.empty()) {
    return SectionOutput(Skip{"no attribute has template fills"});
  }
  absl::StatusOr<Predictor*> predictor = LivePredictor();
  if (!predictor.ok()) return predictor.status();
  json out = json::object();
  for (const CounterfactualSpec& spec : specs) {
    auto fills = fills_.find(spec.attribute);
    if (fills == fills_.end()) {
      return absl::InvalidArgumentError(
          StrCat("no template fills for attribute \"", spec.attribute, "\""));
    }
    absl::StatusOr<CounterfactualCorpus> cf =
        ExpandTemplates(templates_, lexicon_, spec.attribute, fills->second);
    if (!cf.ok()) return cf.status();
    std::vector<std::string> texts;
    for (const CounterfactualRow& row : cf->rows) texts.push_back(row.text);
    absl::StatusOr<std::vector<double>> probs = (*predictor)->PredictBatch(texts);
    if (!probs.ok()) return Annotate(probs.status(), "scoring templates");

    const std::vector<std::string> references =
        spec.references.empty() ? cf->subgroups : spec.references;
    json cb = json::array();
    for (const std::string& ref : references) {
      absl::StatusOr<CBResult> r = CounterfactualBias(*cf, *probs, ref);
      if (!r.ok()) return r.status();
      cb.push_back(ToJson(*r));
    }
    json rows = json::array();
    std::string csv = FormatCsvRow(
        {"template_id", "group", "subgroup", "label", "text", "p_hateful"});
    for (std::size_t i = 0; i < cf->rows.size(); ++i) {
      const CounterfactualRow& row = cf->rows[i];
      rows.push_back(json{{"template_id", row.template_id},
                          {"group", row.group},
                          {"subgroup", row.subgroup},
                          {"label", LabelName(row.label)},
                          {"text", row.text},
                          {"p_hateful", (*probs)[i]}});
      csv += FormatCsvRow({std::to_string(row.template_id),
                           std::to_string(row.group), row.subgroup,
                           std::string(LabelName(row.label)), row.text,
                           Num6((*probs)[i])});
    }
    report_.csv_files[StrCat("counterfactual_", spec.attribute, ".csv")] =
        std::move(csv);
    out[spec.attribute] = json{
        {"n_rows", cf->rows.size()},
        {"n_groups", cf->group_count},
        {"cb", std::move(cb)},
        {"probability_stats",
         ToJson(CounterfactualProbabilityStats(*cf, *probs))},
        {"rows", std::move(rows)},
    };
  }
  return SectionOutput(std::move(out));
}

absl::StatusOr<SectionOutput> AuditRun::Fairness() {
  std::vector<FairnessSpec> specs;
  if (config_.fairness) {
    specs = *config_.fairness;
  } else {
    // First subgroup (by name) as reference against each other referenced
    // subgroup.
    for (const std::string& attr : attributes_) {
      std::vector<std::string> present;
      for (const auto& [sub, terms] : *lexicon_.FindAttribute(attr)) {
        if (Referenced(attr, sub)) present.push_back(sub);
      }
      for (std::size_t i = 1; i < present.size(); ++i) {
        specs.push_back({attr, present[0], present[i]});
      }
    }
  }
  if (specs.empty()) {
    return SectionOutput(Skip{"no pair of referenced subgroups"});
  }
  absl::StatusOr<const std::vector<PredictionRecord>*> preds =
      CorpusPredictions();
  if (!preds.ok()) return preds.status();
  json out = json::array();
  std::string csv = FormatCsvRow(
      {"attribute", "reference", "protected", "metric", "value"});
  for (const FairnessSpec& spec : specs) {
    absl::StatusOr<FairnessMetrics> m = ComputeFairnessMetrics(
        annotated_, **preds, spec.attribute, spec.reference,
        spec.protected_group, config_.threshold);
    if (!m.ok()) return Annotate(m.status(), spec.attribute);
    json item = ToJson(*m);
    item["attribute"] = spec.attribute;
    for (const auto& [metric, value] : item["metrics"].items()) {
      csv += FormatCsvRow({spec.attribute, spec.reference,
                           spec.protected_group, metric,
                           value.is_null() ? "not-computable"
                                           : Num6(value.get<double>())});
    }
    out.push_back(std::move(item));
  }
  report_.csv_files["fairness_metrics.csv"] = std::move(csv);
  return SectionOutput(std::move(out));
}

absl::StatusOr<SectionOutput> AuditRun::Explanations() {
  if (config_.adapter.kind == AdapterKind::kPredictionsFile) {
    return SectionOutput(Skip{kNeedsLiveAdapter});
  }
  const ExplainConfig& e = config_.explain;
  if (!e.global && e.local_comments.empty()) {
    return SectionOutput(Skip{"no explanations requested"});
  }
  absl::StatusOr<Predictor*> predictor = LivePredictor();
  if (!predictor.ok()) return predictor.status();
  json out = json::object();
  if (e.global) {
    absl::StatusOr<GlobalImportance> g = ComputeGlobalImportance(
        corpus_, **predictor, e.method, e.m_permutations,
        e.max_tokens_per_comment, config_.seed);
    if (!g.ok()) return g.status();
    report_.csv_files["global_importance.csv"] = GlobalImportanceCsv(*g);
    json gj = ToJson(*g);
    gj["total_tokens"] = g->rows.size();
    if (gj["rows"].size() > e.top_tokens) {
      gj["rows"].erase(gj["rows"].begin() + e.top_tokens, gj["rows"].end());
    }
    out["global"] = std::move(gj);
  }
  json local = json::array();
  for (const std::string& id : e.local_comments) {
    const Comment* c = corpus_.Find(id);
    if (c == nullptr) {
      return absl::NotFoundError(StrCat("comment \"", id, "\" not in dataset"));
    }
    LocalExplainOptions options;
    options.n_samples = e.n_samples;
    options.kernel_width = e.kernel_width;
    options.l2_lambda = e.l2_lambda;
    options.rng_seed = config_.seed;
    absl::StatusOr<LocalExplanation> le = LocalExplain(*c, **predictor, options);
    if (!le.ok()) return Annotate(le.status(), StrCat("comment \"", id, "\""));
    local.push_back(ToJson(*le));
  }
  out["local"] = std::move(local);
  return SectionOutput(std::move(out));
}

absl::StatusOr<SectionOutput> AuditRun::Emissions() {
  if (!config_.emissions) return SectionOutput(Skip{"no emissions inputs"});
  const EmissionsInputs& in = *config_.emissions;
  absl::StatusOr<EmissionsEstimate> e = EstimateEmissions(
      in.power_draw_kw, in.hours, in.pue, in.carbon_intensity_kg_per_kwh);
  if (!e.ok()) return e.status();
  report_.csv_files["emissions.csv"] =
      FormatCsvRow({"power_draw_kw", "hours", "pue",
                    "carbon_intensity_kg_per_kwh", "co2eq_kg"}) +
      FormatCsvRow({Num6(e->power_draw_kw), Num6(e->hours), Num6(e->pue),
                    Num6(e->carbon_intensity_kg_per_kwh), Num6(e->co2eq_kg)});
  return SectionOutput(ToJson(*e));
}

// ---------------------------------------------------------------------------
// Markdown

std::string Pct(const json& v) {
  return v.is_number() ? Num(v.get<double>(), 1) + "%" : "n/a";
}

std::string Prob(const json& v) {
  return v.is_number() ? Num(v.get<double>(), 4) : "not computable";
}

std::string Count(const json& v) {
  return v.is_number() ? std::to_string(v.get<long long>()) : "";
}

std::string EscapeCell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

void TableRow(std::string& md, const std::vector<std::string>& cells) {
  md += "|";
  for (const std::string& c : cells) md += " " + EscapeCell(c) + " |";
  md += "\n";
}

void Table(std::string& md, const std::vector<std::string>& header) {
  TableRow(md, header);
  md += "|";
  for (std::size_t i = 0; i < header.size(); ++i) md += " --- |";
  md += "\n";
}

void RenderPerformance(std::string& md, const json& r) {
  md += StrCat("Threshold: ", Num(r["threshold"].get<double>(), 2), "\n\n");
  Table(md, {"", "Precision", "Recall", "F1-Score", "Support"});
  auto row = [&](const char* name, const json& m) {
    TableRow(md, {name, Num(m["precision"].get<double>(), 2),
                  Num(m["recall"].get<double>(), 2),
                  Num(m["f1"].get<double>(), 2), Count(m["support"])});
  };
  row("Not-hateful", r["not_hateful"]);
  row("Hateful", r["hateful"]);
  TableRow(md, {"Accuracy", "", "", Num(r["accuracy"].get<double>(), 2),
                Count(r["macro_avg"]["support"])});
  row("Macro Avg.", r["macro_avg"]);
  row("Weighted Avg.", r["weighted_avg"]);
  if (!r["zero_division"].empty()) {
    md += "\nZero denominators (reported as 0):";
    for (const json& z : r["zero_division"]) {
      md += " " + z.get<std::string>();
    }
    md += "\n";
  }
}

void RenderFrequencies(std::string& md, const json& rows, bool subgroups) {
  if (subgroups) {
    Table(md, {"Attribute", "Subgroup", "Hateful %", "Not-hateful %",
               "Overall %"});
  } else {
    Table(md, {"Term", "Hateful %", "Not-hateful %", "Overall %"});
  }
  for (const json& r : rows) {
    std::vector<std::string> cells;
    if (subgroups) {
      cells = {r["attribute"].get<std::string>(),
               r["subgroup"].get<std::string>()};
    } else {
      cells = {r["key"].get<std::string>()};
    }
    cells.push_back(Pct(r["hateful_pct"]));
    cells.push_back(Pct(r["nothateful_pct"]));
    cells.push_back(Pct(r["overall_pct"]));
    TableRow(md, cells);
  }
}

void RenderDataBias(std::string& md, const json& r) {
  md += "### Identity terms\n\n";
  RenderFrequencies(md, r["identity_terms"], false);
  md += "\n### Subgroup references\n\n";
  RenderFrequencies(md, r["subgroup_references"], true);
}

void RenderEmbeddingBias(std::string& md, const json& r) {
  md += StrCat("Vocabulary: ", Count(r["vocabulary"]),
               " terms, dimension ", Count(r["dimension"]), "\n\n");
  Table(md, {"Attribute", "AMAE", "ARMSE", "Subgroups", "Neutral terms"});
  for (const auto& [attr, a] : r["attributes"].items()) {
    std::vector<std::string> subs = a["subgroups"];
    TableRow(md, {attr, Prob(a["amae"]), Prob(a["armse"]), StrJoin(subs, ", "),
                  Count(a["neutral_terms_used"])});
  }
  md += "\n";
  Table(md, {"Attribute", "Pair", "MAE", "RMSE"});
  for (const auto& [attr, a] : r["attributes"].items()) {
    for (const json& p : a["pairwise"]) {
      TableRow(md, {attr,
                    StrCat(p["subgroup_a"].get<std::string>(), " / ",
                           p["subgroup_b"].get<std::string>()),
                    Prob(p["mae"]), Prob(p["rmse"])});
    }
  }
}

void RenderProbabilityStats(std::string& md, const json& stats) {
  Table(md, {"Label", "Subgroup", "Mean p(hateful)", "n"});
  for (const json& row : stats["rows"]) {
    TableRow(md, {row["label"].get<std::string>(),
                  row["subgroup"].get<std::string>(),
                  row["mean_p_hateful"].is_number()
                      ? Pct(row["mean_p_hateful"].get<double>() * 100)
                      : "not computable",
                  Count(row["n"])});
  }
}

void RenderSubgroupStats(std::string& md, const json& r) {
  for (const auto& [attr, stats] : r.items()) {
    md += StrCat("### ", attr, "\n\n");
    RenderProbabilityStats(md, stats);
    md += "\n";
  }
}

void RenderSwap(std::string& md, const json& r) {
  Table(md, {"Attribute", "Favors A", "Favors B", "No change", "Swapped",
             "Decimals"});
  for (const json& s : r) {
    const std::string a = s["sub_a"].get<std::string>();
    const std::string b = s["sub_b"].get<std::string>();
    TableRow(md, {s["attribute"].get<std::string>(),
                  StrCat(a, " ", Pct(s["fraction_favor_a"].get<double>() * 100)),
                  StrCat(b, " ", Pct(s["fraction_favor_b"].get<double>() * 100)),
                  Pct(s["fraction_no_change"].get<double>() * 100),
                  Count(s["n_swapped"]), Count(s["rounding_decimals"])});
  }
  md += "\nPer-label counts (favor A / favor B / no change):\n\n";
  for (const json& s : r) {
    for (const char* label : {"hateful", "not_hateful"}) {
      const json& c = s[label];
      md += StrCat("- ", s["attribute"].get<std::string>(), ", ", label, ": ",
                   Count(c["favor_a"]), " / ", Count(c["favor_b"]), " / ",
                   Count(c["no_change"]), "\n");
    }
  }
}

void RenderCounterfactual(std::string& md, const json& r) {
  for (const auto& [attr, a] : r.items()) {
    md += StrCat("### ", attr, "\n\n", Count(a["n_rows"]), " realized texts in ",
                 Count(a["n_groups"]), " groups.\n\n");
    Table(md, {"Reference", "CB total", "CB mean", "Examples"});
    for (const json& cb : a["cb"]) {
      TableRow(md, {cb["reference"].get<std::string>(), Prob(cb["cb_total"]),
                    Prob(cb["cb_mean"]), Count(cb["n_examples"])});
    }
    md += "\n";
    RenderProbabilityStats(md, a["probability_stats"]);
    md += "\n";
  }
}

void RenderFairness(std::string& md, const json& r) {
  static const char* kMetrics[] = {
      "equal_opportunity",        "gini_equality",
      "normalized_treatment_equality", "overall_accuracy_equality",
      "positive_predictive_value", "positive_class_balance",
      "statistical_parity"};
  for (const json& m : r) {
    md += StrCat("### ", m["attribute"].get<std::string>(), ": ",
                 m["reference"].get<std::string>(), " (reference) vs ",
                 m["protected"].get<std::string>(), "\n\n");
    Table(md, {"Metric", "Reference - protected"});
    for (const char* name : kMetrics) {
      TableRow(md, {name, Prob(m["metrics"][name])});
    }
    md += "\n";
  }
}

void RenderExplanations(std::string& md, const json& r) {
  if (r.contains("global")) {
    const json& g = r["global"];
    md += StrCat("Global importance (", g["method"].get<std::string>(), ", ",
                 Count(g["total_tokens"]), " tokens):\n\n");
    Table(md, {"Token", "Mean effect", "Mean |effect|", "Support"});
    for (const json& row : g["rows"]) {
      TableRow(md, {row["token"].get<std::string>(), Prob(row["mean_effect"]),
                    Prob(row["mean_abs_effect"]), Count(row["support"])});
    }
    md += "\n";
  }
  for (const json& e : r["local"]) {
    md += StrCat("Local explanation for ", e["comment_id"].get<std::string>(),
                 " (p = ", Prob(e["p_full"]), ", surrogate R^2 = ",
                 Prob(e["surrogate_fit_r2"]), "):\n\n");
    Table(md, {"Token", "Weight"});
    for (const json& w : e["weights"]) {
      TableRow(md, {w["token"].get<std::string>(), Prob(w["weight"])});
    }
    md += "\n";
  }
}

void RenderEmissions(std::string& md, const json& r) {
  md += StrCat("Estimated emissions: ", Num(r["co2eq_kg"].get<double>(), 4),
               " kg CO2eq (", r["formula"].get<std::string>(), "; ",
               Num6(r["power_draw_kw"].get<double>()), " kW, ",
               Num6(r["hours"].get<double>()), " h, PUE ",
               Num6(r["pue"].get<double>()), ", ",
               Num6(r["carbon_intensity_kg_per_kwh"].get<double>()),
               " kg/kWh)\n");
}

std::string SectionTitle(std::string_view name) {
  static const std::map<std::string_view, std::string_view> kTitles = {
      {"performance", "Performance"},
      {"data_bias", "Data bias"},
      {"embedding_bias", "Embedding bias"},
      {"subgroup_stats", "Prediction probability by subgroup"},
      {"swap_favor", "Swapped identities"},
      {"counterfactual", "Counterfactual bias"},
      {"fairness_metrics", "Fairness metrics"},
      {"explanations", "Explanations"},
      {"emissions", "Emissions"},
  };
  auto it = kTitles.find(name);
  return std::string(it == kTitles.end() ? name : it->second);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view ToolVersion() { return TEXTAUDIT_VERSION; }

absl::StatusOr<EmissionsEstimate> EstimateEmissions(
    double power_draw_kw, double hours, double pue,
    double carbon_intensity_kg_per_kwh) {
  const std::pair<const char*, double> inputs[] = {
      {"power_draw_kw", power_draw_kw},
      {"hours", hours},
      {"pue", pue},
      {"carbon_intensity_kg_per_kwh", carbon_intensity_kg_per_kwh}};
  for (const auto& [name, v] : inputs) {
    if (!std::isfinite(v) || v < 0) {
      return absl::InvalidArgumentError(
          StrCat(name, " must be a non-negative number, got ", v));
    }
  }
  EmissionsEstimate e{power_draw_kw, hours, pue, carbon_intensity_kg_per_kwh,
                      0};
  e.co2eq_kg = power_draw_kw * hours * pue * carbon_intensity_kg_per_kwh;
  return e;
}

json ToJson(const EmissionsEstimate& e) {
  return json{{"power_draw_kw", e.power_draw_kw},
              {"hours", e.hours},
              {"pue", e.pue},
              {"carbon_intensity_kg_per_kwh", e.carbon_intensity_kg_per_kwh},
              {"co2eq_kg", e.co2eq_kg},
              {"formula", kEmissionsFormula}};
}

std::string_view SectionStatusName(SectionStatus status) {
  switch (status) {
    case SectionStatus::kComputed: return "computed";
    case SectionStatus::kSkipped: return "skipped";
    case SectionStatus::kFailed: return "failed";
  }
  return "";
}

bool AuditReport::AnyFailed() const {
  for (const auto& [name, s] : sections) {
    if (s.status == SectionStatus::kFailed) return true;
  }
  return false;
}

absl::StatusOr<AuditReport> RunAudit(const AuditConfig& config) {
  if (absl::Status s = ValidateAuditConfig(config); !s.ok()) return s;
  AuditReport report;
  report.tool_version = std::string(ToolVersion());
  report.config = Canonicalize(ConfigToJson(config));
  AuditRun run(config, report);
  if (absl::Status s = run.Load(); !s.ok()) return s;
  run.RunSections();
  return report;
}

json Canonicalize(const json& value) {
  switch (value.type()) {
    case json::value_t::object: {
      json out = json::object();
      for (const auto& [k, v] : value.items()) out[k] = Canonicalize(v);
      return out;
    }
    case json::value_t::array: {
      json out = json::array();
      for (const json& v : value) out.push_back(Canonicalize(v));
      return out;
    }
    case json::value_t::number_float: {
      const double d = value.get<double>();
      if (!std::isfinite(d)) return nullptr;
      // Below this, values are accumulated rounding noise.
      if (std::abs(d) < 1e-12) return 0.0;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6g", d);
      return std::strtod(buf, nullptr);
    }
    default:
      return value;
  }
}

json ReportToJson(const AuditReport& report) {
  json inputs = json::array();
  for (const InputRecord& in : report.inputs) {
    inputs.push_back(
        json{{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  }
  json sections = json::object();
  for (const auto& [name, s] : report.sections) {
    json entry{{"status", SectionStatusName(s.status)}};
    switch (s.status) {
      case SectionStatus::kComputed:
        entry["result"] = s.result;
        break;
      case SectionStatus::kSkipped:
        entry["reason"] = s.detail;
        break;
      case SectionStatus::kFailed:
        entry["error"] = s.detail;
        break;
    }
    sections[name] = std::move(entry);
  }
  return Canonicalize(json{
      {"tool", json{{"name", "textaudit"}, {"version", report.tool_version}}},
      {"config", report.config},
      {"inputs", std::move(inputs)},
      {"sections", std::move(sections)},
  });
}

std::string RenderReportJson(const AuditReport& report) {
  return ReportToJson(report).dump(2) + "\n";
}

absl::StatusOr<AuditReport> ParseReportJson(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError("report is not a JSON object");
  }
  try {
    AuditReport report;
    report.tool_version = doc.at("tool").at("version").get<std::string>();
    report.config = doc.at("config");
    for (const json& in : doc.at("inputs")) {
      report.inputs.push_back({in.at("role").get<std::string>(),
                               in.at("path").get<std::string>(),
                               in.at("sha256").get<std::string>()});
    }
    for (const auto& [name, entry] : doc.at("sections").items()) {
      SectionResult s;
      const std::string status = entry.at("status").get<std::string>();
      if (status == "computed") {
        s.status = SectionStatus::kComputed;
        s.result = entry.at("result");
      } else if (status == "skipped") {
        s.status = SectionStatus::kSkipped;
        s.detail = entry.at("reason").get<std::string>();
      } else if (status == "failed") {
        s.status = SectionStatus::kFailed;
        s.detail = entry.at("error").get<std::string>();
      } else {
        return absl::InvalidArgumentError(
            StrCat("section \"", name, "\" has unknown status \"", status,
                   "\""));
      }
      report.sections[name] = std::move(s);
    }
    return report;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        StrCat("malformed report: ", e.what()));
  }
}

std::string RenderReportMarkdown(const AuditReport& report) {
  std::string md = "# Text classifier audit report\n\n";
  md += StrCat("Tool version: ", report.tool_version, "\n\n");
  if (!report.inputs.empty()) {
    md += "## Inputs\n\n";
    Table(md, {"Role", "Path", "SHA-256"});
    for (const InputRecord& in : report.inputs) {
      TableRow(md, {in.role, in.path, in.sha256});
    }
    md += "\n";
  }
  using Renderer = void (*)(std::string&, const json&);
  static const std::map<std::string_view, Renderer> kRenderers = {
      {"performance", RenderPerformance},
      {"data_bias", RenderDataBias},
      {"embedding_bias", RenderEmbeddingBias},
      {"subgroup_stats", RenderSubgroupStats},
      {"swap_favor", RenderSwap},
      {"counterfactual", RenderCounterfactual},
      {"fairness_metrics", RenderFairness},
      {"explanations", RenderExplanations},
      {"emissions", RenderEmissions},
  };
  for (std::string_view name : kSectionNames) {
    auto it = report.sections.find(std::string(name));
    if (it == report.sections.end()) continue;
    const SectionResult& s = it->second;
    md += StrCat("## ", SectionTitle(name), "\n\n");
    switch (s.status) {
      case SectionStatus::kSkipped:
        md += StrCat("Skipped: ", s.detail, "\n\n");
        continue;
      case SectionStatus::kFailed:
        md += StrCat("Failed: ", s.detail, "\n\n");
        continue;
      case SectionStatus::kComputed:
        break;
    }
    try {
      kRenderers.at(name)(md, s.result);
    } catch (const json::exception& e) {
      md += StrCat("(result could not be rendered: ", e.what(), ")\n");
    }
    md += "\n";
  }
  return md;
}

absl::Status WriteReport(const AuditReport& report,
                         const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(
        StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  if (absl::Status s =
          WriteFileAtomically(dir / "report.json", RenderReportJson(report));
      !s.ok()) {
    return s;
  }
  if (absl::Status s =
          WriteFileAtomically(dir / "report.md", RenderReportMarkdown(report));
      !s.ok()) {
    return s;
  }
  for (const auto& [name, content] : report.csv_files) {
    if (absl::Status s = WriteFileAtomically(dir / name, content); !s.ok()) {
      return s;
    }
  }
  return absl::OkStatus();
}

}  // namespace textaudit
