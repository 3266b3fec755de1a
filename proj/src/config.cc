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

#include "textaudit/config.h"

#include <algorithm>
#include <set>
#include <utility>

#include "textaudit/io.h"
#include "textaudit/strings.h"

namespace textaudit {
namespace {

using json = nlohmann::json;

// Field readers that name the offending key on a type mismatch.
class Reader {
 public:
  Reader(const json& obj, std::string where)
      : obj_(obj), where_(std::move(where)) {}

  absl::Status CheckKeys(std::initializer_list<std::string_view> allowed) const {
    if (!obj_.is_object()) {
      return absl::InvalidArgumentError(StrCat(where_, " must be an object"));
    }
    for (const auto& [key, value] : obj_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        return absl::InvalidArgumentError(
            StrCat("unknown key \"", key, "\" in ", where_));
      }
    }
    return absl::OkStatus();
  }

  bool Has(const char* key) const {
    return obj_.contains(key) && !obj_[key].is_null();
  }

  absl::Status String(const char* key, std::string* out) const {
    if (!Has(key)) return absl::OkStatus();
    if (!obj_[key].is_string()) return TypeError(key, "a string");
    *out = obj_[key].get<std::string>();
    return absl::OkStatus();
  }

  absl::Status OptString(const char* key,
                         std::optional<std::string>* out) const {
    if (!Has(key)) return absl::OkStatus();
    std::string s;
    if (absl::Status st = String(key, &s); !st.ok()) return st;
    *out = std::move(s);
    return absl::OkStatus();
  }

  absl::Status Number(const char* key, double* out) const {
    if (!Has(key)) return absl::OkStatus();
    if (!obj_[key].is_number()) return TypeError(key, "a number");
    *out = obj_[key].get<double>();
    return absl::OkStatus();
  }

  absl::Status Int(const char* key, long long* out) const {
    if (!Has(key)) return absl::OkStatus();
    if (!obj_[key].is_number_integer()) return TypeError(key, "an integer");
    *out = obj_[key].get<long long>();
    return absl::OkStatus();
  }

  template <typename T>
  absl::Status IntAs(const char* key, T* out) const {
    long long v = static_cast<long long>(*out);
    if (absl::Status s = Int(key, &v); !s.ok()) return s;
    *out = static_cast<T>(v);
    return absl::OkStatus();
  }

  absl::Status Bool(const char* key, bool* out) const {
    if (!Has(key)) return absl::OkStatus();
    if (!obj_[key].is_boolean()) return TypeError(key, "a boolean");
    *out = obj_[key].get<bool>();
    return absl::OkStatus();
  }

  absl::Status StringList(const char* key, std::vector<std::string>* out) const {
    if (!Has(key)) return absl::OkStatus();
    if (!obj_[key].is_array()) return TypeError(key, "an array of strings");
    out->clear();
    for (const json& v : obj_[key]) {
      if (!v.is_string()) return TypeError(key, "an array of strings");
      out->push_back(v.get<std::string>());
    }
    return absl::OkStatus();
  }

  const json& at(const char* key) const { return obj_[key]; }

 private:
  absl::Status TypeError(const char* key, std::string_view expected) const {
    return absl::InvalidArgumentError(
        StrCat(where_, ".", key, " must be ", expected));
  }

  const json& obj_;
  std::string where_;
};

#define TA_RETURN_IF_ERROR(expr)           \
  do {                                     \
    if (absl::Status _s = (expr); !_s.ok()) \
      return _s;                           \
  } while (0)

absl::Status ParseAdapter(const json& obj, AdapterConfig* adapter) {
  Reader r(obj, "adapter");
  TA_RETURN_IF_ERROR(r.CheckKeys({"kind", "location", "batch_size",
                                  "timeout_ms", "max_retries", "parallelism"}));
  std::string kind(AdapterKindName(adapter->kind));
  TA_RETURN_IF_ERROR(r.String("kind", &kind));
  absl::StatusOr<AdapterKind> parsed = ParseAdapterKind(kind);
  if (!parsed.ok()) return parsed.status();
  adapter->kind = *parsed;
  TA_RETURN_IF_ERROR(r.String("location", &adapter->location));
  TA_RETURN_IF_ERROR(r.IntAs("batch_size", &adapter->batch_size));
  long long timeout = adapter->timeout.count();
  TA_RETURN_IF_ERROR(r.Int("timeout_ms", &timeout));
  adapter->timeout = std::chrono::milliseconds(timeout);
  TA_RETURN_IF_ERROR(r.IntAs("max_retries", &adapter->max_retries));
  TA_RETURN_IF_ERROR(r.IntAs("parallelism", &adapter->parallelism));
  return absl::OkStatus();
}

absl::Status ParseExplain(const json& obj, ExplainConfig* e) {
  Reader r(obj, "explain");
  TA_RETURN_IF_ERROR(r.CheckKeys({"global", "method", "m_permutations",
                                  "max_tokens_per_comment", "top_tokens",
                                  "local_comments", "n_samples",
                                  "kernel_width", "l2_lambda"}));
  TA_RETURN_IF_ERROR(r.Bool("global", &e->global));
  std::string method(ImportanceMethodName(e->method));
  TA_RETURN_IF_ERROR(r.String("method", &method));
  absl::StatusOr<ImportanceMethod> m = ParseImportanceMethod(method);
  if (!m.ok()) return m.status();
  e->method = *m;
  TA_RETURN_IF_ERROR(r.IntAs("m_permutations", &e->m_permutations));
  TA_RETURN_IF_ERROR(
      r.IntAs("max_tokens_per_comment", &e->max_tokens_per_comment));
  TA_RETURN_IF_ERROR(r.IntAs("top_tokens", &e->top_tokens));
  TA_RETURN_IF_ERROR(r.StringList("local_comments", &e->local_comments));
  TA_RETURN_IF_ERROR(r.IntAs("n_samples", &e->n_samples));
  TA_RETURN_IF_ERROR(r.Number("kernel_width", &e->kernel_width));
  TA_RETURN_IF_ERROR(r.Number("l2_lambda", &e->l2_lambda));
  return absl::OkStatus();
}

template <typename T, typename Fn>
absl::Status ParseList(const Reader& r, const char* key,
                       std::optional<std::vector<T>>* out, Fn parse_item) {
  if (!r.Has(key)) return absl::OkStatus();
  const json& arr = r.at(key);
  if (!arr.is_array()) {
    return absl::InvalidArgumentError(StrCat(key, " must be an array"));
  }
  std::vector<T> items;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    T item;
    TA_RETURN_IF_ERROR(parse_item(Reader(arr[i], StrCat(key, "[", i, "]")),
                                  &item));
    items.push_back(std::move(item));
  }
  *out = std::move(items);
  return absl::OkStatus();
}

absl::Status RequireNonEmpty(std::string_view where, const std::string& v) {
  if (v.empty()) return absl::InvalidArgumentError(StrCat(where, " is empty"));
  return absl::OkStatus();
}

}  // namespace

bool IsSectionName(std::string_view name) {
  return std::find(kSectionNames.begin(), kSectionNames.end(), name) !=
         kSectionNames.end();
}

std::string_view DatasetFormatName(DatasetFormat format) {
  return format == DatasetFormat::kCsv ? "csv" : "jsonl";
}

std::filesystem::path AuditConfig::Resolve(const std::string& path) const {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

bool AuditConfig::Requested(std::string_view section) const {
  return sections.empty() ||
         std::find(sections.begin(), sections.end(), section) != sections.end();
}

absl::StatusOr<AuditConfig> ParseAuditConfig(
    std::string_view text, const std::filesystem::path& base_dir) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError("config is not valid JSON");
  }
  AuditConfig c;
  c.base_dir = base_dir;
  Reader r(doc, "config");
  TA_RETURN_IF_ERROR(r.CheckKeys(
      {"dataset", "lexicon", "gazetteer", "neutral_words", "identity_terms",
       "templates", "template_fills", "embeddings", "adapter", "threshold",
       "seed", "rounding_decimals", "attributes", "swap", "fairness",
       "counterfactual", "explain", "emissions", "sections", "output_dir"}));

  if (r.Has("dataset")) {
    Reader d(r.at("dataset"), "dataset");
    TA_RETURN_IF_ERROR(d.CheckKeys({"path", "format"}));
    TA_RETURN_IF_ERROR(d.String("path", &c.dataset));
    std::string format(DatasetFormatName(c.dataset_format));
    TA_RETURN_IF_ERROR(d.String("format", &format));
    absl::StatusOr<DatasetFormat> f = ParseDatasetFormat(format);
    if (!f.ok()) return f.status();
    c.dataset_format = *f;
  }
  TA_RETURN_IF_ERROR(r.OptString("lexicon", &c.lexicon));
  TA_RETURN_IF_ERROR(r.OptString("gazetteer", &c.gazetteer));
  TA_RETURN_IF_ERROR(r.OptString("neutral_words", &c.neutral_words));
  TA_RETURN_IF_ERROR(r.OptString("identity_terms", &c.identity_terms));
  TA_RETURN_IF_ERROR(r.OptString("templates", &c.templates));
  TA_RETURN_IF_ERROR(r.OptString("template_fills", &c.template_fills));
  TA_RETURN_IF_ERROR(r.OptString("embeddings", &c.embeddings));
  if (r.Has("adapter")) {
    TA_RETURN_IF_ERROR(ParseAdapter(r.at("adapter"), &c.adapter));
  }
  TA_RETURN_IF_ERROR(r.Number("threshold", &c.threshold));
  long long seed = 0;
  TA_RETURN_IF_ERROR(r.Int("seed", &seed));
  if (seed < 0) return absl::InvalidArgumentError("seed must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  TA_RETURN_IF_ERROR(r.IntAs("rounding_decimals", &c.rounding_decimals));
  TA_RETURN_IF_ERROR(r.StringList("attributes", &c.attributes));
  TA_RETURN_IF_ERROR(ParseList<SwapSpec>(
      r, "swap", &c.swap, [](const Reader& item, SwapSpec* s) {
        TA_RETURN_IF_ERROR(item.CheckKeys({"attribute", "sub_a", "sub_b"}));
        TA_RETURN_IF_ERROR(item.String("attribute", &s->attribute));
        TA_RETURN_IF_ERROR(item.String("sub_a", &s->sub_a));
        return item.String("sub_b", &s->sub_b);
      }));
  TA_RETURN_IF_ERROR(ParseList<FairnessSpec>(
      r, "fairness", &c.fairness, [](const Reader& item, FairnessSpec* s) {
        TA_RETURN_IF_ERROR(
            item.CheckKeys({"attribute", "reference", "protected"}));
        TA_RETURN_IF_ERROR(item.String("attribute", &s->attribute));
        TA_RETURN_IF_ERROR(item.String("reference", &s->reference));
        return item.String("protected", &s->protected_group);
      }));
  TA_RETURN_IF_ERROR(ParseList<CounterfactualSpec>(
      r, "counterfactual", &c.counterfactual,
      [](const Reader& item, CounterfactualSpec* s) {
        TA_RETURN_IF_ERROR(item.CheckKeys({"attribute", "references"}));
        TA_RETURN_IF_ERROR(item.String("attribute", &s->attribute));
        return item.StringList("references", &s->references);
      }));
  if (r.Has("explain")) {
    TA_RETURN_IF_ERROR(ParseExplain(r.at("explain"), &c.explain));
  }
  if (r.Has("emissions")) {
    Reader e(r.at("emissions"), "emissions");
    TA_RETURN_IF_ERROR(e.CheckKeys({"power_draw_kw", "hours", "pue",
                                    "carbon_intensity_kg_per_kwh"}));
    EmissionsInputs in;
    TA_RETURN_IF_ERROR(e.Number("power_draw_kw", &in.power_draw_kw));
    TA_RETURN_IF_ERROR(e.Number("hours", &in.hours));
    TA_RETURN_IF_ERROR(e.Number("pue", &in.pue));
    TA_RETURN_IF_ERROR(e.Number("carbon_intensity_kg_per_kwh",
                                &in.carbon_intensity_kg_per_kwh));
    c.emissions = in;
  }
  TA_RETURN_IF_ERROR(r.StringList("sections", &c.sections));
  TA_RETURN_IF_ERROR(r.String("output_dir", &c.output_dir));
  return c;
}

absl::StatusOr<AuditConfig> LoadAuditConfig(const std::filesystem::path& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<AuditConfig> config =
      ParseAuditConfig(*text, path.parent_path());
  if (!config.ok()) return Annotate(config.status(), path.string());
  return config;
}

absl::Status ValidateAuditConfig(const AuditConfig& c) {
  TA_RETURN_IF_ERROR(RequireNonEmpty("dataset.path", c.dataset));
  if (absl::Status s = c.adapter.Validate(); !s.ok()) {
    return Annotate(s, "adapter");
  }
  if (!(c.threshold > 0 && c.threshold < 1)) {
    return absl::InvalidArgumentError("threshold must lie strictly in (0, 1)");
  }
  if (c.rounding_decimals < 0 || c.rounding_decimals > 15) {
    return absl::InvalidArgumentError("rounding_decimals must be in [0, 15]");
  }
  for (const std::string& s : c.sections) {
    if (!IsSectionName(s)) {
      return absl::InvalidArgumentError(StrCat("unknown section \"", s, "\""));
    }
  }
  if (c.swap) {
    for (const SwapSpec& s : *c.swap) {
      TA_RETURN_IF_ERROR(RequireNonEmpty("swap.attribute", s.attribute));
      if (s.sub_a.empty() || s.sub_b.empty() || s.sub_a == s.sub_b) {
        return absl::InvalidArgumentError(
            "swap entries need two distinct subgroups");
      }
    }
  }
  if (c.fairness) {
    for (const FairnessSpec& f : *c.fairness) {
      TA_RETURN_IF_ERROR(RequireNonEmpty("fairness.attribute", f.attribute));
      if (f.reference.empty() || f.protected_group.empty() ||
          f.reference == f.protected_group) {
        return absl::InvalidArgumentError(
            "fairness entries need distinct reference and protected subgroups");
      }
    }
  }
  if (c.counterfactual) {
    for (const CounterfactualSpec& s : *c.counterfactual) {
      TA_RETURN_IF_ERROR(RequireNonEmpty("counterfactual.attribute",
                                         s.attribute));
    }
  }
  const ExplainConfig& e = c.explain;
  if (e.m_permutations < 1) {
    return absl::InvalidArgumentError("explain.m_permutations must be >= 1");
  }
  if (e.max_tokens_per_comment < 0 || e.max_tokens_per_comment > 64) {
    return absl::InvalidArgumentError(
        "explain.max_tokens_per_comment must be in [0, 64]");
  }
  if (e.n_samples < 0) {
    return absl::InvalidArgumentError("explain.n_samples must be >= 0");
  }
  if (!(e.kernel_width > 0)) {
    return absl::InvalidArgumentError("explain.kernel_width must be positive");
  }
  if (e.l2_lambda < 0) {
    return absl::InvalidArgumentError("explain.l2_lambda must be >= 0");
  }
  return absl::OkStatus();
}

nlohmann::json ConfigToJson(const AuditConfig& c) {
  auto opt = [](const std::optional<std::string>& v) {
    return v ? json(*v) : json(nullptr);
  };
  json out{
      {"dataset",
       json{{"path", c.dataset},
            {"format", DatasetFormatName(c.dataset_format)}}},
      {"lexicon", opt(c.lexicon)},
      {"gazetteer", opt(c.gazetteer)},
      {"neutral_words", opt(c.neutral_words)},
      {"identity_terms", opt(c.identity_terms)},
      {"templates", opt(c.templates)},
      {"template_fills", opt(c.template_fills)},
      {"embeddings", opt(c.embeddings)},
      {"adapter",
       json{{"kind", AdapterKindName(c.adapter.kind)},
            {"location", c.adapter.location},
            {"batch_size", c.adapter.batch_size},
            {"timeout_ms", c.adapter.timeout.count()},
            {"max_retries", c.adapter.max_retries},
            {"parallelism", c.adapter.parallelism}}},
      {"threshold", c.threshold},
      {"seed", c.seed},
      {"rounding_decimals", c.rounding_decimals},
      {"attributes", c.attributes},
      {"sections", c.sections},
  };
  if (c.swap) {
    json arr = json::array();
    for (const SwapSpec& s : *c.swap) {
      arr.push_back(
          json{{"attribute", s.attribute}, {"sub_a", s.sub_a}, {"sub_b", s.sub_b}});
    }
    out["swap"] = std::move(arr);
  }
  if (c.fairness) {
    json arr = json::array();
    for (const FairnessSpec& f : *c.fairness) {
      arr.push_back(json{{"attribute", f.attribute},
                         {"reference", f.reference},
                         {"protected", f.protected_group}});
    }
    out["fairness"] = std::move(arr);
  }
  if (c.counterfactual) {
    json arr = json::array();
    for (const CounterfactualSpec& s : *c.counterfactual) {
      arr.push_back(
          json{{"attribute", s.attribute}, {"references", s.references}});
    }
    out["counterfactual"] = std::move(arr);
  }
  const ExplainConfig& e = c.explain;
  out["explain"] = json{{"global", e.global},
                        {"method", ImportanceMethodName(e.method)},
                        {"m_permutations", e.m_permutations},
                        {"max_tokens_per_comment", e.max_tokens_per_comment},
                        {"top_tokens", e.top_tokens},
                        {"local_comments", e.local_comments},
                        {"n_samples", e.n_samples},
                        {"kernel_width", e.kernel_width},
                        {"l2_lambda", e.l2_lambda}};
  if (c.emissions) {
    out["emissions"] =
        json{{"power_draw_kw", c.emissions->power_draw_kw},
             {"hours", c.emissions->hours},
             {"pue", c.emissions->pue},
             {"carbon_intensity_kg_per_kwh",
              c.emissions->carbon_intensity_kg_per_kwh}};
  }
  return out;
}

AdapterConfig ResolvedAdapter(const AuditConfig& config) {
  AdapterConfig a = config.adapter;
  switch (a.kind) {
    case AdapterKind::kPredictionsFile:
      a.location = config.Resolve(a.location).string();
      break;
    case AdapterKind::kSubprocess:
      if (!config.base_dir.empty()) {
        std::string quoted = "'";
        for (char ch : config.base_dir.string()) {
          if (ch == '\'') {
            quoted += "'\\''";
          } else {
            quoted += ch;
          }
        }
        quoted += "'";
        a.location = StrCat("cd ", quoted, " && exec ", a.location);
      }
      break;
    case AdapterKind::kHttp:
      break;
  }
  return a;
}

}  // namespace textaudit
