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

#include "textaudit/databias.h"

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "textaudit/csv.h"
#include "textaudit/strings.h"

namespace textaudit {
namespace {

absl::Status CheckPartitions(const LabeledCorpus& corpus) {
  if (corpus.count(Label::kHateful) == 0) {
    return absl::FailedPreconditionError(
        "corpus has no hateful comments; percentages are undefined");
  }
  if (corpus.count(Label::kNotHateful) == 0) {
    return absl::FailedPreconditionError(
        "corpus has no not-hateful comments; percentages are undefined");
  }
  return absl::OkStatus();
}

void FillPercentages(const LabeledCorpus& corpus, FrequencyRow& row) {
  const double nh = static_cast<double>(corpus.count(Label::kHateful));
  const double nn = static_cast<double>(corpus.count(Label::kNotHateful));
  row.overall_n = row.hateful_n + row.nothateful_n;
  row.hateful_pct = 100.0 * static_cast<double>(row.hateful_n) / nh;
  row.nothateful_pct = 100.0 * static_cast<double>(row.nothateful_n) / nn;
  row.overall_pct =
      100.0 * static_cast<double>(row.overall_n) / static_cast<double>(corpus.size());
}

std::string Percent(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

}  // namespace

absl::StatusOr<std::vector<FrequencyRow>> IdentityTermFrequencies(
    const LabeledCorpus& corpus, const IdentityTermList& terms) {
  if (absl::Status s = CheckPartitions(corpus); !s.ok()) return s;
  std::set<std::string> abbreviations;
  TermIndex index;
  for (std::size_t i = 0; i < terms.terms.size(); ++i) {
    index.Add(terms.terms[i], i);
    for (const std::string& token : SplitTerm(terms.terms[i])) {
      if (token.size() > 1 && token.back() == '.') abbreviations.insert(token);
    }
  }
  const Tokenizer tokenizer(std::move(abbreviations));

  std::vector<FrequencyRow> rows(terms.terms.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].key = terms.terms[i];
  std::vector<bool> present(rows.size());
  for (const Comment& comment : corpus.comments()) {
    std::fill(present.begin(), present.end(), false);
    for (const TermIndex::Match& match :
         index.FindAll(tokenizer.Tokenize(comment.text))) {
      for (std::size_t id : *match.ids) present[id] = true;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!present[i]) continue;
      if (comment.label == Label::kHateful) {
        ++rows[i].hateful_n;
      } else {
        ++rows[i].nothateful_n;
      }
    }
  }
  for (FrequencyRow& row : rows) FillPercentages(corpus, row);
  return rows;
}

absl::StatusOr<std::vector<FrequencyRow>> SubgroupReferenceFrequencies(
    const AnnotatedCorpus& annotated) {
  const LabeledCorpus& corpus = annotated.corpus();
  if (absl::Status s = CheckPartitions(corpus); !s.ok()) return s;
  std::map<std::pair<std::string, std::string>, FrequencyRow> by_key;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const SubgroupRef& ref : annotated.RefsAt(i)) {
      seen.emplace(ref.attribute, ref.subgroup);
    }
    for (const auto& key : seen) {
      FrequencyRow& row = by_key[key];
      if (corpus.comments()[i].label == Label::kHateful) {
        ++row.hateful_n;
      } else {
        ++row.nothateful_n;
      }
    }
  }
  std::vector<FrequencyRow> rows;
  for (auto& [key, row] : by_key) {
    row.attribute = key.first;
    row.subgroup = key.second;
    row.key = StrCat(key.first, "/", key.second);
    FillPercentages(corpus, row);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FrequencyTableCsv(const std::vector<FrequencyRow>& rows) {
  const bool subgroup_table = !rows.empty() && !rows.front().attribute.empty();
  std::string out;
  if (subgroup_table) {
    out = FormatCsvRow({"Attribute", "Subgroup", "Hateful %", "Not-hateful %",
                        "Overall %"});
  } else {
    out = FormatCsvRow({"Term", "Hateful %", "Not-hateful %", "Overall %"});
  }
  for (const FrequencyRow& row : rows) {
    std::vector<std::string> fields;
    if (subgroup_table) {
      fields = {row.attribute, row.subgroup};
    } else {
      fields = {row.key};
    }
    fields.push_back(Percent(row.hateful_pct));
    fields.push_back(Percent(row.nothateful_pct));
    fields.push_back(Percent(row.overall_pct));
    out += FormatCsvRow(fields);
  }
  return out;
}

nlohmann::json ToJson(const FrequencyRow& row) {
  nlohmann::json j;
  j["key"] = row.key;
  if (!row.attribute.empty()) {
    j["attribute"] = row.attribute;
    j["subgroup"] = row.subgroup;
  }
  j["hateful_pct"] = row.hateful_pct;
  j["nothateful_pct"] = row.nothateful_pct;
  j["overall_pct"] = row.overall_pct;
  j["hateful_n"] = row.hateful_n;
  j["nothateful_n"] = row.nothateful_n;
  j["overall_n"] = row.overall_n;
  return j;
}

}  // namespace textaudit
