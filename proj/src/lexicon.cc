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

#include "textaudit/strings.h"
#include "textaudit/lexicon.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "json.hpp"
#include "textaudit/io.h"
#include "textaudit/text.h"

namespace textaudit {
namespace {

using json = nlohmann::json;

std::string NormalizeTerm(std::string_view term) {
  return StrJoin(SplitTerm(term), " ");
}

absl::StatusOr<json> ParseJsonDocument(std::string_view text,
                                       std::string_view what) {
  if (!IsValidUtf8(text)) {
    return absl::InvalidArgumentError(StrCat(what, " is not valid UTF-8"));
  }
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError(StrCat(what, " is not valid JSON"));
  }
  return doc;
}

template <typename T, typename Parser>
absl::StatusOr<T> LoadWith(const std::filesystem::path& path, Parser parse) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  absl::StatusOr<T> parsed = parse(*content);
  if (!parsed.ok()) {
    return absl::Status(parsed.status().code(),
                        StrCat(path.string(), ": ",
                                     parsed.status().message()));
  }
  return parsed;
}

}  // namespace

std::vector<std::string> SplitTerm(std::string_view term) {
  std::vector<std::string> parts;
  for (std::string_view piece :
       StrSplitAny(term, " \t\n\r")) {
    parts.push_back(NormalizeToken(piece));
  }
  return parts;
}

absl::StatusOr<AttributeLexicon> AttributeLexicon::Create(
    std::map<std::string, SubgroupTerms> attributes) {
  AttributeLexicon lexicon;
  for (auto& [attribute, subgroups] : attributes) {
    if (subgroups.size() < 2) {
      return absl::InvalidArgumentError(
          StrCat("attribute \"", attribute, "\" has ", subgroups.size(),
                       " subgroup(s); at least 2 are required"));
    }
    for (auto& [subgroup, terms] : subgroups) {
      for (std::string& term : terms) term = NormalizeTerm(term);
      terms.erase(std::remove(terms.begin(), terms.end(), std::string()),
                  terms.end());
      if (terms.empty()) {
        return absl::InvalidArgumentError(StrCat(
            "subgroup \"", attribute, "/", subgroup, "\" has no terms"));
      }
    }
  }
  lexicon.attributes_ = std::move(attributes);
  return lexicon;
}

const SubgroupTerms* AttributeLexicon::FindAttribute(
    std::string_view attribute) const {
  auto it = attributes_.find(std::string(attribute));
  return it == attributes_.end() ? nullptr : &it->second;
}

const TermList* AttributeLexicon::FindSubgroup(
    std::string_view attribute, std::string_view subgroup) const {
  const SubgroupTerms* subgroups = FindAttribute(attribute);
  if (subgroups == nullptr) return nullptr;
  auto it = subgroups->find(std::string(subgroup));
  return it == subgroups->end() ? nullptr : &it->second;
}

std::set<std::string> AttributeLexicon::Abbreviations() const {
  std::set<std::string> out;
  for (const auto& [attribute, subgroups] : attributes_) {
    for (const auto& [subgroup, terms] : subgroups) {
      for (const std::string& term : terms) {
        for (const std::string& token : SplitTerm(term)) {
          if (token.size() > 1 && token.back() == '.') out.insert(token);
        }
      }
    }
  }
  return out;
}

absl::StatusOr<AttributeLexicon> ParseLexicon(std::string_view text) {
  absl::StatusOr<json> doc = ParseJsonDocument(text, "lexicon");
  if (!doc.ok()) return doc.status();
  if (!doc->is_object()) {
    return absl::InvalidArgumentError(
        "lexicon must be a JSON object {attribute: {subgroup: [terms]}}");
  }
  std::map<std::string, SubgroupTerms> attributes;
  for (const auto& [attribute, subgroups] : doc->items()) {
    if (!subgroups.is_object()) {
      return absl::InvalidArgumentError(
          StrCat("attribute \"", attribute, "\" must map to an object"));
    }
    SubgroupTerms& out = attributes[attribute];
    for (const auto& [subgroup, terms] : subgroups.items()) {
      if (!terms.is_array()) {
        return absl::InvalidArgumentError(StrCat(
            "subgroup \"", attribute, "/", subgroup, "\" must be a list"));
      }
      TermList& list = out[subgroup];
      for (const json& term : terms) {
        if (!term.is_string()) {
          return absl::InvalidArgumentError(StrCat(
              "subgroup \"", attribute, "/", subgroup, "\": non-string term"));
        }
        list.push_back(term.get<std::string>());
      }
    }
  }
  return AttributeLexicon::Create(std::move(attributes));
}

absl::StatusOr<AttributeLexicon> LoadLexicon(
    const std::filesystem::path& path) {
  return LoadWith<AttributeLexicon>(path, ParseLexicon);
}

std::string SerializeLexicon(const AttributeLexicon& lexicon) {
  json doc = json::object();
  for (const auto& [attribute, subgroups] : lexicon.attributes()) {
    for (const auto& [subgroup, terms] : subgroups) {
      doc[attribute][subgroup] = terms;
    }
  }
  return doc.dump(2) + "\n";
}

absl::StatusOr<SwapTable> SwapTable::Create(std::string attribute,
                                            std::vector<Pair> pairs) {
  SwapTable table;
  table.attribute_ = std::move(attribute);
  for (Pair& pair : pairs) {
    pair.first = NormalizeTerm(pair.first);
    pair.second = NormalizeTerm(pair.second);
    auto a = table.partner_.find(pair.first);
    auto b = table.partner_.find(pair.second);
    if (a != table.partner_.end() || b != table.partner_.end()) {
      return absl::InvalidArgumentError(StrCat(
          "swap pair (", pair.first, ", ", pair.second,
          ") reuses a term from an earlier pair"));
    }
    table.partner_[pair.first] = pair.second;
    table.partner_[pair.second] = pair.first;
    table.pairs_.push_back(std::move(pair));
  }
  return table;
}

const std::string* SwapTable::Partner(std::string_view term) const {
  auto it = partner_.find(term);
  return it == partner_.end() ? nullptr : &it->second;
}

absl::StatusOr<SwapTable> AlignedSwapPairs(const AttributeLexicon& lexicon,
                                           std::string_view attribute,
                                           std::string_view sub_a,
                                           std::string_view sub_b) {
  const TermList* a = lexicon.FindSubgroup(attribute, sub_a);
  const TermList* b = lexicon.FindSubgroup(attribute, sub_b);
  if (a == nullptr || b == nullptr) {
    return absl::NotFoundError(StrCat(
        "unknown subgroup: ", a == nullptr ? sub_a : sub_b, " in attribute ",
        attribute));
  }
  if (a->size() != b->size()) {
    return absl::InvalidArgumentError(StrCat(
        "cannot align ", attribute, "/", sub_a, " (", a->size(), " terms) with ",
        attribute, "/", sub_b, " (", b->size(), " terms)"));
  }
  SwapTable table;
  table.attribute_ = std::string(attribute);
  for (std::size_t i = 0; i < a->size(); ++i) {
    const std::string& x = (*a)[i];
    const std::string& y = (*b)[i];
    const std::string* px = table.Partner(x);
    const std::string* py = table.Partner(y);
    if (px != nullptr || py != nullptr) {
      table.warnings_.push_back(StrCat(
          "dropped pair #", i, " (", x, ", ", y, "): term already paired as (",
          px != nullptr ? x : y, ", ", px != nullptr ? *px : *py, ")"));
      continue;
    }
    table.partner_[x] = y;
    table.partner_[y] = x;
    table.pairs_.emplace_back(x, y);
  }
  return table;
}

absl::StatusOr<std::vector<std::string>> ParseWordList(std::string_view text) {
  if (!IsValidUtf8(text)) {
    return absl::InvalidArgumentError("word list is not valid UTF-8");
  }
  std::vector<std::string> words;
  std::set<std::string> seen;
  for (std::string_view line : StrSplit(text, '\n')) {
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string term = NormalizeTerm(line);
    if (term.empty()) continue;
    if (seen.insert(term).second) words.push_back(term);
  }
  if (words.empty()) return absl::InvalidArgumentError("word list is empty");
  return words;
}

absl::StatusOr<NeutralWordList> LoadNeutralWords(
    const std::filesystem::path& path) {
  return LoadWith<NeutralWordList>(
      path, [](std::string_view text) -> absl::StatusOr<NeutralWordList> {
        absl::StatusOr<std::vector<std::string>> words = ParseWordList(text);
        if (!words.ok()) return words.status();
        return NeutralWordList{std::move(*words)};
      });
}

absl::StatusOr<IdentityTermList> LoadIdentityTerms(
    const std::filesystem::path& path) {
  return LoadWith<IdentityTermList>(
      path, [](std::string_view text) -> absl::StatusOr<IdentityTermList> {
        absl::StatusOr<std::vector<std::string>> terms = ParseWordList(text);
        if (!terms.ok()) return terms.status();
        return IdentityTermList{std::move(*terms)};
      });
}

absl::StatusOr<Gazetteer> ParseGazetteer(std::string_view text) {
  absl::StatusOr<json> doc = ParseJsonDocument(text, "gazetteer");
  if (!doc.ok()) return doc.status();
  if (!doc->is_object()) {
    return absl::InvalidArgumentError(
        "gazetteer must be a JSON object {term: [attribute, subgroup]}");
  }
  Gazetteer gazetteer;
  for (const auto& [term, value] : doc->items()) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_string() ||
        !value[1].is_string()) {
      return absl::InvalidArgumentError(StrCat(
          "gazetteer entry \"", term, "\" must be [attribute, subgroup]"));
    }
    const std::string key = NormalizeTerm(term);
    GazetteerEntry entry{value[0].get<std::string>(),
                         value[1].get<std::string>()};
    auto [it, inserted] = gazetteer.entries.emplace(key, entry);
    if (!inserted && !(it->second == entry)) {
      return absl::InvalidArgumentError(StrCat(
          "gazetteer term \"", key, "\" maps to more than one subgroup"));
    }
  }
  return gazetteer;
}

absl::StatusOr<Gazetteer> LoadGazetteer(const std::filesystem::path& path) {
  return LoadWith<Gazetteer>(path, ParseGazetteer);
}

absl::Status ValidateTemplate(const Template& t) {
  const std::size_t first = t.pattern.find(kIdentitySlot);
  if (first == std::string::npos) {
    return absl::InvalidArgumentError(
        StrCat("template \"", t.pattern, "\" has no [Identity] slot"));
  }
  if (t.pattern.find(kIdentitySlot, first + 1) != std::string::npos) {
    return absl::InvalidArgumentError(StrCat(
        "template \"", t.pattern, "\" has more than one [Identity] slot"));
  }
  return absl::OkStatus();
}

absl::StatusOr<TemplateSet> ParseTemplates(std::string_view text) {
  absl::StatusOr<json> doc = ParseJsonDocument(text, "template file");
  if (!doc.ok()) return doc.status();
  if (!doc->is_array()) {
    return absl::InvalidArgumentError(
        "template file must be a JSON list of {pattern, label}");
  }
  TemplateSet set;
  for (const json& item : *doc) {
    if (!item.is_object() || !item.contains("pattern") ||
        !item["pattern"].is_string() || !item.contains("label")) {
      return absl::InvalidArgumentError(
          "each template needs a string `pattern` and a `label`");
    }
    Template t;
    t.pattern = item["pattern"].get<std::string>();
    const json& label = item["label"];
    absl::StatusOr<Label> parsed =
        label.is_string()
            ? ParseLabel(label.get<std::string>())
            : (label.is_number_integer()
                   ? ParseLabel(std::to_string(label.get<long long>()))
                   : absl::StatusOr<Label>(
                         absl::InvalidArgumentError("bad template label")));
    if (!parsed.ok()) return parsed.status();
    t.label = *parsed;
    if (absl::Status s = ValidateTemplate(t); !s.ok()) return s;
    set.templates.push_back(std::move(t));
  }
  return set;
}

absl::StatusOr<TemplateSet> LoadTemplates(const std::filesystem::path& path) {
  return LoadWith<TemplateSet>(path, ParseTemplates);
}

void TermIndex::Add(std::string_view term, std::size_t id) {
  std::vector<std::string> key = SplitTerm(term);
  if (key.empty()) return;
  max_length_ = std::max(max_length_, key.size());
  std::vector<std::size_t>& ids = terms_[std::move(key)];
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
}

std::vector<TermIndex::Match> TermIndex::FindAll(
    const std::vector<TokenSpan>& tokens) const {
  std::vector<Match> matches;
  std::vector<std::string> key;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool found = false;
    const std::size_t longest = std::min(max_length_, tokens.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      key.clear();
      for (std::size_t k = 0; k < len; ++k) key.push_back(tokens[i + k].token);
      auto it = terms_.find(key);
      if (it != terms_.end()) {
        matches.push_back(Match{i, i + len, &it->second});
        i += len;
        found = true;
        break;
      }
    }
    if (!found) ++i;
  }
  return matches;
}

}  // namespace textaudit
