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

#ifndef TEXTAUDIT_LEXICON_H_
#define TEXTAUDIT_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "textaudit/corpus.h"

namespace textaudit {

using TermList = std::vector<std::string>;
using SubgroupTerms = std::map<std::string, TermList>;

// Protected attribute -> subgroup -> ordered term list. Order matters for
// positional swap alignment, so repeated terms are kept as loaded.
class AttributeLexicon {
 public:
  AttributeLexicon() = default;

  // Lowercases terms and checks that every attribute has at least two
  // subgroups and every subgroup at least one term.
  static absl::StatusOr<AttributeLexicon> Create(
      std::map<std::string, SubgroupTerms> attributes);

  const std::map<std::string, SubgroupTerms>& attributes() const {
    return attributes_;
  }
  const SubgroupTerms* FindAttribute(std::string_view attribute) const;
  const TermList* FindSubgroup(std::string_view attribute,
                               std::string_view subgroup) const;

  // Terms ending in '.', e.g. "mr.".
  std::set<std::string> Abbreviations() const;

  bool operator==(const AttributeLexicon&) const = default;

 private:
  std::map<std::string, SubgroupTerms> attributes_;
};

absl::StatusOr<AttributeLexicon> ParseLexicon(std::string_view json);
absl::StatusOr<AttributeLexicon> LoadLexicon(const std::filesystem::path& path);
std::string SerializeLexicon(const AttributeLexicon& lexicon);

// Religion, gender and ethnicity word groups.
const AttributeLexicon& DefaultLexicon();

// Bidirectional term pairs for identity swapping.
class SwapTable {
 public:
  using Pair = std::pair<std::string, std::string>;

  SwapTable() = default;
  // Fails if a term belongs to two different pairs.
  static absl::StatusOr<SwapTable> Create(std::string attribute,
                                          std::vector<Pair> pairs);

  const std::string& attribute() const { return attribute_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::string* Partner(std::string_view term) const;

 private:
  friend absl::StatusOr<SwapTable> AlignedSwapPairs(const AttributeLexicon&,
                                                    std::string_view,
                                                    std::string_view,
                                                    std::string_view);
  std::string attribute_;
  std::vector<Pair> pairs_;
  std::map<std::string, std::string, std::less<>> partner_;
  std::vector<std::string> warnings_;
};

// Pairs sub_a.terms[i] with sub_b.terms[i]. A pair whose terms already
// occur in an earlier pair is dropped with a warning.
absl::StatusOr<SwapTable> AlignedSwapPairs(const AttributeLexicon& lexicon,
                                           std::string_view attribute,
                                           std::string_view sub_a,
                                           std::string_view sub_b);

struct NeutralWordList {
  std::vector<std::string> words;
};

struct IdentityTermList {
  std::vector<std::string> terms;
};

// One term per line; blank lines and '#' comments are ignored. Terms are
// lowercased and deduplicated keeping first occurrence.
absl::StatusOr<std::vector<std::string>> ParseWordList(std::string_view text);
absl::StatusOr<NeutralWordList> LoadNeutralWords(
    const std::filesystem::path& path);
absl::StatusOr<IdentityTermList> LoadIdentityTerms(
    const std::filesystem::path& path);

const NeutralWordList& DefaultNeutralWords();
const IdentityTermList& DefaultIdentityTerms();

struct GazetteerEntry {
  std::string attribute;
  std::string subgroup;
  bool operator==(const GazetteerEntry&) const = default;
};

// Context-free NORP-style entity list.
struct Gazetteer {
  static constexpr std::string_view kTag = "NORP";
  std::map<std::string, GazetteerEntry> entries;
};

absl::StatusOr<Gazetteer> ParseGazetteer(std::string_view json);
absl::StatusOr<Gazetteer> LoadGazetteer(const std::filesystem::path& path);
const Gazetteer& DefaultGazetteer();

inline constexpr std::string_view kIdentitySlot = "[Identity]";

struct Template {
  std::string pattern;
  Label label = Label::kNotHateful;
};

struct TemplateSet {
  std::vector<Template> templates;
};

absl::StatusOr<TemplateSet> ParseTemplates(std::string_view json);
absl::StatusOr<TemplateSet> LoadTemplates(const std::filesystem::path& path);
absl::Status ValidateTemplate(const Template& t);
const TemplateSet& DefaultTemplates();

// Attribute -> subgroup -> surface forms substituted into "[Identity]".
using TemplateFills = std::map<std::string, std::map<std::string, TermList>>;
const TemplateFills& DefaultTemplateFills();

// Matches whitespace-separated multi-token terms as contiguous token runs.
class TermIndex {
 public:
  struct Match {
    std::size_t begin = 0;  // token index range [begin, end)
    std::size_t end = 0;
    const std::vector<std::size_t>* ids = nullptr;
  };

  void Add(std::string_view term, std::size_t id);

  // Leftmost-longest, non-overlapping matches.
  std::vector<Match> FindAll(const std::vector<TokenSpan>& tokens) const;

  bool empty() const { return terms_.empty(); }
  std::size_t max_length() const { return max_length_; }

 private:
  std::map<std::vector<std::string>, std::vector<std::size_t>> terms_;
  std::size_t max_length_ = 0;
};

std::vector<std::string> SplitTerm(std::string_view term);

}  // namespace textaudit

#endif  // TEXTAUDIT_LEXICON_H_
