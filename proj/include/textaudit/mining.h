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

#ifndef TEXTAUDIT_MINING_H_
#define TEXTAUDIT_MINING_H_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "textaudit/corpus.h"
#include "textaudit/lexicon.h"

namespace textaudit {

enum class MiningMethod { kLookup, kGazetteer };
std::string_view MiningMethodName(MiningMethod method);

struct MatchedTerm {
  std::string term;
  TokenSpan span;  // covers every token of a multi-token term

  bool operator==(const MatchedTerm&) const = default;
};

struct SubgroupRef {
  std::string attribute;
  std::string subgroup;
  std::vector<MatchedTerm> matched_terms;
  MiningMethod method = MiningMethod::kLookup;

  bool operator==(const SubgroupRef&) const = default;
};

// Whole-token matcher for lexicon (look-up) and gazetteer references.
class AttributeMiner {
 public:
  AttributeMiner(const AttributeLexicon& lexicon, const Gazetteer& gazetteer);

  std::vector<SubgroupRef> MineLookup(const Comment& comment) const;
  std::vector<SubgroupRef> MineGazetteer(const Comment& comment) const;
  // Lookup refs plus gazetteer refs, deduplicated on
  // (attribute, subgroup, span) and sorted by (attribute, subgroup, method).
  std::vector<SubgroupRef> Mine(const Comment& comment) const;

  const Tokenizer& tokenizer() const { return tokenizer_; }

 private:
  struct Key {
    std::string attribute;
    std::string subgroup;
  };
  std::vector<SubgroupRef> Collect(const std::vector<TokenSpan>& tokens,
                                   const TermIndex& index,
                                   const std::vector<Key>& keys,
                                   MiningMethod method) const;

  Tokenizer tokenizer_;
  std::vector<TermIndex> lookup_indexes_;  // one per attribute
  std::vector<std::vector<Key>> lookup_keys_;
  TermIndex gazetteer_index_;
  std::vector<Key> gazetteer_keys_;
};

std::vector<SubgroupRef> MineLookup(const Comment& comment,
                                    const AttributeLexicon& lexicon);
std::vector<SubgroupRef> MineGazetteer(const Comment& comment,
                                       const Gazetteer& gazetteer);

// Corpus plus per-comment subgroup references, aligned with corpus order.
class AnnotatedCorpus {
 public:
  AnnotatedCorpus() = default;
  AnnotatedCorpus(LabeledCorpus corpus,
                  std::vector<std::vector<SubgroupRef>> refs);

  const LabeledCorpus& corpus() const { return corpus_; }
  const std::vector<SubgroupRef>& RefsAt(std::size_t index) const {
    return refs_[index];
  }
  const std::vector<SubgroupRef>* RefsFor(std::string_view id) const;

  // Comment id -> refs, only for comments with at least one ref.
  std::map<std::string, std::vector<SubgroupRef>> annotations() const;

  bool References(std::size_t index, std::string_view attribute,
                  std::string_view subgroup) const;
  std::set<std::string> SubgroupsReferenced(std::size_t index,
                                            std::string_view attribute) const;

 private:
  LabeledCorpus corpus_;
  std::vector<std::vector<SubgroupRef>> refs_;
};

AnnotatedCorpus AnnotateCorpus(const LabeledCorpus& corpus,
                               const AttributeLexicon& lexicon,
                               const Gazetteer& gazetteer);

// One JSON object per reference: {id, attribute, subgroup, terms, method}.
std::string AnnotationsToJsonl(const AnnotatedCorpus& annotated);

}  // namespace textaudit

#endif  // TEXTAUDIT_MINING_H_
