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

#include "textaudit/mining.h"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "textaudit/strings.h"

namespace textaudit {
namespace {

std::set<std::string> MergedAbbreviations(const AttributeLexicon& lexicon,
                                          const Gazetteer& gazetteer) {
  std::set<std::string> out = lexicon.Abbreviations();
  for (const auto& [term, entry] : gazetteer.entries) {
    for (const std::string& token : SplitTerm(term)) {
      if (token.size() > 1 && token.back() == '.') out.insert(token);
    }
  }
  return out;
}

bool RefLess(const SubgroupRef& a, const SubgroupRef& b) {
  return std::tie(a.attribute, a.subgroup, a.method) <
         std::tie(b.attribute, b.subgroup, b.method);
}

}  // namespace

std::string_view MiningMethodName(MiningMethod method) {
  return method == MiningMethod::kLookup ? "lookup" : "gazetteer";
}

AttributeMiner::AttributeMiner(const AttributeLexicon& lexicon,
                               const Gazetteer& gazetteer)
    : tokenizer_(MergedAbbreviations(lexicon, gazetteer)) {
  for (const auto& [attribute, subgroups] : lexicon.attributes()) {
    TermIndex index;
    std::vector<Key> keys;
    for (const auto& [subgroup, terms] : subgroups) {
      const std::size_t id = keys.size();
      keys.push_back(Key{attribute, subgroup});
      for (const std::string& term : terms) index.Add(term, id);
    }
    lookup_indexes_.push_back(std::move(index));
    lookup_keys_.push_back(std::move(keys));
  }
  std::map<std::pair<std::string, std::string>, std::size_t> ids;
  for (const auto& [term, entry] : gazetteer.entries) {
    auto [it, inserted] = ids.emplace(
        std::make_pair(entry.attribute, entry.subgroup), gazetteer_keys_.size());
    if (inserted) gazetteer_keys_.push_back(Key{entry.attribute, entry.subgroup});
    gazetteer_index_.Add(term, it->second);
  }
}

std::vector<SubgroupRef> AttributeMiner::Collect(
    const std::vector<TokenSpan>& tokens, const TermIndex& index,
    const std::vector<Key>& keys, MiningMethod method) const {
  std::vector<SubgroupRef> refs(keys.size());
  for (const TermIndex::Match& match : index.FindAll(tokens)) {
    MatchedTerm matched;
    std::vector<std::string> parts;
    for (std::size_t t = match.begin; t < match.end; ++t) {
      parts.push_back(tokens[t].token);
    }
    matched.term = StrJoin(parts, " ");
    matched.span.token = matched.term;
    matched.span.start = tokens[match.begin].start;
    matched.span.end = tokens[match.end - 1].end;
    for (std::size_t id : *match.ids) refs[id].matched_terms.push_back(matched);
  }
  std::vector<SubgroupRef> out;
  for (std::size_t id = 0; id < keys.size(); ++id) {
    if (refs[id].matched_terms.empty()) continue;
    refs[id].attribute = keys[id].attribute;
    refs[id].subgroup = keys[id].subgroup;
    refs[id].method = method;
    out.push_back(std::move(refs[id]));
  }
  std::sort(out.begin(), out.end(), RefLess);
  return out;
}

std::vector<SubgroupRef> AttributeMiner::MineLookup(
    const Comment& comment) const {
  const std::vector<TokenSpan> tokens = tokenizer_.Tokenize(comment.text);
  std::vector<SubgroupRef> out;
  for (std::size_t a = 0; a < lookup_indexes_.size(); ++a) {
    std::vector<SubgroupRef> refs =
        Collect(tokens, lookup_indexes_[a], lookup_keys_[a],
                MiningMethod::kLookup);
    for (SubgroupRef& ref : refs) out.push_back(std::move(ref));
  }
  std::sort(out.begin(), out.end(), RefLess);
  return out;
}

std::vector<SubgroupRef> AttributeMiner::MineGazetteer(
    const Comment& comment) const {
  return Collect(tokenizer_.Tokenize(comment.text), gazetteer_index_,
                 gazetteer_keys_, MiningMethod::kGazetteer);
}

std::vector<SubgroupRef> AttributeMiner::Mine(const Comment& comment) const {
  std::vector<SubgroupRef> out = MineLookup(comment);
  std::set<std::tuple<std::string, std::string, std::size_t, std::size_t>> seen;
  for (const SubgroupRef& ref : out) {
    for (const MatchedTerm& m : ref.matched_terms) {
      seen.emplace(ref.attribute, ref.subgroup, m.span.start, m.span.end);
    }
  }
  for (SubgroupRef& ref : MineGazetteer(comment)) {
    std::vector<MatchedTerm> kept;
    for (MatchedTerm& m : ref.matched_terms) {
      if (seen.count({ref.attribute, ref.subgroup, m.span.start, m.span.end}) ==
          0) {
        kept.push_back(std::move(m));
      }
    }
    if (kept.empty()) continue;
    ref.matched_terms = std::move(kept);
    out.push_back(std::move(ref));
  }
  std::stable_sort(out.begin(), out.end(), RefLess);
  return out;
}

std::vector<SubgroupRef> MineLookup(const Comment& comment,
                                    const AttributeLexicon& lexicon) {
  return AttributeMiner(lexicon, Gazetteer()).MineLookup(comment);
}

std::vector<SubgroupRef> MineGazetteer(const Comment& comment,
                                       const Gazetteer& gazetteer) {
  return AttributeMiner(AttributeLexicon(), gazetteer).MineGazetteer(comment);
}

AnnotatedCorpus::AnnotatedCorpus(LabeledCorpus corpus,
                                 std::vector<std::vector<SubgroupRef>> refs)
    : corpus_(std::move(corpus)), refs_(std::move(refs)) {
  refs_.resize(corpus_.size());
}

const std::vector<SubgroupRef>* AnnotatedCorpus::RefsFor(
    std::string_view id) const {
  const Comment* comment = corpus_.Find(id);
  if (comment == nullptr) return nullptr;
  return &refs_[static_cast<std::size_t>(comment - corpus_.comments().data())];
}

std::map<std::string, std::vector<SubgroupRef>> AnnotatedCorpus::annotations()
    const {
  std::map<std::string, std::vector<SubgroupRef>> out;
  for (std::size_t i = 0; i < refs_.size(); ++i) {
    if (!refs_[i].empty()) out[corpus_.comments()[i].id] = refs_[i];
  }
  return out;
}

bool AnnotatedCorpus::References(std::size_t index, std::string_view attribute,
                                 std::string_view subgroup) const {
  for (const SubgroupRef& ref : refs_[index]) {
    if (ref.attribute == attribute && ref.subgroup == subgroup) return true;
  }
  return false;
}

std::set<std::string> AnnotatedCorpus::SubgroupsReferenced(
    std::size_t index, std::string_view attribute) const {
  std::set<std::string> out;
  for (const SubgroupRef& ref : refs_[index]) {
    if (ref.attribute == attribute) out.insert(ref.subgroup);
  }
  return out;
}

AnnotatedCorpus AnnotateCorpus(const LabeledCorpus& corpus,
                               const AttributeLexicon& lexicon,
                               const Gazetteer& gazetteer) {
  const AttributeMiner miner(lexicon, gazetteer);
  std::vector<std::vector<SubgroupRef>> refs;
  refs.reserve(corpus.size());
  for (const Comment& comment : corpus.comments()) {
    refs.push_back(miner.Mine(comment));
  }
  return AnnotatedCorpus(corpus, std::move(refs));
}

std::string AnnotationsToJsonl(const AnnotatedCorpus& annotated) {
  std::string out;
  for (std::size_t i = 0; i < annotated.corpus().size(); ++i) {
    for (const SubgroupRef& ref : annotated.RefsAt(i)) {
      nlohmann::json line;
      line["id"] = annotated.corpus().comments()[i].id;
      line["attribute"] = ref.attribute;
      line["subgroup"] = ref.subgroup;
      line["method"] = std::string(MiningMethodName(ref.method));
      nlohmann::json terms = nlohmann::json::array();
      for (const MatchedTerm& m : ref.matched_terms) {
        terms.push_back({{"term", m.term}, {"start", m.span.start},
                         {"end", m.span.end}});
      }
      line["terms"] = std::move(terms);
      out += line.dump();
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace textaudit
