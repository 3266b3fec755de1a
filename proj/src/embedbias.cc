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

#include "textaudit/embedbias.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "textaudit/csv.h"
#include "textaudit/io.h"
#include "textaudit/strings.h"
#include "textaudit/text.h"

namespace textaudit {
namespace {

double Norm(std::span<const double> v) {
  double sum = 0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

absl::Status EmbeddingTable::Insert(std::string term,
                                    std::vector<double> vector) {
  if (index_.count(term) > 0) {
    ++duplicate_count_;
    return absl::OkStatus();
  }
  index_.emplace(term, terms_.size());
  terms_.push_back(std::move(term));
  values_.insert(values_.end(), vector.begin(), vector.end());
  return absl::OkStatus();
}

absl::StatusOr<EmbeddingTable> EmbeddingTable::Parse(std::string_view content) {
  EmbeddingTable table;
  int line_number = 0;
  std::vector<double> vector;
  for (std::string_view line : StrSplit(content, '\n')) {
    ++line_number;
    const std::vector<std::string_view> fields = StrSplitAny(line, " \t\r");
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": term without vector"));
    }
    const std::size_t dim = fields.size() - 1;
    if (table.dimension_ == 0) {
      table.dimension_ = dim;
    } else if (dim != table.dimension_) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": expected ", table.dimension_,
                 " components, found ", dim));
    }
    vector.assign(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      std::string_view field = fields[k + 1];
      if (!field.empty() && field.front() == '+') field.remove_prefix(1);
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), vector[k]);
      if (ec != std::errc() || ptr != field.data() + field.size() ||
          !std::isfinite(vector[k])) {
        return absl::InvalidArgumentError(
            StrCat("line ", line_number, ": cannot parse component ", k + 1,
                   " \"", fields[k + 1], "\""));
      }
    }
    if (absl::Status s = table.Insert(NormalizeToken(fields[0]), vector);
        !s.ok()) {
      return s;
    }
  }
  if (table.terms_.empty()) {
    return absl::InvalidArgumentError("embedding file is empty");
  }
  return table;
}

absl::StatusOr<EmbeddingTable> EmbeddingTable::FromVectors(
    const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  EmbeddingTable table;
  for (const auto& [term, vector] : rows) {
    if (vector.empty()) {
      return absl::InvalidArgumentError(StrCat("empty vector for ", term));
    }
    if (table.dimension_ == 0) table.dimension_ = vector.size();
    if (vector.size() != table.dimension_) {
      return absl::InvalidArgumentError(
          StrCat("dimension mismatch for \"", term, "\""));
    }
    for (double x : vector) {
      if (!std::isfinite(x)) {
        return absl::InvalidArgumentError(
            StrCat("non-finite component for \"", term, "\""));
      }
    }
    if (absl::Status s = table.Insert(NormalizeToken(term), vector); !s.ok()) {
      return s;
    }
  }
  if (table.terms_.empty()) {
    return absl::InvalidArgumentError("embedding table is empty");
  }
  return table;
}

std::span<const double> EmbeddingTable::Find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return {};
  return std::span<const double>(values_.data() + it->second * dimension_,
                                 dimension_);
}

absl::StatusOr<EmbeddingTable> LoadEmbeddings(
    const std::filesystem::path& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  absl::StatusOr<EmbeddingTable> table = EmbeddingTable::Parse(*content);
  if (!table.ok()) return Annotate(table.status(), path.string());
  return table;
}

absl::StatusOr<double> CosineSimilarity(std::span<const double> u,
                                        std::span<const double> v) {
  if (u.size() != v.size()) {
    return absl::InvalidArgumentError(
        StrCat("vector lengths differ: ", u.size(), " vs ", v.size()));
  }
  const double nu = Norm(u);
  const double nv = Norm(v);
  if (nu == 0 || nv == 0) {
    return absl::InvalidArgumentError("cosine similarity of a zero vector");
  }
  double dot = 0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

absl::StatusOr<SimilarityProfile> SubgroupSimilarityProfile(
    const NeutralWordList& neutrals, const TermList& subgroup_terms,
    const EmbeddingTable& table, std::string_view subgroup_name) {
  SimilarityProfile profile;
  profile.subgroup = std::string(subgroup_name);

  std::vector<std::span<const double>> term_vectors;
  std::set<std::string> seen;
  for (const std::string& term : subgroup_terms) {
    if (!seen.insert(term).second) continue;
    std::span<const double> v =
        term.find(' ') == std::string::npos ? table.Find(term)
                                            : std::span<const double>();
    if (v.empty() || Norm(v) == 0) {
      profile.skipped_terms.push_back(term);
      continue;
    }
    profile.used_terms.push_back(term);
    term_vectors.push_back(v);
  }
  if (term_vectors.empty()) {
    return absl::FailedPreconditionError(
        StrCat("subgroup \"", subgroup_name,
               "\" has no in-vocabulary terms; skipped: ",
               StrJoin(profile.skipped_terms, ", ")));
  }

  for (const std::string& word : neutrals.words) {
    std::span<const double> m = table.Find(word);
    if (m.empty() || Norm(m) == 0) continue;
    double sum = 0;
    for (std::span<const double> t : term_vectors) {
      absl::StatusOr<double> cos = CosineSimilarity(m, t);
      if (!cos.ok()) return cos.status();
      sum += *cos;
    }
    profile.covered_neutral_terms.push_back(word);
    profile.x.push_back(sum / static_cast<double>(term_vectors.size()));
  }
  if (profile.x.empty()) {
    return absl::FailedPreconditionError(
        "no neutral word has an embedding");
  }
  return profile;
}

absl::StatusOr<EmbeddingBiasResult> EmbeddingBias(
    const NeutralWordList& neutrals, const AttributeLexicon& lexicon,
    std::string_view attribute, const EmbeddingTable& table) {
  const SubgroupTerms* subgroups = lexicon.FindAttribute(attribute);
  if (subgroups == nullptr) {
    return absl::NotFoundError(StrCat("unknown attribute \"", attribute, "\""));
  }
  std::set<std::string> attribute_terms;
  for (const auto& [name, terms] : *subgroups) {
    attribute_terms.insert(terms.begin(), terms.end());
  }
  for (const std::string& word : neutrals.words) {
    if (attribute_terms.count(word) > 0) {
      return absl::InvalidArgumentError(
          StrCat("neutral word \"", word, "\" is also a ", attribute,
                 " subgroup term"));
    }
  }

  EmbeddingBiasResult result;
  result.attribute = std::string(attribute);
  std::vector<SimilarityProfile> profiles;
  for (const auto& [name, terms] : *subgroups) {
    absl::StatusOr<SimilarityProfile> profile =
        SubgroupSimilarityProfile(neutrals, terms, table, name);
    if (!profile.ok()) {
      result.skipped_subgroups.push_back(name);
      for (const std::string& t : terms) {
        result.skipped_terms.push_back(StrCat(name, ":", t));
      }
      continue;
    }
    for (const std::string& t : profile->skipped_terms) {
      result.skipped_terms.push_back(StrCat(name, ":", t));
    }
    profiles.push_back(*std::move(profile));
  }
  if (profiles.size() < 2) {
    return absl::FailedPreconditionError(
        StrCat("attribute \"", attribute, "\": only ", profiles.size(),
               " subgroup(s) have in-vocabulary terms"));
  }

  // Restrict every profile to the neutral words all of them cover.
  std::set<std::string> common(profiles[0].covered_neutral_terms.begin(),
                               profiles[0].covered_neutral_terms.end());
  for (const SimilarityProfile& p : profiles) {
    std::set<std::string> mine(p.covered_neutral_terms.begin(),
                               p.covered_neutral_terms.end());
    std::set<std::string> kept;
    std::set_intersection(common.begin(), common.end(), mine.begin(),
                          mine.end(), std::inserter(kept, kept.begin()));
    common = std::move(kept);
  }
  for (SimilarityProfile& p : profiles) {
    std::vector<double> x;
    std::vector<std::string> covered;
    for (std::size_t j = 0; j < p.x.size(); ++j) {
      if (common.count(p.covered_neutral_terms[j]) == 0) continue;
      x.push_back(p.x[j]);
      covered.push_back(p.covered_neutral_terms[j]);
    }
    p.x = std::move(x);
    p.covered_neutral_terms = std::move(covered);
  }
  result.covered_neutral_terms = profiles[0].covered_neutral_terms;
  for (const SimilarityProfile& p : profiles) {
    result.subgroups.push_back(p.subgroup);
  }

  const double m = static_cast<double>(result.covered_neutral_terms.size());
  double mae_sum = 0;
  double rmse_sum = 0;
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    for (std::size_t n = k + 1; n < profiles.size(); ++n) {
      double abs_sum = 0;
      double sq_sum = 0;
      for (std::size_t j = 0; j < profiles[k].x.size(); ++j) {
        const double d = profiles[k].x[j] - profiles[n].x[j];
        abs_sum += std::abs(d);
        sq_sum += d * d;
      }
      PairwiseError pair;
      pair.subgroup_a = profiles[k].subgroup;
      pair.subgroup_b = profiles[n].subgroup;
      pair.mae = abs_sum / m;
      pair.rmse = std::sqrt(sq_sum / m);
      mae_sum += pair.mae;
      rmse_sum += pair.rmse;
      result.pairwise.push_back(std::move(pair));
    }
  }
  const double pairs = static_cast<double>(result.pairwise.size());
  result.amae = mae_sum / pairs;
  result.armse = rmse_sum / pairs;
  return result;
}

nlohmann::json ToJson(const EmbeddingBiasResult& result) {
  nlohmann::json j;
  j["attribute"] = result.attribute;
  j["amae"] = result.amae;
  j["armse"] = result.armse;
  nlohmann::json pairwise = nlohmann::json::array();
  for (const PairwiseError& p : result.pairwise) {
    pairwise.push_back({{"subgroup_a", p.subgroup_a},
                        {"subgroup_b", p.subgroup_b},
                        {"mae", p.mae},
                        {"rmse", p.rmse}});
  }
  j["pairwise"] = std::move(pairwise);
  j["subgroups"] = result.subgroups;
  j["skipped_subgroups"] = result.skipped_subgroups;
  j["skipped_terms"] = result.skipped_terms;
  j["neutral_terms_used"] = result.covered_neutral_terms.size();
  return j;
}

std::string EmbeddingBiasCsv(const EmbeddingBiasResult& result) {
  std::string out =
      FormatCsvRow({"attribute", "subgroup_a", "subgroup_b", "mae", "rmse"});
  for (const PairwiseError& p : result.pairwise) {
    out += FormatCsvRow({result.attribute, p.subgroup_a, p.subgroup_b,
                         StrCat(p.mae), StrCat(p.rmse)});
  }
  return out;
}

}  // namespace textaudit
