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

#ifndef TEXTAUDIT_EMBEDBIAS_H_
#define TEXTAUDIT_EMBEDBIAS_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "textaudit/lexicon.h"

namespace textaudit {

// Term -> dense vector, loaded from a whitespace-separated text file
// ("term v1 ... vd" per line, no header).
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  // Terms are lowercased; on a repeated term the first vector wins and the
  // repeat is counted in duplicate_count().
  static absl::StatusOr<EmbeddingTable> Parse(std::string_view content);

  // Builds a table in memory (test fixtures, synthetic checks).
  static absl::StatusOr<EmbeddingTable> FromVectors(
      const std::vector<std::pair<std::string, std::vector<double>>>& rows);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return terms_.size(); }
  std::size_t duplicate_count() const { return duplicate_count_; }
  const std::vector<std::string>& terms() const { return terms_; }

  // Empty span when the term is out of vocabulary.
  std::span<const double> Find(std::string_view term) const;

 private:
  absl::Status Insert(std::string term, std::vector<double> vector);

  std::size_t dimension_ = 0;
  std::vector<std::string> terms_;
  std::vector<double> values_;  // row-major, terms_.size() x dimension_
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t duplicate_count_ = 0;
};

absl::StatusOr<EmbeddingTable> LoadEmbeddings(
    const std::filesystem::path& path);

// dot(u, v) / (|u| |v|), clamped to [-1, 1]. Fails on length mismatch or a
// zero vector.
absl::StatusOr<double> CosineSimilarity(std::span<const double> u,
                                        std::span<const double> v);

struct SimilarityProfile {
  std::string subgroup;
  // x[j]: mean cosine similarity between neutral word j and the subgroup's
  // in-vocabulary terms.
  std::vector<double> x;
  std::vector<std::string> covered_neutral_terms;
  std::vector<std::string> used_terms;
  std::vector<std::string> skipped_terms;  // OOV, zero or multi-token
};

absl::StatusOr<SimilarityProfile> SubgroupSimilarityProfile(
    const NeutralWordList& neutrals, const TermList& subgroup_terms,
    const EmbeddingTable& table, std::string_view subgroup_name = "");

struct PairwiseError {
  std::string subgroup_a;
  std::string subgroup_b;
  double mae = 0;
  double rmse = 0;
};

struct EmbeddingBiasResult {
  std::string attribute;
  std::vector<PairwiseError> pairwise;  // subgroup order k < n
  double amae = 0;
  double armse = 0;
  std::vector<std::string> subgroups;  // subgroups that entered the metric
  std::vector<std::string> skipped_subgroups;
  std::vector<std::string> skipped_terms;  // "subgroup:term"
  std::vector<std::string> covered_neutral_terms;
};

// Pairwise MAE/RMSE between subgroup similarity profiles over the neutral
// words covered by every profile, and their unweighted means.
absl::StatusOr<EmbeddingBiasResult> EmbeddingBias(
    const NeutralWordList& neutrals, const AttributeLexicon& lexicon,
    std::string_view attribute, const EmbeddingTable& table);

nlohmann::json ToJson(const EmbeddingBiasResult& result);
// attribute,subgroup_a,subgroup_b,mae,rmse
std::string EmbeddingBiasCsv(const EmbeddingBiasResult& result);

}  // namespace textaudit

#endif  // TEXTAUDIT_EMBEDBIAS_H_
