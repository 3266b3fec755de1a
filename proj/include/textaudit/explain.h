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

#ifndef TEXTAUDIT_EXPLAIN_H_
#define TEXTAUDIT_EXPLAIN_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "textaudit/corpus.h"
#include "textaudit/modeliface.h"

namespace textaudit {

// A comment split into interpretable features: unique normalized tokens,
// each tied to all of its occurrences.
struct FeaturizedText {
  std::string text;
  std::vector<TokenSpan> spans;
  std::vector<std::string> features;  // first-occurrence order
  std::vector<std::vector<std::size_t>> occurrences;  // feature -> span ids
};

FeaturizedText Featurize(std::string_view text,
                         const Tokenizer& tokenizer = Tokenizer());

// Deletes every occurrence of each feature whose keep flag is false, along
// with the whitespace before it (or after it, at the start of the text).
std::string RealizeMask(const FeaturizedText& f, const std::vector<bool>& keep);

struct TokenWeight {
  std::string token;
  double weight = 0;
};

struct LocalExplainOptions {
  int n_samples = 0;  // 0 selects max(512, 8 * unique tokens)
  double kernel_width = 0.75;
  double l2_lambda = 1e-3;
  std::uint64_t rng_seed = 0;
  // Enumerate all 2^n masks instead of sampling (n <= 20).
  bool exhaustive = false;
};

struct LocalExplanation {
  std::string comment_id;
  std::vector<TokenWeight> weights;  // feature order
  double intercept = 0;
  double surrogate_fit_r2 = 0;
  double p_full = 0;
  int n_samples = 0;
  double kernel_width = 0;
  double l2_lambda = 0;
  std::uint64_t rng_seed = 0;
  bool exhaustive = false;
};

// Weighted ridge surrogate over binary token-presence masks. Sample weight is
// exp(-D^2 / width^2) with D the cosine distance to the all-ones mask.
absl::StatusOr<LocalExplanation> LocalExplain(
    const Comment& comment, Predictor& predictor,
    const LocalExplainOptions& options,
    const Tokenizer& tokenizer = Tokenizer());

struct TokenValue {
  std::string token;
  double value = 0;
};

inline constexpr std::size_t kMaxExactShapleyTokens = 12;

// Exact Shapley values; the value of a coalition is the model probability of
// the text that keeps only its tokens.
absl::StatusOr<std::vector<TokenValue>> ExactShapley(
    const Comment& comment, Predictor& predictor,
    const Tokenizer& tokenizer = Tokenizer());

// Permutation-sampling estimate. With max_tokens > 0, only the first
// max_tokens features are players; the rest stay in the text.
absl::StatusOr<std::vector<TokenValue>> SampledShapley(
    const Comment& comment, Predictor& predictor, int m_permutations,
    std::uint64_t rng_seed, int max_tokens = 0,
    const Tokenizer& tokenizer = Tokenizer());

enum class ImportanceMethod { kOcclusion, kSampledShapley };
std::string_view ImportanceMethodName(ImportanceMethod method);
absl::StatusOr<ImportanceMethod> ParseImportanceMethod(std::string_view name);

struct ImportanceRow {
  std::string token;
  double mean_effect = 0;
  double mean_abs_effect = 0;
  std::size_t support = 0;  // comments containing the token
};

struct GlobalImportance {
  ImportanceMethod method = ImportanceMethod::kOcclusion;
  std::uint64_t rng_seed = 0;
  int m_permutations = 0;
  int max_tokens_per_comment = 0;
  std::vector<ImportanceRow> rows;  // mean_abs_effect descending
};

// Occlusion effect of t in a comment: p(full) - p(all occurrences of t
// deleted). Effects are averaged per token over the comments containing it.
absl::StatusOr<GlobalImportance> ComputeGlobalImportance(
    const LabeledCorpus& corpus, Predictor& predictor, ImportanceMethod method,
    int m_permutations, int max_tokens_per_comment, std::uint64_t rng_seed,
    const Tokenizer& tokenizer = Tokenizer());

nlohmann::json ToJson(const LocalExplanation& e);
nlohmann::json ToJson(const GlobalImportance& g);
std::string GlobalImportanceCsv(const GlobalImportance& g);

}  // namespace textaudit

#endif  // TEXTAUDIT_EXPLAIN_H_
