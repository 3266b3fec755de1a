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

#ifndef TEXTAUDIT_CORPUS_H_
#define TEXTAUDIT_CORPUS_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"

namespace textaudit {

enum class Label : int { kNotHateful = 0, kHateful = 1 };
enum class Split { kTrain, kTest, kUnsplit };
enum class DatasetFormat { kCsv, kJsonl };

std::string_view LabelName(Label label);  // "hateful" / "not-hateful"
inline int LabelValue(Label label) { return static_cast<int>(label); }

// Accepts "0"/"1" and "hateful"/"not-hateful" (case-insensitive).
absl::StatusOr<Label> ParseLabel(std::string_view value);
absl::StatusOr<DatasetFormat> ParseDatasetFormat(std::string_view value);

struct Comment {
  std::string id;
  std::string text;
  Label label = Label::kNotHateful;
  Split split = Split::kUnsplit;

  bool operator==(const Comment&) const = default;
};

// Ordered, id-unique collection of labeled comments.
class LabeledCorpus {
 public:
  LabeledCorpus() = default;

  // Rejects duplicate ids, invalid UTF-8 and texts that are blank after
  // trimming.
  static absl::StatusOr<LabeledCorpus> Create(std::vector<Comment> comments);

  const std::vector<Comment>& comments() const { return comments_; }
  std::size_t size() const { return comments_.size(); }
  bool empty() const { return comments_.empty(); }
  std::size_t count(Label label) const {
    return counts_[static_cast<int>(label)];
  }
  const Comment* Find(std::string_view id) const;

  bool operator==(const LabeledCorpus& other) const {
    return comments_ == other.comments_;
  }

 private:
  std::vector<Comment> comments_;
  std::array<std::size_t, 2> counts_{};
  std::unordered_map<std::string, std::size_t> index_;
};

// CSV needs a header with `text` and `label` columns; `id` and `split` are
// optional. JSONL needs one object per line with `text` and `label`. Missing
// ids become "row-<ordinal>" (1-based).
absl::StatusOr<LabeledCorpus> ParseDataset(std::string_view content,
                                           DatasetFormat format);
absl::StatusOr<LabeledCorpus> LoadDataset(const std::filesystem::path& path,
                                          DatasetFormat format);

struct TokenSpan {
  std::string token;
  std::size_t start = 0;  // byte offsets into the original text
  std::size_t end = 0;

  bool operator==(const TokenSpan&) const = default;
};

// Word tokenizer. A token is a maximal run of letters, digits and combining
// marks, with apostrophes and periods allowed between two such characters.
// Tokens are lowercased and NFKC-normalized. A period directly after a token
// is kept only when token + "." is a registered abbreviation.
class Tokenizer {
 public:
  Tokenizer() = default;
  explicit Tokenizer(std::set<std::string> abbreviations)
      : abbreviations_(std::move(abbreviations)) {}

  std::vector<TokenSpan> Tokenize(std::string_view text) const;

  const std::set<std::string>& abbreviations() const { return abbreviations_; }

 private:
  std::set<std::string> abbreviations_;
};

// Tokenizes without abbreviations.
std::vector<TokenSpan> Tokenize(std::string_view text);

}  // namespace textaudit

#endif  // TEXTAUDIT_CORPUS_H_
