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
#include "textaudit/corpus.h"

#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "json.hpp"
#include "textaudit/csv.h"
#include "textaudit/io.h"
#include "textaudit/text.h"

namespace textaudit {
namespace {

bool IsBlank(std::string_view text) {
  for (std::size_t i = 0; i < text.size();) {
    char32_t c;
    i = NextCodePoint(text, i, &c);
    if (!IsWhitespaceCodePoint(c)) return false;
  }
  return true;
}

absl::StatusOr<Split> ParseSplit(std::string_view value) {
  const std::string v = AsciiStrToLower(StripAsciiWhitespace(value));
  if (v.empty() || v == "unsplit") return Split::kUnsplit;
  if (v == "train") return Split::kTrain;
  if (v == "test") return Split::kTest;
  return absl::InvalidArgumentError(StrCat("unknown split \"", value, "\""));
}

absl::Status AtLine(int line, const absl::Status& status) {
  return absl::Status(status.code(),
                      StrCat("line ", line, ": ", status.message()));
}

absl::StatusOr<LabeledCorpus> ParseCsvDataset(std::string_view content) {
  absl::StatusOr<std::vector<CsvRecord>> records = ParseCsv(content);
  if (!records.ok()) return records.status();
  if (records->empty()) {
    return absl::InvalidArgumentError("dataset has no header row");
  }
  const CsvRecord& header = records->front();
  int id_col = -1, text_col = -1, label_col = -1, split_col = -1;
  for (int i = 0; i < static_cast<int>(header.fields.size()); ++i) {
    std::string name =
        AsciiStrToLower(StripAsciiWhitespace(header.fields[i]));
    // Strip a UTF-8 byte order mark on the first column.
    if (i == 0 && StartsWith(name, "\xEF\xBB\xBF")) name.erase(0, 3);
    if (name == "id") id_col = i;
    if (name == "text") text_col = i;
    if (name == "label") label_col = i;
    if (name == "split") split_col = i;
  }
  if (text_col < 0 || label_col < 0) {
    return absl::InvalidArgumentError(
        "CSV header must contain `text` and `label` columns");
  }

  std::vector<Comment> comments;
  comments.reserve(records->size() - 1);
  for (std::size_t r = 1; r < records->size(); ++r) {
    const CsvRecord& record = (*records)[r];
    if (record.fields.size() != header.fields.size()) {
      return absl::InvalidArgumentError(StrCat(
          "line ", record.line, ": expected ", header.fields.size(),
          " fields, found ", record.fields.size()));
    }
    Comment comment;
    comment.id = id_col >= 0 ? record.fields[id_col] : std::string();
    if (comment.id.empty()) comment.id = StrCat("row-", r);
    comment.text = record.fields[text_col];
    absl::StatusOr<Label> label = ParseLabel(record.fields[label_col]);
    if (!label.ok()) return AtLine(record.line, label.status());
    comment.label = *label;
    if (split_col >= 0) {
      absl::StatusOr<Split> split = ParseSplit(record.fields[split_col]);
      if (!split.ok()) return AtLine(record.line, split.status());
      comment.split = *split;
    }
    if (IsBlank(comment.text)) {
      return absl::InvalidArgumentError(
          StrCat("line ", record.line, ": empty text"));
    }
    comments.push_back(std::move(comment));
  }
  return LabeledCorpus::Create(std::move(comments));
}

absl::StatusOr<LabeledCorpus> ParseJsonlDataset(std::string_view content) {
  std::vector<Comment> comments;
  int line_number = 0;
  int ordinal = 0;
  for (std::string_view line : StrSplit(content, '\n')) {
    ++line_number;
    line = StripAsciiWhitespace(line);
    if (line.empty()) continue;
    ++ordinal;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": not a JSON object"));
    }
    if (!record.contains("text") || !record["text"].is_string()) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": missing string `text`"));
    }
    if (!record.contains("label")) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": missing `label`"));
    }
    Comment comment;
    comment.text = record["text"].get<std::string>();
    const nlohmann::json& label_value = record["label"];
    std::string label_text;
    if (label_value.is_string()) {
      label_text = label_value.get<std::string>();
    } else if (label_value.is_number_integer()) {
      label_text = std::to_string(label_value.get<long long>());
    } else {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": label must be 0/1 or a string"));
    }
    absl::StatusOr<Label> label = ParseLabel(label_text);
    if (!label.ok()) return AtLine(line_number, label.status());
    comment.label = *label;
    if (record.contains("id")) {
      const nlohmann::json& id = record["id"];
      if (id.is_string()) {
        comment.id = id.get<std::string>();
      } else if (id.is_number_integer()) {
        comment.id = std::to_string(id.get<long long>());
      } else if (!id.is_null()) {
        return absl::InvalidArgumentError(
            StrCat("line ", line_number, ": id must be string or int"));
      }
    }
    if (comment.id.empty()) comment.id = StrCat("row-", ordinal);
    if (record.contains("split") && record["split"].is_string()) {
      absl::StatusOr<Split> split =
          ParseSplit(record["split"].get<std::string>());
      if (!split.ok()) return AtLine(line_number, split.status());
      comment.split = *split;
    }
    if (IsBlank(comment.text)) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": empty text"));
    }
    comments.push_back(std::move(comment));
  }
  return LabeledCorpus::Create(std::move(comments));
}

}  // namespace

std::string_view LabelName(Label label) {
  return label == Label::kHateful ? "hateful" : "not-hateful";
}

absl::StatusOr<Label> ParseLabel(std::string_view value) {
  const std::string v =
      AsciiStrToLower(StripAsciiWhitespace(value));
  if (v == "1" || v == "hateful") return Label::kHateful;
  if (v == "0" || v == "not-hateful") return Label::kNotHateful;
  return absl::InvalidArgumentError(
      StrCat("unknown label \"", value, "\""));
}

absl::StatusOr<DatasetFormat> ParseDatasetFormat(std::string_view value) {
  const std::string v = AsciiStrToLower(value);
  if (v == "csv") return DatasetFormat::kCsv;
  if (v == "jsonl") return DatasetFormat::kJsonl;
  return absl::InvalidArgumentError(
      StrCat("unknown dataset format \"", value, "\""));
}

absl::StatusOr<LabeledCorpus> LabeledCorpus::Create(
    std::vector<Comment> comments) {
  LabeledCorpus corpus;
  corpus.index_.reserve(comments.size());
  for (std::size_t i = 0; i < comments.size(); ++i) {
    const Comment& c = comments[i];
    if (!IsValidUtf8(c.text)) {
      return absl::InvalidArgumentError(
          StrCat("comment \"", c.id, "\": text is not valid UTF-8"));
    }
    if (IsBlank(c.text)) {
      return absl::InvalidArgumentError(
          StrCat("comment \"", c.id, "\": empty text"));
    }
    if (!corpus.index_.emplace(c.id, i).second) {
      return absl::InvalidArgumentError(
          StrCat("duplicate id \"", c.id, "\""));
    }
    ++corpus.counts_[static_cast<int>(c.label)];
  }
  corpus.comments_ = std::move(comments);
  return corpus;
}

const Comment* LabeledCorpus::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &comments_[it->second];
}

absl::StatusOr<LabeledCorpus> ParseDataset(std::string_view content,
                                           DatasetFormat format) {
  if (!IsValidUtf8(content)) {
    return absl::InvalidArgumentError("dataset is not valid UTF-8");
  }
  return format == DatasetFormat::kCsv ? ParseCsvDataset(content)
                                       : ParseJsonlDataset(content);
}

absl::StatusOr<LabeledCorpus> LoadDataset(const std::filesystem::path& path,
                                          DatasetFormat format) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  absl::StatusOr<LabeledCorpus> corpus = ParseDataset(*content, format);
  if (!corpus.ok()) {
    return absl::Status(corpus.status().code(),
                        StrCat(path.string(), ": ",
                                     corpus.status().message()));
  }
  return corpus;
}

std::vector<TokenSpan> Tokenizer::Tokenize(std::string_view text) const {
  std::vector<TokenSpan> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    char32_t c;
    std::size_t next = NextCodePoint(text, i, &c);
    if (!IsWordCodePoint(c)) {
      i = next;
      continue;
    }
    const std::size_t start = i;
    std::size_t end = next;
    i = next;
    while (i < n) {
      next = NextCodePoint(text, i, &c);
      if (IsWordCodePoint(c)) {
        end = next;
        i = next;
        continue;
      }
      if ((c == U'\'' || c == U'.' || c == U'’') && next < n) {
        char32_t after;
        const std::size_t after_end = NextCodePoint(text, next, &after);
        if (IsWordCodePoint(after)) {
          end = after_end;
          i = after_end;
          continue;
        }
      }
      break;
    }
    TokenSpan span;
    span.token = NormalizeToken(text.substr(start, end - start));
    span.start = start;
    span.end = end;
    if (end < n && text[end] == '.' && !abbreviations_.empty() &&
        abbreviations_.count(span.token + ".") > 0) {
      span.token += ".";
      span.end = end + 1;
      i = end + 1;
    }
    tokens.push_back(std::move(span));
  }
  return tokens;
}

std::vector<TokenSpan> Tokenize(std::string_view text) {
  static const Tokenizer* const kPlain = new Tokenizer();
  return kPlain->Tokenize(text);
}

}  // namespace textaudit
