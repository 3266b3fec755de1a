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

#include "textaudit/modeliface.h"

#include <charconv>
#include <cmath>
#include <future>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "textaudit/csv.h"
#include "textaudit/io.h"
#include "textaudit/strings.h"
#include "textaudit/text.h"

namespace textaudit {
namespace {

class PredictionsBackend : public ScoringBackend {
 public:
  PredictionsBackend(const LabeledCorpus& corpus,
                     const std::vector<PredictionRecord>& records) {
    PredictionIndex index(records);
    for (const Comment& c : corpus.comments()) {
      if (std::optional<double> p = index.Find(c.id)) {
        by_text_.emplace(NfcNormalize(c.text), *p);
      }
    }
  }

  absl::StatusOr<std::vector<double>> Score(
      const std::vector<std::string>& texts) override {
    std::vector<double> out;
    out.reserve(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
      auto it = by_text_.find(NfcNormalize(texts[i]));
      if (it == by_text_.end()) {
        return absl::FailedPreconditionError(StrCat(
            "predictions_file adapter cannot score novel text #", i,
            "; swap, counterfactual and explanation sections need a live "
            "adapter (subprocess or http)"));
      }
      out.push_back(it->second);
    }
    return out;
  }

  bool serves_novel_texts() const override { return false; }

 private:
  std::unordered_map<std::string, double> by_text_;
};

bool IsRetriable(const absl::Status& status) {
  return status.code() != absl::StatusCode::kOutOfRange &&
         status.code() != absl::StatusCode::kFailedPrecondition &&
         status.code() != absl::StatusCode::kInvalidArgument;
}

}  // namespace

std::string_view AdapterKindName(AdapterKind kind) {
  switch (kind) {
    case AdapterKind::kPredictionsFile:
      return "predictions_file";
    case AdapterKind::kSubprocess:
      return "subprocess";
    case AdapterKind::kHttp:
      return "http";
  }
  return "unknown";
}

absl::StatusOr<AdapterKind> ParseAdapterKind(std::string_view name) {
  if (name == "predictions_file") return AdapterKind::kPredictionsFile;
  if (name == "subprocess") return AdapterKind::kSubprocess;
  if (name == "http") return AdapterKind::kHttp;
  return absl::InvalidArgumentError(
      StrCat("unknown adapter kind \"", name,
             "\" (expected predictions_file, subprocess or http)"));
}

absl::Status AdapterConfig::Validate() const {
  if (location.empty()) {
    return absl::InvalidArgumentError("adapter location is empty");
  }
  if (batch_size <= 0) {
    return absl::InvalidArgumentError("adapter batch_size must be positive");
  }
  if (timeout.count() <= 0) {
    return absl::InvalidArgumentError("adapter timeout must be positive");
  }
  if (max_retries < 0 || max_retries > 10) {
    return absl::InvalidArgumentError("adapter max_retries must be in [0, 10]");
  }
  if (parallelism <= 0) {
    return absl::InvalidArgumentError("adapter parallelism must be positive");
  }
  return absl::OkStatus();
}

std::optional<double> PredictionCache::Lookup(
    const std::string& normalized_text) const {
  std::shared_lock lock(mutex_);
  auto it = values_.find(normalized_text);
  if (it == values_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void PredictionCache::Insert(const std::string& normalized_text,
                             double p_hateful) {
  std::unique_lock lock(mutex_);
  values_.emplace(normalized_text, p_hateful);
}

std::size_t PredictionCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

absl::StatusOr<std::vector<double>> CallbackBackend::Score(
    const std::vector<std::string>& texts) {
  ++calls_;
  texts_scored_ += texts.size();
  std::vector<double> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) out.push_back(fn_(text));
  return out;
}

std::unique_ptr<ScoringBackend> MakePredictionsBackend(
    const LabeledCorpus& corpus, const std::vector<PredictionRecord>& records) {
  return std::make_unique<PredictionsBackend>(corpus, records);
}

absl::StatusOr<std::vector<double>> PredictBatch(
    const std::vector<std::string>& texts, ScoringBackend& backend,
    const AdapterConfig& config, PredictionCache* cache) {
  if (texts.empty()) {
    return absl::InvalidArgumentError("PredictBatch needs at least one text");
  }
  if (config.batch_size <= 0 || config.max_retries < 0) {
    return absl::InvalidArgumentError("invalid adapter batching settings");
  }

  // Unique uncached texts, remembering the first input index of each.
  std::vector<std::string> keys(texts.size());
  std::unordered_map<std::string, double> resolved;
  std::vector<std::size_t> pending;  // input index of first occurrence
  std::unordered_map<std::string, std::size_t> pending_slot;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    keys[i] = NfcNormalize(texts[i]);
    if (resolved.count(keys[i]) > 0 || pending_slot.count(keys[i]) > 0) {
      continue;
    }
    if (cache != nullptr) {
      if (std::optional<double> p = cache->Lookup(keys[i])) {
        resolved.emplace(keys[i], *p);
        continue;
      }
    }
    pending_slot.emplace(keys[i], pending.size());
    pending.push_back(i);
  }

  const std::size_t batch_size = static_cast<std::size_t>(config.batch_size);
  const std::size_t batch_count = (pending.size() + batch_size - 1) / batch_size;
  auto run_batch = [&](std::size_t b) -> absl::StatusOr<std::vector<double>> {
    std::vector<std::string> batch;
    const std::size_t begin = b * batch_size;
    const std::size_t end = std::min(pending.size(), begin + batch_size);
    for (std::size_t k = begin; k < end; ++k) batch.push_back(texts[pending[k]]);
    absl::Status last_error;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
      absl::StatusOr<std::vector<double>> scores = backend.Score(batch);
      if (scores.ok() && scores->size() != batch.size()) {
        scores = absl::DataLossError(
            StrCat("adapter returned ", scores->size(), " probabilities for ",
                   batch.size(), " texts"));
      }
      if (scores.ok()) {
        for (std::size_t k = 0; k < scores->size(); ++k) {
          const double p = (*scores)[k];
          if (!(p >= 0.0 && p <= 1.0)) {
            return absl::OutOfRangeError(
                StrCat("adapter returned probability ", p, " for text index ",
                       pending[begin + k], "; expected a value in [0, 1]"));
          }
        }
        return scores;
      }
      last_error = scores.status();
      if (!IsRetriable(last_error)) break;
    }
    return last_error;
  };

  std::vector<absl::StatusOr<std::vector<double>>> results(batch_count);
  const std::size_t parallelism =
      static_cast<std::size_t>(std::max(1, config.parallelism));
  if (parallelism == 1 || batch_count <= 1) {
    for (std::size_t b = 0; b < batch_count; ++b) {
      results[b] = run_batch(b);
      if (!results[b].ok()) return results[b].status();
    }
  } else {
    for (std::size_t wave = 0; wave < batch_count; wave += parallelism) {
      std::vector<std::future<absl::StatusOr<std::vector<double>>>> futures;
      for (std::size_t b = wave; b < std::min(batch_count, wave + parallelism);
           ++b) {
        futures.push_back(std::async(std::launch::async, run_batch, b));
      }
      for (std::size_t k = 0; k < futures.size(); ++k) {
        results[wave + k] = futures[k].get();
      }
      for (std::size_t k = 0; k < futures.size(); ++k) {
        if (!results[wave + k].ok()) return results[wave + k].status();
      }
    }
  }

  for (std::size_t b = 0; b < batch_count; ++b) {
    const std::vector<double>& scores = *results[b];
    for (std::size_t k = 0; k < scores.size(); ++k) {
      const std::string& key = keys[pending[b * batch_size + k]];
      resolved.emplace(key, scores[k]);
      if (cache != nullptr) cache->Insert(key, scores[k]);
    }
  }

  std::vector<double> out;
  out.reserve(texts.size());
  for (const std::string& key : keys) out.push_back(resolved.at(key));
  return out;
}

Predictor::Predictor(AdapterConfig config,
                     std::unique_ptr<ScoringBackend> backend, bool use_cache)
    : config_(std::move(config)),
      backend_(std::move(backend)),
      cache_(use_cache ? std::make_unique<PredictionCache>() : nullptr) {}

absl::StatusOr<std::unique_ptr<Predictor>> Predictor::Open(
    const AdapterConfig& config, const LabeledCorpus* corpus) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  std::unique_ptr<ScoringBackend> backend;
  switch (config.kind) {
    case AdapterKind::kPredictionsFile: {
      if (corpus == nullptr) {
        return absl::InvalidArgumentError(
            "predictions_file adapter needs the corpus it was produced for");
      }
      absl::StatusOr<std::vector<PredictionRecord>> records =
          LoadPredictions(config.location, *corpus);
      if (!records.ok()) return records.status();
      backend = MakePredictionsBackend(*corpus, *records);
      break;
    }
    case AdapterKind::kSubprocess:
      backend = MakeSubprocessBackend(config.location, config.timeout);
      break;
    case AdapterKind::kHttp:
      backend = MakeHttpBackend(config.location, config.timeout);
      break;
  }
  return std::make_unique<Predictor>(config, std::move(backend));
}

absl::StatusOr<std::vector<double>> Predictor::PredictBatch(
    const std::vector<std::string>& texts) {
  return textaudit::PredictBatch(texts, *backend_, config_, cache_.get());
}

absl::StatusOr<double> Predictor::Predict(const std::string& text) {
  absl::StatusOr<std::vector<double>> out = PredictBatch({text});
  if (!out.ok()) return out.status();
  return out->front();
}

absl::StatusOr<double> ParseProbability(std::string_view text) {
  text = StripAsciiWhitespace(text);
  double value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    return absl::InvalidArgumentError(
        StrCat("not a number: \"", text, "\""));
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    return absl::OutOfRangeError(
        StrCat("probability ", text, " is outside [0, 1]"));
  }
  return value;
}

absl::StatusOr<std::vector<PredictionRecord>> ParsePredictions(
    std::string_view content, const LabeledCorpus& corpus) {
  absl::StatusOr<std::vector<CsvRecord>> rows = ParseCsv(content);
  if (!rows.ok()) return rows.status();
  if (rows->empty()) {
    return absl::InvalidArgumentError("predictions file has no header");
  }
  int id_col = -1, p_col = -1;
  const std::vector<std::string>& header = rows->front().fields;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    const std::string name = AsciiStrToLower(StripAsciiWhitespace(header[i]));
    if (name == "id") id_col = i;
    if (name == "p_hateful") p_col = i;
  }
  if (id_col < 0 || p_col < 0) {
    return absl::InvalidArgumentError(
        "predictions header must be \"id,p_hateful\"");
  }
  std::unordered_map<std::string, double> by_id;
  for (std::size_t r = 1; r < rows->size(); ++r) {
    const CsvRecord& row = (*rows)[r];
    if (row.fields.size() != header.size()) {
      return absl::InvalidArgumentError(
          StrCat("line ", row.line, ": expected ", header.size(), " fields"));
    }
    const std::string& id = row.fields[id_col];
    if (corpus.Find(id) == nullptr) {
      return absl::InvalidArgumentError(
          StrCat("line ", row.line, ": unknown id \"", id, "\""));
    }
    absl::StatusOr<double> p = ParseProbability(row.fields[p_col]);
    if (!p.ok()) return Annotate(p.status(), StrCat("line ", row.line));
    if (!by_id.emplace(id, *p).second) {
      return absl::InvalidArgumentError(
          StrCat("line ", row.line, ": duplicate id \"", id, "\""));
    }
  }
  std::vector<PredictionRecord> records;
  std::vector<std::string> missing;
  for (const Comment& c : corpus.comments()) {
    auto it = by_id.find(c.id);
    if (it == by_id.end()) {
      missing.push_back(c.id);
    } else {
      records.push_back(PredictionRecord{c.id, it->second});
    }
  }
  if (!missing.empty()) {
    return absl::InvalidArgumentError(
        StrCat("predictions missing for ", missing.size(),
               " comment(s): ", StrJoin(missing, ", ")));
  }
  return records;
}

absl::StatusOr<std::vector<PredictionRecord>> LoadPredictions(
    const std::filesystem::path& path, const LabeledCorpus& corpus) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  absl::StatusOr<std::vector<PredictionRecord>> records =
      ParsePredictions(*content, corpus);
  if (!records.ok()) return Annotate(records.status(), path.string());
  return records;
}

absl::StatusOr<std::vector<PredictionRecord>> PredictCorpus(
    const LabeledCorpus& corpus, Predictor& predictor) {
  if (corpus.empty()) return std::vector<PredictionRecord>();
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const Comment& c : corpus.comments()) texts.push_back(c.text);
  absl::StatusOr<std::vector<double>> scores = predictor.PredictBatch(texts);
  if (!scores.ok()) return scores.status();
  std::vector<PredictionRecord> records;
  records.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    records.push_back(PredictionRecord{corpus.comments()[i].id, (*scores)[i]});
  }
  return records;
}

PredictionIndex::PredictionIndex(const std::vector<PredictionRecord>& records) {
  for (const PredictionRecord& r : records) by_id_.emplace(r.comment_id, r.p_hateful);
}

std::optional<double> PredictionIndex::Find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

}  // namespace textaudit
