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

#ifndef TEXTAUDIT_MODELIFACE_H_
#define TEXTAUDIT_MODELIFACE_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "textaudit/corpus.h"

namespace textaudit {

struct PredictionRecord {
  std::string comment_id;
  double p_hateful = 0;

  bool operator==(const PredictionRecord&) const = default;
};

enum class AdapterKind { kPredictionsFile, kSubprocess, kHttp };

std::string_view AdapterKindName(AdapterKind kind);
absl::StatusOr<AdapterKind> ParseAdapterKind(std::string_view name);

struct AdapterConfig {
  AdapterKind kind = AdapterKind::kPredictionsFile;
  // Predictions CSV path, shell command, or base URL.
  std::string location;
  int batch_size = 32;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 2;
  int parallelism = 1;

  // A predictions file only knows the corpus it was produced for.
  bool is_live() const { return kind != AdapterKind::kPredictionsFile; }
  absl::Status Validate() const;
};

// Normalized text -> probability. Reads may run concurrently; writes are
// serialized.
class PredictionCache {
 public:
  std::optional<double> Lookup(const std::string& normalized_text) const;
  void Insert(const std::string& normalized_text, double p_hateful);

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, double> values_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
};

// Raw channel to the audited model. Implementations must be safe to call
// from several threads.
class ScoringBackend {
 public:
  virtual ~ScoringBackend() = default;
  virtual absl::StatusOr<std::vector<double>> Score(
      const std::vector<std::string>& texts) = 0;
  virtual bool serves_novel_texts() const { return true; }
};

// Runs `command` through /bin/sh and speaks the line protocol: one JSON
// string per line on stdin, one decimal probability per line on stdout.
std::unique_ptr<ScoringBackend> MakeSubprocessBackend(
    std::string command, std::chrono::milliseconds timeout);

// POST <base_url>/predict with {"texts": [...]}, expecting
// {"probabilities": [...]}.
std::unique_ptr<ScoringBackend> MakeHttpBackend(
    std::string base_url, std::chrono::milliseconds timeout);

// Serves only texts that appear in `corpus`, using the matching records.
std::unique_ptr<ScoringBackend> MakePredictionsBackend(
    const LabeledCorpus& corpus, const std::vector<PredictionRecord>& records);

// In-process model, used for fixtures and tests.
class CallbackBackend : public ScoringBackend {
 public:
  using Fn = std::function<double(const std::string&)>;
  explicit CallbackBackend(Fn fn) : fn_(std::move(fn)) {}

  absl::StatusOr<std::vector<double>> Score(
      const std::vector<std::string>& texts) override;

  std::size_t calls() const { return calls_; }
  std::size_t texts_scored() const { return texts_scored_; }

 private:
  Fn fn_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<std::size_t> texts_scored_{0};
};

// Scores `texts` in input order: cache first, then unique uncached texts in
// batches of at most config.batch_size, each retried up to
// config.max_retries times. Probabilities outside [0, 1] are errors.
// `cache` may be null.
absl::StatusOr<std::vector<double>> PredictBatch(
    const std::vector<std::string>& texts, ScoringBackend& backend,
    const AdapterConfig& config, PredictionCache* cache);

// Backend + adapter settings + cache, as used by the assessments.
class Predictor {
 public:
  Predictor(AdapterConfig config, std::unique_ptr<ScoringBackend> backend,
            bool use_cache = true);

  // Builds the backend named by `config`. A predictions-file adapter needs
  // the corpus its ids refer to.
  static absl::StatusOr<std::unique_ptr<Predictor>> Open(
      const AdapterConfig& config, const LabeledCorpus* corpus = nullptr);

  absl::StatusOr<std::vector<double>> PredictBatch(
      const std::vector<std::string>& texts);
  absl::StatusOr<double> Predict(const std::string& text);

  bool serves_novel_texts() const { return backend_->serves_novel_texts(); }
  const AdapterConfig& config() const { return config_; }
  const PredictionCache* cache() const { return cache_.get(); }

 private:
  AdapterConfig config_;
  std::unique_ptr<ScoringBackend> backend_;
  std::unique_ptr<PredictionCache> cache_;
};

// CSV with header "id,p_hateful". Every corpus id must be covered exactly
// once; records come back in corpus order.
absl::StatusOr<std::vector<PredictionRecord>> ParsePredictions(
    std::string_view content, const LabeledCorpus& corpus);
absl::StatusOr<std::vector<PredictionRecord>> LoadPredictions(
    const std::filesystem::path& path, const LabeledCorpus& corpus);

// Scores every corpus comment through `predictor`.
absl::StatusOr<std::vector<PredictionRecord>> PredictCorpus(
    const LabeledCorpus& corpus, Predictor& predictor);

// Parses a probability, rejecting anything outside [0, 1] or trailing junk.
absl::StatusOr<double> ParseProbability(std::string_view text);

// id -> probability lookup over a record list.
class PredictionIndex {
 public:
  explicit PredictionIndex(const std::vector<PredictionRecord>& records);
  std::optional<double> Find(std::string_view id) const;

 private:
  std::unordered_map<std::string, double> by_id_;
};

}  // namespace textaudit

#endif  // TEXTAUDIT_MODELIFACE_H_
