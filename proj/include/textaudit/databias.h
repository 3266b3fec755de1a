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

#ifndef TEXTAUDIT_DATABIAS_H_
#define TEXTAUDIT_DATABIAS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "textaudit/corpus.h"
#include "textaudit/lexicon.h"
#include "textaudit/mining.h"

namespace textaudit {

// Share of comments (not tokens) that contain a key, per label partition.
struct FrequencyRow {
  std::string key;        // identity term, or "attribute/subgroup"
  std::string attribute;  // empty for identity-term rows
  std::string subgroup;
  double hateful_pct = 0;
  double nothateful_pct = 0;
  double overall_pct = 0;
  std::size_t hateful_n = 0;
  std::size_t nothateful_n = 0;
  std::size_t overall_n = 0;
};

// Rows follow the input term order. Fails if either label partition is
// empty.
absl::StatusOr<std::vector<FrequencyRow>> IdentityTermFrequencies(
    const LabeledCorpus& corpus, const IdentityTermList& terms);

// One row per referenced (attribute, subgroup), sorted lexicographically.
absl::StatusOr<std::vector<FrequencyRow>> SubgroupReferenceFrequencies(
    const AnnotatedCorpus& annotated);

// Term,Hateful %,Not-hateful %,Overall % (subgroup tables get an extra
// Attribute column).
std::string FrequencyTableCsv(const std::vector<FrequencyRow>& rows);
nlohmann::json ToJson(const FrequencyRow& row);

}  // namespace textaudit

#endif  // TEXTAUDIT_DATABIAS_H_
