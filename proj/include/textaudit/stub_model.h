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

// Deterministic keyword classifier standing in for a real model in tests,
// fixtures and the `textaudit_stub` scoring binary.

#ifndef TEXTAUDIT_STUB_MODEL_H_
#define TEXTAUDIT_STUB_MODEL_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace textaudit {

// If any trigger token is present the score is trigger_probability.
// Otherwise it is clamp(base + sum of weights of present tokens, 0, 1).
// Presence is whole-token, after the standard tokenizer.
struct StubModel {
  double base = 0.1;
  std::vector<std::pair<std::string, double>> weights;
  std::vector<std::string> triggers;
  double trigger_probability = 0.9;

  double Score(std::string_view text) const;

  static absl::StatusOr<StubModel> FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
};

}  // namespace textaudit

#endif  // TEXTAUDIT_STUB_MODEL_H_
