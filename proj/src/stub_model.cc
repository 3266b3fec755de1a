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

#include "textaudit/stub_model.h"

#include <algorithm>
#include <set>
#include <string>

#include "absl/status/status.h"
#include "textaudit/corpus.h"
#include "textaudit/text.h"

namespace textaudit {

double StubModel::Score(std::string_view text) const {
  std::set<std::string> present;
  for (const TokenSpan& span : Tokenize(text)) present.insert(span.token);
  for (const std::string& trigger : triggers) {
    if (present.count(trigger) > 0) return trigger_probability;
  }
  double p = base;
  for (const auto& [token, weight] : weights) {
    if (present.count(token) > 0) p += weight;
  }
  return std::clamp(p, 0.0, 1.0);
}

absl::StatusOr<StubModel> StubModel::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("stub model must be a JSON object");
  }
  StubModel model;
  try {
    model.base = j.value("base", model.base);
    model.trigger_probability =
        j.value("trigger_probability", model.trigger_probability);
    if (j.contains("weights")) {
      for (const auto& [token, weight] : j.at("weights").items()) {
        model.weights.emplace_back(NormalizeToken(token), weight.get<double>());
      }
    }
    if (j.contains("triggers")) {
      for (const auto& t : j.at("triggers")) {
        model.triggers.push_back(NormalizeToken(t.get<std::string>()));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
  if (model.base < 0 || model.base > 1 || model.trigger_probability < 0 ||
      model.trigger_probability > 1) {
    return absl::InvalidArgumentError(
        "stub base and trigger_probability must lie in [0, 1]");
  }
  return model;
}

nlohmann::json StubModel::ToJson() const {
  nlohmann::json j;
  j["base"] = base;
  j["trigger_probability"] = trigger_probability;
  j["triggers"] = triggers;
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [token, weight] : weights) w[token] = weight;
  j["weights"] = std::move(w);
  return j;
}

}  // namespace textaudit
