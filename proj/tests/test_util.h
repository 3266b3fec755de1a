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

#ifndef TEXTAUDIT_TESTS_TEST_UTIL_H_
#define TEXTAUDIT_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "textaudit/corpus.h"
#include "textaudit/modeliface.h"
#include "textaudit/stub_model.h"

namespace textaudit::testing {

inline std::filesystem::path FixturePath(const std::string& name) {
  return std::filesystem::path(TEXTAUDIT_FIXTURES_DIR) / name;
}

inline std::filesystem::path ToolPath(const std::string& name) {
  return std::filesystem::path(TEXTAUDIT_TOOLS_DIR) / name;
}

// Fresh directory under the system temp dir, removed by the caller's choice.
inline std::filesystem::path ScratchDir(const std::string& name) {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("textaudit_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline LabeledCorpus MakeCorpus(
    const std::vector<std::pair<std::string, int>>& texts) {
  std::vector<Comment> comments;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    comments.push_back({"t" + std::to_string(i), texts[i].first,
                        static_cast<Label>(texts[i].second), Split::kUnsplit});
  }
  return *LabeledCorpus::Create(std::move(comments));
}

inline AdapterConfig LiveConfig() {
  AdapterConfig c;
  c.kind = AdapterKind::kSubprocess;
  c.location = "in-process";
  return c;
}

// Predictor over an in-process scoring function.
inline std::unique_ptr<Predictor> FunctionPredictor(
    std::function<double(const std::string&)> fn) {
  return std::make_unique<Predictor>(
      LiveConfig(), std::make_unique<CallbackBackend>(std::move(fn)));
}

inline std::unique_ptr<Predictor> StubPredictor(StubModel model) {
  return FunctionPredictor(
      [model = std::move(model)](const std::string& text) {
        return model.Score(text);
      });
}

inline StubModel KeywordStub(const std::string& keyword) {
  StubModel m;
  m.base = 0.1;
  m.triggers = {keyword};
  m.trigger_probability = 0.9;
  return m;
}

}  // namespace textaudit::testing

#endif  // TEXTAUDIT_TESTS_TEST_UTIL_H_
