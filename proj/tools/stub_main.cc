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

// Line-protocol scoring process backed by a StubModel. Reads one JSON string
// per line from stdin and answers each with one probability line.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "textaudit/io.h"
#include "textaudit/stub_model.h"

int main(int argc, char** argv) {
  CLI::App app{"Deterministic keyword scorer speaking the subprocess protocol"};
  std::string model_path;
  app.add_option("--model,model", model_path, "stub model JSON")->required();
  CLI11_PARSE(app, argc, argv);

  absl::StatusOr<std::string> text = textaudit::ReadFile(model_path);
  if (!text.ok()) {
    std::cerr << "textaudit_stub: " << text.status().message() << "\n";
    return 1;
  }
  nlohmann::json doc = nlohmann::json::parse(*text, nullptr, false);
  absl::StatusOr<textaudit::StubModel> model =
      textaudit::StubModel::FromJson(doc);
  if (!model.ok()) {
    std::cerr << "textaudit_stub: " << model.status().message() << "\n";
    return 1;
  }

  std::string line;
  while (std::getline(std::cin, line)) {
    nlohmann::json request = nlohmann::json::parse(line, nullptr, false);
    if (!request.is_string()) {
      std::printf("error: expected a JSON string\n");
    } else {
      std::printf("%.17g\n", model->Score(request.get<std::string>()));
    }
    std::fflush(stdout);
  }
  return 0;
}
