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

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "httplib.h"
#include "json.hpp"
#include "textaudit/modeliface.h"
#include "textaudit/strings.h"

namespace textaudit {
namespace {

class HttpBackend : public ScoringBackend {
 public:
  HttpBackend(std::string base_url, std::chrono::milliseconds timeout)
      : timeout_(timeout) {
    // Split "http://host:port/prefix" into origin and path prefix.
    const std::size_t scheme = base_url.find("://");
    const std::size_t path_start =
        base_url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start == std::string::npos) {
      origin_ = base_url;
    } else {
      origin_ = base_url.substr(0, path_start);
      prefix_ = base_url.substr(path_start);
    }
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }

  absl::StatusOr<std::vector<double>> Score(
      const std::vector<std::string>& texts) override {
    httplib::Client client(origin_);
    if (!client.is_valid()) {
      return absl::InvalidArgumentError(
          StrCat("invalid adapter URL \"", origin_, "\""));
    }
    const auto seconds =
        std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
        timeout_ - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());

    nlohmann::json request;
    request["texts"] = texts;
    const std::string path = prefix_ + "/predict";
    httplib::Result response =
        client.Post(path, request.dump(-1, ' ', false,
                                       nlohmann::json::error_handler_t::replace),
                    "application/json");
    if (!response) {
      return absl::UnavailableError(
          StrCat("POST ", origin_, path, " failed: ",
                 httplib::to_string(response.error())));
    }
    if (response->status != 200) {
      return absl::UnavailableError(StrCat("POST ", origin_, path,
                                           " returned status ",
                                           response->status));
    }
    nlohmann::json body = nlohmann::json::parse(response->body, nullptr, false);
    if (body.is_discarded() || !body.is_object() ||
        !body.contains("probabilities") || !body["probabilities"].is_array()) {
      return absl::DataLossError(
          "HTTP adapter response lacks a \"probabilities\" array");
    }
    std::vector<double> out;
    for (const nlohmann::json& p : body["probabilities"]) {
      if (!p.is_number()) {
        return absl::DataLossError("HTTP adapter returned a non-number");
      }
      out.push_back(p.get<double>());
    }
    return out;
  }

 private:
  std::string origin_;
  std::string prefix_;
  std::chrono::milliseconds timeout_;
};

}  // namespace

std::unique_ptr<ScoringBackend> MakeHttpBackend(
    std::string base_url, std::chrono::milliseconds timeout) {
  return std::make_unique<HttpBackend>(std::move(base_url), timeout);
}

}  // namespace textaudit
