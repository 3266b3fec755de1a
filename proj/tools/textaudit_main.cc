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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "textaudit/config.h"
#include "textaudit/report.h"

namespace {

using textaudit::AuditConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitSectionFailed = 2;

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::string> dataset, format, lexicon, gazetteer,
      neutral_words, identity_terms, templates, template_fills, embeddings,
      adapter_kind, adapter;
  std::optional<int> batch_size, timeout_ms, max_retries, parallelism;
  std::optional<double> threshold;
  std::optional<long long> seed;
  std::optional<int> rounding_decimals;
  std::vector<std::string> attributes;
  // swap / class-bias / counterfactual
  std::optional<std::string> sub_a, sub_b, protected_group;
  std::vector<std::string> references;
  // explain
  std::vector<std::string> comments;
  std::optional<int> n_samples;
  std::optional<double> kernel_width, l2_lambda;
  std::optional<std::string> method;
  std::optional<int> permutations, max_tokens;
};

void AddCommon(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "audit config JSON");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--dataset", o.dataset, "labeled dataset path");
  cmd->add_option("--format", o.format, "dataset format: csv or jsonl");
  cmd->add_option("--lexicon", o.lexicon, "attribute lexicon JSON");
  cmd->add_option("--gazetteer", o.gazetteer, "gazetteer JSON");
  cmd->add_option("--neutral-words", o.neutral_words, "neutral word list");
  cmd->add_option("--identity-terms", o.identity_terms, "identity term list");
  cmd->add_option("--templates", o.templates, "counterfactual templates JSON");
  cmd->add_option("--template-fills", o.template_fills,
                  "identity fills JSON {attribute: {subgroup: [terms]}}");
  cmd->add_option("--embeddings", o.embeddings, "word embedding text file");
  cmd->add_option("--adapter-kind", o.adapter_kind,
                  "predictions_file, subprocess or http");
  cmd->add_option("--adapter", o.adapter,
                  "predictions file, command line or base URL");
  cmd->add_option("--batch-size", o.batch_size);
  cmd->add_option("--timeout-ms", o.timeout_ms);
  cmd->add_option("--max-retries", o.max_retries);
  cmd->add_option("--parallelism", o.parallelism);
  cmd->add_option("--threshold", o.threshold, "classification threshold");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--rounding-decimals", o.rounding_decimals);
  cmd->add_option("--attribute", o.attributes, "attribute to assess")
      ->take_all();
}

std::string AbsolutePath(const std::string& p) {
  return std::filesystem::absolute(p).lexically_normal().string();
}

void SetPath(std::optional<std::string>& field,
             const std::optional<std::string>& flag) {
  if (flag) field = AbsolutePath(*flag);
}

absl::StatusOr<AuditConfig> BuildConfig(const Overrides& o) {
  AuditConfig c;
  if (!o.config.empty()) {
    absl::StatusOr<AuditConfig> loaded = textaudit::LoadAuditConfig(o.config);
    if (!loaded.ok()) return loaded.status();
    c = *std::move(loaded);
  }
  if (o.dataset) c.dataset = AbsolutePath(*o.dataset);
  if (o.format) {
    absl::StatusOr<textaudit::DatasetFormat> f =
        textaudit::ParseDatasetFormat(*o.format);
    if (!f.ok()) return f.status();
    c.dataset_format = *f;
  }
  SetPath(c.lexicon, o.lexicon);
  SetPath(c.gazetteer, o.gazetteer);
  SetPath(c.neutral_words, o.neutral_words);
  SetPath(c.identity_terms, o.identity_terms);
  SetPath(c.templates, o.templates);
  SetPath(c.template_fills, o.template_fills);
  SetPath(c.embeddings, o.embeddings);
  if (o.adapter_kind) {
    absl::StatusOr<textaudit::AdapterKind> k =
        textaudit::ParseAdapterKind(*o.adapter_kind);
    if (!k.ok()) return k.status();
    c.adapter.kind = *k;
  }
  if (o.adapter) {
    c.adapter.location =
        c.adapter.kind == textaudit::AdapterKind::kPredictionsFile
            ? AbsolutePath(*o.adapter)
            : *o.adapter;
  }
  if (o.batch_size) c.adapter.batch_size = *o.batch_size;
  if (o.timeout_ms) c.adapter.timeout = std::chrono::milliseconds(*o.timeout_ms);
  if (o.max_retries) c.adapter.max_retries = *o.max_retries;
  if (o.parallelism) c.adapter.parallelism = *o.parallelism;
  if (o.threshold) c.threshold = *o.threshold;
  if (o.seed) {
    if (*o.seed < 0) {
      return absl::InvalidArgumentError("--seed must be non-negative");
    }
    c.seed = static_cast<std::uint64_t>(*o.seed);
  }
  if (o.rounding_decimals) c.rounding_decimals = *o.rounding_decimals;
  if (!o.attributes.empty()) c.attributes = o.attributes;

  if (o.sub_a || o.sub_b) {
    if (!o.sub_a || !o.sub_b || o.attributes.size() != 1) {
      return absl::InvalidArgumentError(
          "--sub-a and --sub-b need each other and exactly one --attribute");
    }
    c.swap = std::vector<textaudit::SwapSpec>{
        {o.attributes[0], *o.sub_a, *o.sub_b}};
  }
  if (o.protected_group) {
    if (o.references.size() != 1 || o.attributes.size() != 1) {
      return absl::InvalidArgumentError(
          "--protected needs exactly one --reference and one --attribute");
    }
    c.fairness = std::vector<textaudit::FairnessSpec>{
        {o.attributes[0], o.references[0], *o.protected_group}};
  } else if (!o.references.empty()) {
    if (o.attributes.size() != 1) {
      return absl::InvalidArgumentError(
          "--reference needs exactly one --attribute");
    }
    c.counterfactual = std::vector<textaudit::CounterfactualSpec>{
        {o.attributes[0], o.references}};
  }
  if (!o.comments.empty()) c.explain.local_comments = o.comments;
  if (o.n_samples) c.explain.n_samples = *o.n_samples;
  if (o.kernel_width) c.explain.kernel_width = *o.kernel_width;
  if (o.l2_lambda) c.explain.l2_lambda = *o.l2_lambda;
  if (o.method) {
    absl::StatusOr<textaudit::ImportanceMethod> m =
        textaudit::ParseImportanceMethod(*o.method);
    if (!m.ok()) return m.status();
    c.explain.method = *m;
  }
  if (o.permutations) c.explain.m_permutations = *o.permutations;
  if (o.max_tokens) c.explain.max_tokens_per_comment = *o.max_tokens;
  return c;
}

int RunAndWrite(AuditConfig config, const Overrides& o) {
  absl::StatusOr<textaudit::AuditReport> report = textaudit::RunAudit(config);
  if (!report.ok()) {
    std::cerr << "textaudit: " << report.status().message() << "\n";
    return kExitConfigError;
  }
  const std::filesystem::path out =
      o.out.empty() ? config.Resolve(config.output_dir)
                    : std::filesystem::path(o.out);
  if (absl::Status s = textaudit::WriteReport(*report, out); !s.ok()) {
    std::cerr << "textaudit: " << s.message() << "\n";
    return kExitConfigError;
  }
  for (std::string_view name : textaudit::kSectionNames) {
    auto it = report->sections.find(std::string(name));
    if (it == report->sections.end()) continue;
    std::cout << name << ": " << SectionStatusName(it->second.status);
    if (!it->second.detail.empty()) std::cout << " (" << it->second.detail << ")";
    std::cout << "\n";
  }
  std::cout << "report: " << (out / "report.json").string() << "\n";
  return report->AnyFailed() ? kExitSectionFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-box bias and fairness audit for hateful-text classifiers"};
  app.set_version_flag("--version", std::string(textaudit::ToolVersion()));
  app.require_subcommand(1);
  Overrides o;

  struct Command {
    const char* name;
    const char* help;
    std::vector<std::string> sections;
  };
  const std::vector<Command> commands = {
      {"audit", "run every requested section", {}},
      {"perf", "classification performance report", {"performance"}},
      {"data-bias", "identity-term and subgroup frequencies", {"data_bias"}},
      {"embed-bias", "embedding association bias", {"embedding_bias"}},
      {"class-bias", "subgroup probabilities and fairness metrics",
       {"subgroup_stats", "fairness_metrics"}},
      {"swap", "swapped-identity favor analysis", {"swap_favor"}},
      {"counterfactual", "template counterfactual bias", {"counterfactual"}},
      {"explain-local", "local surrogate explanations", {"explanations"}},
      {"explain-global", "global token importance", {"explanations"}},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    AddCommon(sub, o);
    subs.emplace_back(sub, &cmd);
  }
  auto* swap = app.get_subcommand("swap");
  swap->add_option("--sub-a", o.sub_a, "first subgroup of the pair");
  swap->add_option("--sub-b", o.sub_b, "second subgroup of the pair");
  auto* class_bias = app.get_subcommand("class-bias");
  class_bias->add_option("--reference", o.references, "reference subgroup");
  class_bias->add_option("--protected", o.protected_group,
                         "protected subgroup");
  app.get_subcommand("counterfactual")
      ->add_option("--reference", o.references, "reference subgroup")
      ->take_all();
  auto* local = app.get_subcommand("explain-local");
  local->add_option("--comment", o.comments, "comment id to explain")
      ->take_all();
  local->add_option("--n-samples", o.n_samples);
  local->add_option("--kernel-width", o.kernel_width);
  local->add_option("--l2-lambda", o.l2_lambda);
  auto* global = app.get_subcommand("explain-global");
  global->add_option("--method", o.method, "occlusion or sampled_shapley");
  global->add_option("--permutations", o.permutations);
  global->add_option("--max-tokens", o.max_tokens);

  double power_kw = 0, hours = 0, pue = 1, intensity = 0;
  CLI::App* emissions =
      app.add_subcommand("emissions", "training emissions estimate");
  emissions->add_option("--power-kw", power_kw, "average power draw (kW)")
      ->required();
  emissions->add_option("--hours", hours, "run time (h)")->required();
  emissions->add_option("--pue", pue, "power usage effectiveness");
  emissions->add_option("--intensity", intensity,
                        "grid carbon intensity (kg CO2eq per kWh)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (emissions->parsed()) {
    absl::StatusOr<textaudit::EmissionsEstimate> e =
        textaudit::EstimateEmissions(power_kw, hours, pue, intensity);
    if (!e.ok()) {
      std::cerr << "textaudit: " << e.status().message() << "\n";
      return kExitConfigError;
    }
    std::cout << textaudit::Canonicalize(textaudit::ToJson(*e)).dump(2)
              << "\n";
    return kExitOk;
  }

  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    absl::StatusOr<AuditConfig> config = BuildConfig(o);
    if (!config.ok()) {
      std::cerr << "textaudit: " << config.status().message() << "\n";
      return kExitConfigError;
    }
    if (!cmd->sections.empty()) config->sections = cmd->sections;
    const std::string name = cmd->name;
    if (name == "explain-local") {
      if (config->explain.local_comments.empty()) {
        std::cerr << "textaudit: explain-local needs --comment\n";
        return kExitConfigError;
      }
      config->explain.global = false;
    } else if (name == "explain-global") {
      config->explain.global = true;
      config->explain.local_comments.clear();
    }
    return RunAndWrite(*std::move(config), o);
  }
  return kExitConfigError;
}
