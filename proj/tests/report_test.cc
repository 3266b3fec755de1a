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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"
#include "textaudit/config.h"
#include "textaudit/io.h"
#include "textaudit/report.h"

namespace textaudit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::FixturePath;
using testing::ToolPath;

// The fixture audit with the stub located by absolute path, so the test
// does not depend on PATH.
AuditConfig FixtureConfig() {
  absl::StatusOr<AuditConfig> config =
      LoadAuditConfig(FixturePath("audit.json"));
  EXPECT_TRUE(config.ok()) << config.status();
  config->adapter.location =
      ToolPath("textaudit_stub").string() + " stub_model.json";
  return *config;
}

// Runs a shell command and returns its exit status.
int Shell(const std::string& command) {
  const std::string full = "PATH='" + ToolPath("").string() + "':\"$PATH\" " +
                           command + " >/dev/null 2>&1";
  const int rc = std::system(full.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string Quote(const fs::path& p) { return "'" + p.string() + "'"; }

// ------------------------------------------------------------------ emissions

TEST(EmissionsTest, HandMultipliedCases) {
  absl::StatusOr<EmissionsEstimate> a = EstimateEmissions(1, 10, 1.0, 0.5);
  ASSERT_TRUE(a.ok());
  EXPECT_NEAR(a->co2eq_kg, 5.0, 1e-9);
  absl::StatusOr<EmissionsEstimate> b = EstimateEmissions(0.3, 4, 1.58, 0.4);
  ASSERT_TRUE(b.ok());
  EXPECT_NEAR(b->co2eq_kg, 0.7584, 1e-9);
  EXPECT_EQ(EstimateEmissions(0.3, 0, 1.58, 0.4)->co2eq_kg, 0.0);
  EXPECT_TRUE(ToJson(*b).contains("formula"));
}

TEST(EmissionsTest, RejectsBadInputs) {
  EXPECT_FALSE(EstimateEmissions(-1, 1, 1, 1).ok());
  EXPECT_FALSE(EstimateEmissions(1, -1, 1, 1).ok());
  EXPECT_FALSE(
      EstimateEmissions(1, 1, std::numeric_limits<double>::infinity(), 1).ok());
  EXPECT_FALSE(
      EstimateEmissions(1, 1, 1, std::numeric_limits<double>::quiet_NaN())
          .ok());
}

// --------------------------------------------------------------------- config

TEST(ConfigTest, FixtureParses) {
  absl::StatusOr<AuditConfig> c = LoadAuditConfig(FixturePath("audit.json"));
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->base_dir, FixturePath("audit.json").parent_path());
  EXPECT_EQ(c->dataset, "corpus.csv");
  EXPECT_EQ(c->adapter.kind, AdapterKind::kSubprocess);
  EXPECT_EQ(c->adapter.batch_size, 16);
  ASSERT_TRUE(c->swap.has_value());
  EXPECT_EQ((*c->swap)[0].sub_b, "male");
  ASSERT_TRUE(c->fairness.has_value());
  EXPECT_EQ((*c->fairness)[1].protected_group, "islam");
  EXPECT_EQ(c->explain.top_tokens, 15);
  EXPECT_EQ(c->explain.local_comments, std::vector<std::string>{"c07"});
  EXPECT_TRUE(c->Requested("emissions"));
  EXPECT_EQ(c->Resolve("x.csv"), c->base_dir / "x.csv");
  EXPECT_EQ(c->Resolve("/abs/x.csv"), fs::path("/abs/x.csv"));
}

TEST(ConfigTest, Defaults) {
  absl::StatusOr<AuditConfig> c =
      ParseAuditConfig(R"({"dataset": {"path": "d.csv"},
                           "adapter": {"kind": "predictions_file",
                                       "location": "p.csv"}})",
                       "/tmp");
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->threshold, 0.5);
  EXPECT_EQ(c->rounding_decimals, 4);
  EXPECT_FALSE(c->embeddings.has_value());
  EXPECT_FALSE(c->swap.has_value());
  EXPECT_TRUE(c->sections.empty());
  EXPECT_EQ(c->explain.method, ImportanceMethod::kOcclusion);
}

TEST(ConfigTest, Errors) {
  const std::string base =
      R"("dataset": {"path": "d.csv"},
         "adapter": {"kind": "predictions_file", "location": "p.csv"})";
  auto parse = [&](const std::string& extra) {
    absl::StatusOr<AuditConfig> c =
        ParseAuditConfig("{" + base + extra + "}", "/tmp");
    return c.ok() ? ValidateAuditConfig(*c) : c.status();
  };
  EXPECT_TRUE(parse("").ok());
  EXPECT_FALSE(parse(R"(, "thresold": 0.5)").ok());
  EXPECT_FALSE(parse(R"(, "threshold": 1.0)").ok());
  EXPECT_FALSE(parse(R"(, "sections": ["performance", "vibes"])").ok());
  EXPECT_FALSE(parse(R"(, "rounding_decimals": 16)").ok());
  EXPECT_FALSE(parse(R"(, "explain": {"max_tokens_per_comment": 65})").ok());
  EXPECT_FALSE(parse(R"(, "explain": {"method": "lime"})").ok());
  EXPECT_FALSE(parse(R"(, "swap": [{"attribute": "gender"}])").ok());
  EXPECT_FALSE(parse(R"(, "adapter": {"kind": "grpc", "location": "x"})").ok());
  EXPECT_FALSE(ParseAuditConfig("[]", "/tmp").ok());
  EXPECT_FALSE(ParseAuditConfig("{", "/tmp").ok());
  EXPECT_FALSE(LoadAuditConfig(FixturePath("missing.json")).ok());
}

TEST(ConfigTest, EchoRoundTrips) {
  absl::StatusOr<AuditConfig> c = LoadAuditConfig(FixturePath("audit.json"));
  ASSERT_TRUE(c.ok());
  const json echo = ConfigToJson(*c);
  absl::StatusOr<AuditConfig> again =
      ParseAuditConfig(echo.dump(), c->base_dir);
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(ConfigToJson(*again), echo);
  EXPECT_FALSE(echo.contains("output_dir"));
}

TEST(ConfigTest, ResolvedAdapter) {
  AuditConfig c;
  c.base_dir = "/data/audit";
  c.adapter.kind = AdapterKind::kPredictionsFile;
  c.adapter.location = "preds.csv";
  EXPECT_EQ(ResolvedAdapter(c).location, "/data/audit/preds.csv");
  c.adapter.kind = AdapterKind::kSubprocess;
  c.adapter.location = "python score.py";
  EXPECT_EQ(ResolvedAdapter(c).location,
            "cd '/data/audit' && exec python score.py");
  c.adapter.kind = AdapterKind::kHttp;
  c.adapter.location = "http://localhost:8080";
  EXPECT_EQ(ResolvedAdapter(c).location, "http://localhost:8080");
}

// ------------------------------------------------------------- canonical JSON

TEST(CanonicalizeTest, Floats) {
  const json in = {{"b", 0.1 + 0.2},
                   {"a", json::array({1e-13, -0.0, 123456789.0, 2})},
                   {"c", std::numeric_limits<double>::quiet_NaN()},
                   {"d", -1e-300}};
  const json out = Canonicalize(in);
  EXPECT_EQ(out.dump(), R"({"a":[0.0,0.0,123457000.0,2],"b":0.3,"c":null,"d":0.0})");
  EXPECT_EQ(Canonicalize(out), out);
}

// ---------------------------------------------------------------- full audit

class AuditFixtureTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    absl::StatusOr<AuditReport> r = RunAudit(FixtureConfig());
    ASSERT_TRUE(r.ok()) << r.status();
    report_ = new AuditReport(*std::move(r));
  }
  static void TearDownTestSuite() { delete report_; }
  static AuditReport* report_;
};
AuditReport* AuditFixtureTest::report_ = nullptr;

TEST_F(AuditFixtureTest, AllNineSectionsComputed) {
  ASSERT_EQ(report_->sections.size(), 9u);
  for (const auto& [name, s] : report_->sections) {
    EXPECT_EQ(s.status, SectionStatus::kComputed) << name << ": " << s.detail;
    EXPECT_TRUE(IsSectionName(name));
  }
  EXPECT_FALSE(report_->AnyFailed());
  EXPECT_EQ(report_->tool_version, ToolVersion());
}

TEST_F(AuditFixtureTest, KnownValues) {
  const json& perf = report_->sections.at("performance").result;
  EXPECT_EQ(perf["hateful"]["support"], 11);
  EXPECT_EQ(perf["not_hateful"]["support"], 19);
  const json& emissions = report_->sections.at("emissions").result;
  EXPECT_NEAR(emissions["co2eq_kg"].get<double>(), 0.7584, 1e-9);
  const json& local =
      report_->sections.at("explanations").result["local"][0];
  EXPECT_EQ(local["comment_id"], "c07");
  bool found = false;
  for (const json& w : local["weights"]) {
    if (w["token"] == "filthy") {
      EXPECT_NEAR(w["weight"].get<double>(), 0.8, 1e-3);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(AuditFixtureTest, Deterministic) {
  absl::StatusOr<AuditReport> again = RunAudit(FixtureConfig());
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(RenderReportJson(*again), RenderReportJson(*report_));
  EXPECT_EQ(RenderReportMarkdown(*again), RenderReportMarkdown(*report_));
  EXPECT_EQ(again->csv_files, report_->csv_files);
}

TEST_F(AuditFixtureTest, JsonRoundTrip) {
  const std::string text = RenderReportJson(*report_);
  absl::StatusOr<AuditReport> parsed = ParseReportJson(text);
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  EXPECT_EQ(*parsed, *report_);
  EXPECT_EQ(RenderReportJson(*parsed), text);
  EXPECT_FALSE(ParseReportJson("{}").ok());
}

TEST_F(AuditFixtureTest, InputHashesMatchFiles) {
  ASSERT_FALSE(report_->inputs.empty());
  const fs::path base = FixturePath("audit.json").parent_path();
  bool saw_dataset = false;
  for (const InputRecord& in : report_->inputs) {
    absl::StatusOr<std::string> content = ReadFile(base / in.path);
    ASSERT_TRUE(content.ok()) << in.path;
    EXPECT_EQ(in.sha256, Sha256Hex(*content)) << in.role;
    saw_dataset = saw_dataset || in.role == "dataset";
  }
  EXPECT_TRUE(saw_dataset);
}

TEST_F(AuditFixtureTest, MarkdownLayout) {
  const std::string md = RenderReportMarkdown(*report_);
  for (const char* s : {"Precision", "Recall", "F1-Score", "Support",
                        "Accuracy", "Macro Avg.", "Weighted Avg."}) {
    EXPECT_NE(md.find(s), std::string::npos) << s;
  }
}

TEST_F(AuditFixtureTest, WritesAllFiles) {
  const fs::path dir = testing::ScratchDir("write_report");
  ASSERT_TRUE(WriteReport(*report_, dir).ok());
  EXPECT_TRUE(fs::exists(dir / "report.json"));
  EXPECT_TRUE(fs::exists(dir / "report.md"));
  for (const auto& [name, content] : report_->csv_files) {
    EXPECT_EQ(*ReadFile(dir / name), content) << name;
  }
  EXPECT_EQ(*ReadFile(dir / "report.json"), RenderReportJson(*report_));
  fs::remove_all(dir);
}

// A broken embedding file fails only its own section.
TEST_F(AuditFixtureTest, SectionIsolation) {
  const fs::path dir = testing::ScratchDir("isolation");
  ASSERT_TRUE(
      WriteFileAtomically(dir / "bad.txt", "man 1 2\nwoman 1 2 3\n").ok());
  AuditConfig config = FixtureConfig();
  config.embeddings = (dir / "bad.txt").string();
  absl::StatusOr<AuditReport> broken = RunAudit(config);
  ASSERT_TRUE(broken.ok()) << broken.status();
  EXPECT_TRUE(broken->AnyFailed());
  for (const auto& [name, s] : report_->sections) {
    const SectionResult& other = broken->sections.at(name);
    if (name == "embedding_bias") {
      EXPECT_EQ(other.status, SectionStatus::kFailed);
      EXPECT_NE(other.detail.find("line 2"), std::string::npos)
          << other.detail;
    } else {
      EXPECT_EQ(other, s) << name;
    }
  }
  EXPECT_NE(RenderReportMarkdown(*broken).find("line 2"), std::string::npos);
  fs::remove_all(dir);
}

TEST(AuditTest, SkipReasons) {
  // Predictions-file adapter and no embeddings or emissions inputs.
  const fs::path dir = testing::ScratchDir("skips");
  absl::StatusOr<LabeledCorpus> corpus =
      LoadDataset(FixturePath("corpus.csv"), DatasetFormat::kCsv);
  ASSERT_TRUE(corpus.ok());
  std::string preds = "id,p_hateful\n";
  for (const Comment& c : corpus->comments()) {
    preds += c.id + "," + (c.label == Label::kHateful ? "0.8" : "0.3") + "\n";
  }
  ASSERT_TRUE(WriteFileAtomically(dir / "preds.csv", preds).ok());

  AuditConfig config;
  config.base_dir = dir;
  config.dataset = FixturePath("corpus.csv").string();
  config.adapter.kind = AdapterKind::kPredictionsFile;
  config.adapter.location = "preds.csv";
  absl::StatusOr<AuditReport> r = RunAudit(config);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->sections.at("performance").status, SectionStatus::kComputed);
  EXPECT_EQ(r->sections.at("performance").result["accuracy"], 1.0);
  EXPECT_EQ(r->sections.at("embedding_bias").detail, "no embedding file");
  EXPECT_EQ(r->sections.at("emissions").detail, "no emissions inputs");
  for (const char* live : {"swap_favor", "counterfactual", "explanations"}) {
    EXPECT_EQ(r->sections.at(live).status, SectionStatus::kSkipped) << live;
    EXPECT_EQ(r->sections.at(live).detail,
              "requires a live model adapter (subprocess or http)");
  }
  EXPECT_FALSE(r->AnyFailed());
  const std::string md = RenderReportMarkdown(*r);
  EXPECT_NE(md.find("no embedding file"), std::string::npos);
  EXPECT_NE(md.find("requires a live model adapter"), std::string::npos);
  const json j = json::parse(RenderReportJson(*r));
  EXPECT_EQ(j["sections"]["embedding_bias"]["status"], "skipped");
  EXPECT_EQ(j["sections"]["embedding_bias"]["reason"], "no embedding file");

  config.sections = {"performance", "emissions"};
  absl::StatusOr<AuditReport> subset = RunAudit(config);
  ASSERT_TRUE(subset.ok());
  EXPECT_EQ(subset->sections.size(), 2u);
  fs::remove_all(dir);
}

TEST(AuditTest, ConfigLevelErrors) {
  AuditConfig config = FixtureConfig();
  config.dataset = "does-not-exist.csv";
  EXPECT_FALSE(RunAudit(config).ok());
  config = FixtureConfig();
  config.threshold = 2;
  EXPECT_FALSE(RunAudit(config).ok());
  config = FixtureConfig();
  config.lexicon = "missing-lexicon.json";
  EXPECT_FALSE(RunAudit(config).ok());
}

// ------------------------------------------------------------------------ CLI

TEST(CliTest, ExitCodes) {
  const fs::path dir = testing::ScratchDir("cli");
  const std::string cli = Quote(ToolPath("textaudit"));
  const std::string config = Quote(FixturePath("audit.json"));
  EXPECT_EQ(Shell(cli + " audit --config " + config + " --out " +
                  Quote(dir / "ok")),
            0);
  EXPECT_TRUE(fs::exists(dir / "ok" / "report.json"));
  EXPECT_EQ(Shell(cli + " audit --config " + Quote(dir / "nope.json") +
                  " --out " + Quote(dir / "x")),
            1);
  ASSERT_TRUE(WriteFileAtomically(dir / "bad.txt", "a 1\nb 1 2\n").ok());
  EXPECT_EQ(Shell(cli + " audit --config " + config + " --embeddings " +
                  Quote(dir / "bad.txt") + " --out " + Quote(dir / "bad")),
            2);
  EXPECT_EQ(Shell(cli + " perf --config " + config + " --out " +
                  Quote(dir / "perf")),
            0);
  absl::StatusOr<std::string> perf = ReadFile(dir / "perf" / "report.json");
  ASSERT_TRUE(perf.ok());
  const json j = json::parse(*perf);
  EXPECT_EQ(j["sections"].size(), 1u);
  EXPECT_TRUE(j["sections"].contains("performance"));
  EXPECT_NE(Shell(cli + " no-such-command"), 0);
  fs::remove_all(dir);
}

TEST(CliTest, EmissionsSubcommand) {
  const fs::path dir = testing::ScratchDir("cli_emissions");
  const std::string cmd =
      "PATH='" + ToolPath("").string() + "':\"$PATH\" " +
      Quote(ToolPath("textaudit")) +
      " emissions --power-kw 0.3 --hours 4 --pue 1.58 --intensity 0.4 > " +
      Quote(dir / "out.json");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const json j = json::parse(*ReadFile(dir / "out.json"));
  EXPECT_NEAR(j["co2eq_kg"].get<double>(), 0.7584, 1e-9);
  EXPECT_EQ(Shell(Quote(ToolPath("textaudit")) +
                  " emissions --power-kw -1 --hours 4 --pue 1 --intensity 1"),
            1);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace textaudit
