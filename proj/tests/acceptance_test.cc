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

// Acceptance runner: prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.h"
#include "test_util.h"
#include "textaudit/classbias.h"
#include "textaudit/databias.h"
#include "textaudit/embedbias.h"
#include "textaudit/explain.h"
#include "textaudit/io.h"
#include "textaudit/lexicon.h"
#include "textaudit/mining.h"
#include "textaudit/report.h"
#include "textaudit/strings.h"

namespace textaudit {
namespace {

namespace fs = std::filesystem;
using testing::FixturePath;
using testing::MakeCorpus;

// Collects the first few failure messages of one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_.push_back(what);
  }
  void Near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(17);
    s << what << ": got " << got << " want " << want;
    Expect(std::abs(got - want) <= tol, s.str());
  }
  void Near(std::optional<double> got, std::optional<double> want, double tol,
            const std::string& what) {
    if (got.has_value() != want.has_value()) {
      Expect(false, what + ": defined-ness differs");
    } else if (got) {
      Near(*got, *want, tol, what);
    }
  }
  void Ok(const absl::Status& s, const std::string& what) {
    Expect(s.ok(), what + ": " + StatusMessage(s));
  }
  bool passed() const { return failures_ == 0; }
  std::string Summary() const {
    std::string out;
    for (const std::string& n : notes_) out += "; " + n;
    if (failures_ > 3) out += "; ...";
    return out;
  }

 private:
  int failures_ = 0;
  std::vector<std::string> notes_;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::vector<PredictionRecord> Preds(const LabeledCorpus& corpus,
                                    const std::vector<double>& p) {
  std::vector<PredictionRecord> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out.push_back({corpus.comments()[i].id, p[i]});
  }
  return out;
}

StubModel LoadStub(const std::string& name) {
  absl::StatusOr<std::string> text = ReadFile(FixturePath(name));
  if (!text.ok()) return StubModel();
  absl::StatusOr<StubModel> model =
      StubModel::FromJson(nlohmann::json::parse(*text));
  return model.ok() ? *model : StubModel();
}

// 1. Metrics against a brute-force confusion-matrix oracle.
void OracleEquivalence(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 50);
    std::vector<std::pair<std::string, int>> texts;
    std::vector<double> p;
    std::vector<oracle::Example> xs;
    for (int i = 0; i < n; ++i) {
      const int y = static_cast<int>(rng() % 2);
      p.push_back(rng() % 10 == 0 ? 0.5 : unit(rng));
      texts.emplace_back("comment " + std::to_string(i), y);
      xs.push_back({y, p.back()});
    }
    const LabeledCorpus corpus = MakeCorpus(texts);
    absl::StatusOr<ClassReport> r = PerformanceReport(corpus, Preds(corpus, p));
    c.Ok(r.status(), "performance");
    if (!r.ok()) continue;
    const oracle::Confusion conf = oracle::Count(xs, 0.5);
    for (int cls = 0; cls < 2; ++cls) {
      const oracle::PerClass o = oracle::ClassMetricsFor(conf, cls);
      c.Near(r->per_class[cls].precision, o.precision, 1e-9, "precision");
      c.Near(r->per_class[cls].recall, o.recall, 1e-9, "recall");
      c.Near(r->per_class[cls].f1, o.f1, 1e-9, "f1");
    }
    c.Near(r->accuracy, oracle::Accuracy(conf), 1e-9, "accuracy");

    // Split the same examples into two groups for the fairness metrics.
    const std::size_t cut = rng() % (xs.size() + 1);
    std::vector<oracle::Example> a(xs.begin(), xs.begin() + cut);
    std::vector<oracle::Example> b(xs.begin() + cut, xs.end());
    if (a.empty() || b.empty()) continue;
    std::vector<ScoredExample> sa, sb;
    for (const auto& x : a) sa.push_back({static_cast<Label>(x.y), x.p});
    for (const auto& x : b) sb.push_back({static_cast<Label>(x.y), x.p});
    const FairnessMetrics m = FairnessMetricsFromExamples(sa, sb, 0.5);
    const oracle::Rates ra = oracle::GroupRatesFor(a, 0.5);
    const oracle::Rates rb = oracle::GroupRatesFor(b, 0.5);
    c.Near(m.statistical_parity, oracle::Diff(ra.pos_rate, rb.pos_rate), 1e-9,
           "statistical parity");
    c.Near(m.equal_opportunity, oracle::Diff(ra.tpr, rb.tpr), 1e-9,
           "equal opportunity");
    c.Near(m.positive_predictive_value, oracle::Diff(ra.ppv, rb.ppv), 1e-9,
           "ppv");
    c.Near(m.positive_class_balance, oracle::Diff(ra.pcb, rb.pcb), 1e-9,
           "positive class balance");
    c.Near(m.normalized_treatment_equality, oracle::Diff(ra.nte, rb.nte), 1e-9,
           "treatment equality");
  }
  c.Expect(Seconds(start) < 10, "runtime over 10 s");
}

double OracleCos(const std::vector<double>& u, const std::vector<double>& v) {
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  return dot / std::sqrt(nu * nv);
}

// 2. Embedding-bias properties on random tables.
void EmbeddingProperties(Check& c) {
  using Rows = std::vector<std::pair<std::string, std::vector<double>>>;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  int trials = 0;
  while (trials < 100) {
    const std::size_t d = 1 + rng() % 8;
    const std::size_t n_terms = 4 + rng() % 17;
    Rows rows;
    for (std::size_t i = 0; i < n_terms; ++i) {
      std::vector<double> v(d);
      for (double& x : v) x = normal(rng);
      rows.emplace_back("w" + std::to_string(i), v);
    }
    const std::size_t s = 2 + rng() % 3;
    std::map<std::string, SubgroupTerms> attrs;
    std::vector<std::vector<std::size_t>> members(s);
    for (std::size_t i = 2; i < n_terms; ++i) {
      const std::size_t g = i - 2 < s ? i - 2 : rng() % s;
      attrs["a"]["g" + std::to_string(g)].push_back(rows[i].first);
      members[g].push_back(i);
    }
    if (attrs["a"].size() < 2) continue;
    ++trials;
    const NeutralWordList neutrals{{"w0", "w1"}};
    absl::StatusOr<AttributeLexicon> lexicon = AttributeLexicon::Create(attrs);
    absl::StatusOr<EmbeddingTable> table = EmbeddingTable::FromVectors(rows);
    c.Ok(lexicon.status(), "lexicon");
    c.Ok(table.status(), "table");
    if (!lexicon.ok() || !table.ok()) continue;
    absl::StatusOr<EmbeddingBiasResult> r =
        EmbeddingBias(neutrals, *lexicon, "a", *table);
    c.Ok(r.status(), "embedding bias");
    if (!r.ok()) continue;
    for (const auto& pair : r->pairwise) {
      c.Expect(pair.rmse >= pair.mae, "RMSE < MAE");
    }
    std::size_t nonempty = 0;
    for (const auto& m : members) nonempty += m.empty() ? 0 : 1;
    if (nonempty == 2 && r->pairwise.size() == 1) {
      c.Expect(r->amae == r->pairwise[0].mae, "AMAE != MAE with s = 2");
    }
    // Brute-force profile distance for the first pair.
    std::vector<std::vector<double>> x;
    for (const auto& m : members) {
      if (m.empty()) continue;
      std::vector<double> profile;
      for (std::size_t j = 0; j < 2; ++j) {
        double sum = 0;
        for (std::size_t t : m) sum += OracleCos(rows[j].second, rows[t].second);
        profile.push_back(sum / static_cast<double>(m.size()));
      }
      x.push_back(profile);
    }
    c.Near(r->pairwise[0].mae,
           (std::abs(x[0][0] - x[1][0]) + std::abs(x[0][1] - x[1][1])) / 2,
           1e-12, "pairwise MAE");

    Rows scaled = rows;
    std::uniform_real_distribution<double> factor(0.01, 100.0);
    for (auto& [term, v] : scaled) {
      const double k = factor(rng);
      for (double& e : v) e *= k;
    }
    absl::StatusOr<EmbeddingBiasResult> rs = EmbeddingBias(
        neutrals, *lexicon, "a", *EmbeddingTable::FromVectors(scaled));
    c.Ok(rs.status(), "scaled embedding bias");
    if (!rs.ok()) continue;
    c.Near(rs->amae, r->amae, 1e-9, "AMAE under rescaling");
    c.Near(rs->armse, r->armse, 1e-9, "ARMSE under rescaling");
    for (std::size_t k = 0; k < r->pairwise.size(); ++k) {
      c.Near(rs->pairwise[k].mae, r->pairwise[k].mae, 1e-9,
             "pair MAE under rescaling");
      c.Near(rs->pairwise[k].rmse, r->pairwise[k].rmse, 1e-9,
             "pair RMSE under rescaling");
    }

    // The same subgroups given identical term sets.
    std::map<std::string, SubgroupTerms> same;
    same["a"]["x"] = attrs["a"].begin()->second;
    same["a"]["y"] = attrs["a"].begin()->second;
    absl::StatusOr<EmbeddingBiasResult> rz = EmbeddingBias(
        neutrals, *AttributeLexicon::Create(same), "a", *table);
    c.Ok(rz.status(), "identical sets");
    if (rz.ok()) {
      c.Expect(rz->amae == 0 && rz->armse == 0, "identical sets not zero");
    }
  }
  c.Expect(Seconds(start) < 5, "runtime over 5 s");
}

// 3. Counterfactual bias metric.
void CounterfactualBiasMetric(Check& c) {
  const std::vector<CounterfactualGroup> groups = {
      {Label::kHateful, 0.9, {0.7}},
      {Label::kNotHateful, 0.1, {0.3}},
      {Label::kHateful, 0.5, {0.5}}};
  absl::StatusOr<CBResult> r = CounterfactualBiasFromGroups(groups, "ref");
  c.Ok(r.status(), "three-group fixture");
  if (r.ok()) {
    c.Near(r->cb_total, 0.4, 1e-9, "CB total");
    c.Near(r->cb_mean, 0.4 / 3, 1e-9, "CB mean");
  }
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    std::vector<CounterfactualGroup> ab, ba, same;
    for (int i = 0; i < n; ++i) {
      const Label y = static_cast<Label>(rng() % 2);
      const double pa = unit(rng), pb = unit(rng);
      ab.push_back({y, pa, {pb}});
      ba.push_back({y, pb, {pa}});
      same.push_back({y, pa, {pa}});
    }
    absl::StatusOr<CBResult> r_ab = CounterfactualBiasFromGroups(ab, "a");
    absl::StatusOr<CBResult> r_ba = CounterfactualBiasFromGroups(ba, "b");
    absl::StatusOr<CBResult> r_same = CounterfactualBiasFromGroups(same, "a");
    if (!r_ab.ok() || !r_ba.ok() || !r_same.ok()) {
      c.Expect(false, "CB failed on random instance");
      continue;
    }
    c.Expect(r_ab->cb_total == -r_ba->cb_total, "antisymmetry not exact");
    c.Expect(r_same->cb_total == 0, "O = X not zero");
  }
}

// 4. Swap correctness.
void SwapCorrectness(Check& c) {
  absl::StatusOr<SwapTable> table =
      AlignedSwapPairs(DefaultLexicon(), "gender", "male", "female");
  c.Ok(table.status(), "default gender table");
  if (!table.ok()) return;
  const std::string original =
      "This Jerry Lewis ripoff needs to just go away already. The guy is so "
      "good at acting like a fool because he is a fool.";
  const std::string swapped =
      "This Jerry Lewis ripoff needs to just go away already. The gal is so "
      "good at acting like a fool because she is a fool.";
  c.Expect(SwapText(original, *table) == swapped, "reference sentence swap differs");
  std::vector<std::string> words;
  for (const auto& [a, b] : table->pairs()) {
    if (a.find_first_of(".'") != std::string::npos) continue;
    words.push_back(a);
    words.push_back(b);
  }
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int k = 0; k < n; ++k) s += (k ? " " : "") + words[rng() % words.size()];
    c.Expect(SwapText(SwapText(s, *table), *table) == s, "involution: " + s);
  }
}

// 5. Favor analysis on the 40-comment fixture.
void FavorAnalysis(Check& c) {
  absl::StatusOr<LabeledCorpus> corpus =
      LoadDataset(FixturePath("swap40.csv"), DatasetFormat::kCsv);
  c.Ok(corpus.status(), "swap40");
  if (!corpus.ok()) return;
  c.Expect(corpus->size() == 40, "fixture size");
  const AnnotatedCorpus annotated =
      AnnotateCorpus(*corpus, DefaultLexicon(), DefaultGazetteer());
  std::unique_ptr<Predictor> predictor =
      testing::StubPredictor(LoadStub("swap_stub_model.json"));
  absl::StatusOr<SwapTable> table =
      AlignedSwapPairs(DefaultLexicon(), "gender", "female", "male");
  c.Ok(table.status(), "gender table");
  if (!table.ok()) return;
  absl::StatusOr<FavorReport> r = SwapFavorAnalysis(
      annotated, *predictor, *table, "gender", "female", "male", 4);
  c.Ok(r.status(), "favor analysis");
  if (!r.ok()) return;
  // Hand enumeration: 29 eligible; 12 favor female, 10 male, 7 unchanged.
  c.Expect(r->n_swapped == 29, "eligible count");
  c.Expect(r->fraction_favor_a == 12.0 / 29.0, "female fraction");
  c.Expect(r->fraction_favor_b == 10.0 / 29.0, "male fraction");
  c.Expect(r->fraction_no_change == 7.0 / 29.0, "no-change fraction");
  c.Near(r->fraction_favor_a + r->fraction_favor_b + r->fraction_no_change,
         1.0, 1e-9, "fraction sum");
}

void WeightedMean(Check& c, const FrequencyRow& r, double n_h, double n_nh) {
  c.Expect(r.overall_n == r.hateful_n + r.nothateful_n, "overall count");
  c.Near(r.overall_pct * (n_h + n_nh),
         r.hateful_pct * n_h + r.nothateful_pct * n_nh, 1e-9,
         "weighted mean " + r.key);
}

// 6. Frequency tables.
void FrequencyTables(Check& c) {
  absl::StatusOr<LabeledCorpus> corpus =
      LoadDataset(FixturePath("corpus.csv"), DatasetFormat::kCsv);
  c.Ok(corpus.status(), "corpus");
  if (!corpus.ok()) return;
  absl::StatusOr<std::vector<FrequencyRow>> terms =
      IdentityTermFrequencies(*corpus, DefaultIdentityTerms());
  c.Ok(terms.status(), "identity terms");
  if (terms.ok()) {
    const std::map<std::string, std::pair<std::size_t, std::size_t>> want = {
        {"atheist", {0, 1}},  {"gay", {1, 2}},   {"lesbian", {0, 1}},
        {"feminist", {1, 1}}, {"black", {0, 1}}, {"white", {1, 0}},
        {"islam", {0, 1}},    {"muslim", {1, 2}}};
    for (const FrequencyRow& r : *terms) {
      auto it = want.find(r.key);
      const auto n = it == want.end() ? std::pair<std::size_t, std::size_t>{}
                                      : it->second;
      c.Expect(r.hateful_n == n.first && r.nothateful_n == n.second,
               "identity term " + r.key);
    }
  }
  absl::StatusOr<std::vector<FrequencyRow>> refs = SubgroupReferenceFrequencies(
      AnnotateCorpus(*corpus, DefaultLexicon(), DefaultGazetteer()));
  c.Ok(refs.status(), "subgroup references");
  if (refs.ok()) {
    const std::map<std::string, std::pair<std::size_t, std::size_t>> want = {
        {"gender/female", {2, 7}},    {"gender/male", {2, 5}},
        {"religion/atheism", {0, 1}}, {"religion/christianity", {1, 1}},
        {"religion/islam", {1, 3}}};
    c.Expect(refs->size() == want.size(), "subgroup row count");
    for (const FrequencyRow& r : *refs) {
      auto it = want.find(r.key);
      c.Expect(it != want.end() && r.hateful_n == it->second.first &&
                   r.nothateful_n == it->second.second,
               "subgroup " + r.key);
    }
  }

  const std::vector<std::string> vocab = {"gay", "muslim", "she", "he",
                                          "the", "white", "is",  "women"};
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    std::vector<std::pair<std::string, int>> texts;
    for (int i = 0; i < n; ++i) {
      std::string text;
      const int len = 1 + static_cast<int>(rng() % 6);
      for (int k = 0; k < len; ++k) {
        text += (k ? " " : "") + vocab[rng() % vocab.size()];
      }
      texts.emplace_back(text, i < 2 ? i : static_cast<int>(rng() % 2));
    }
    const LabeledCorpus random = MakeCorpus(texts);
    const double n_h = static_cast<double>(random.count(Label::kHateful));
    const double n_nh = static_cast<double>(random.count(Label::kNotHateful));
    absl::StatusOr<std::vector<FrequencyRow>> rows =
        IdentityTermFrequencies(random, {vocab});
    c.Ok(rows.status(), "random identity terms");
    if (rows.ok()) {
      for (const FrequencyRow& r : *rows) WeightedMean(c, r, n_h, n_nh);
    }
    absl::StatusOr<std::vector<FrequencyRow>> subs =
        SubgroupReferenceFrequencies(
            AnnotateCorpus(random, DefaultLexicon(), DefaultGazetteer()));
    c.Ok(subs.status(), "random subgroup references");
    if (subs.ok()) {
      for (const FrequencyRow& r : *subs) WeightedMean(c, r, n_h, n_nh);
    }
  }
}

// 7. Explanation fidelity.
void ExplanationFidelity(Check& c) {
  const StubModel model = LoadStub("stub_model.json");
  std::unique_ptr<Predictor> p = testing::StubPredictor(model);
  absl::StatusOr<LabeledCorpus> corpus =
      LoadDataset(FixturePath("corpus.csv"), DatasetFormat::kCsv);
  c.Ok(corpus.status(), "corpus");
  if (!corpus.ok()) return;
  double abs_err = 0;
  std::size_t count = 0, comments = 0;
  for (const Comment& comment : corpus->comments()) {
    const FeaturizedText f = Featurize(comment.text);
    const std::size_t n = f.features.size();
    if (n == 0 || n > 10) continue;
    ++comments;
    absl::StatusOr<std::vector<TokenValue>> exact = ExactShapley(comment, *p);
    c.Ok(exact.status(), "exact shapley " + comment.id);
    if (!exact.ok()) continue;
    auto value = [&](std::uint32_t mask) {
      std::vector<bool> keep(n);
      for (std::size_t k = 0; k < n; ++k) keep[k] = (mask >> k) & 1u;
      return model.Score(RealizeMask(f, keep));
    };
    double sum = 0;
    for (const TokenValue& t : *exact) sum += t.value;
    c.Near(sum, value((1u << n) - 1) - value(0), 1e-9,
           "efficiency " + comment.id);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        bool symmetric = true;
        for (std::uint32_t s = 0; s < (1u << n) && symmetric; ++s) {
          if ((s >> i) & 1u || (s >> j) & 1u) continue;
          symmetric = value(s | (1u << i)) == value(s | (1u << j));
        }
        if (symmetric) {
          c.Near((*exact)[i].value, (*exact)[j].value, 1e-9,
                 "symmetry " + comment.id);
        }
      }
    }
    absl::StatusOr<std::vector<TokenValue>> sampled =
        SampledShapley(comment, *p, 2000, 7);
    c.Ok(sampled.status(), "sampled shapley " + comment.id);
    if (!sampled.ok() || sampled->size() != exact->size()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      abs_err += std::abs((*exact)[k].value - (*sampled)[k].value);
      ++count;
    }
  }
  c.Expect(comments > 0, "no short fixture comments");
  if (count > 0) {
    c.Expect(abs_err / static_cast<double>(count) <= 0.02,
             "sampled MAE " + std::to_string(abs_err / count));
  }

  std::unique_ptr<Predictor> keyword =
      testing::StubPredictor(testing::KeywordStub("filthy"));
  LocalExplainOptions options;
  options.exhaustive = true;
  options.l2_lambda = 1e-6;
  Comment comment;
  comment.id = "c";
  comment.text = "you filthy liar";
  absl::StatusOr<LocalExplanation> e = LocalExplain(comment, *keyword, options);
  c.Ok(e.status(), "local explain");
  if (e.ok()) {
    bool found = false;
    for (const TokenWeight& w : e->weights) {
      if (w.token != "filthy") continue;
      found = true;
      c.Near(w.weight, 0.8, 1e-3, "keyword weight");
    }
    c.Expect(found, "keyword missing");
  }
}

int RunShell(const std::string& command) {
  const std::string full = "PATH='" + testing::ToolPath("").string() +
                           "':\"$PATH\" " + command + " >/dev/null 2>&1";
  const int rc = std::system(full.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// 8. End-to-end determinism against the committed golden report.
void EndToEnd(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir = testing::ScratchDir("acceptance_e2e");
  const std::string cli = "'" + testing::ToolPath("textaudit").string() + "'";
  const std::string config = "'" + FixturePath("audit.json").string() + "'";
  std::vector<std::string> reports;
  for (const char* run : {"run1", "run2"}) {
    const int rc = RunShell(cli + " audit --config " + config + " --out '" +
                            (dir / run).string() + "'");
    c.Expect(rc == 0, std::string(run) + " exit " + std::to_string(rc));
    absl::StatusOr<std::string> text = ReadFile(dir / run / "report.json");
    c.Ok(text.status(), run);
    reports.push_back(text.ok() ? *text : "");
  }
  c.Expect(!reports[0].empty() && reports[0] == reports[1],
           "runs differ");
  absl::StatusOr<std::string> golden =
      ReadFile(fs::path(TEXTAUDIT_GOLDEN_DIR) / "report.json");
  c.Ok(golden.status(), "golden report");
  if (golden.ok()) c.Expect(*golden == reports[0], "differs from golden");
  fs::remove_all(dir);
  c.Expect(Seconds(start) < 120, "runtime over 2 min");
}

// 9. Template expansion.
void TemplateExpansion(Check& c) {
  const TemplateSet templates = {
      {{"I am a [Identity] person, ask me anything", Label::kNotHateful},
       {"[Identity] people are gross and universally terrible",
        Label::kHateful}}};
  absl::StatusOr<CounterfactualCorpus> cf =
      ExpandTemplates(templates, DefaultLexicon(), "religion",
                      {{"christianity", {"Christian"}}, {"islam", {"Muslim"}}});
  c.Ok(cf.status(), "expand");
  if (!cf.ok()) return;
  const std::vector<std::string> want = {
      "I am a Christian person, ask me anything",
      "I am a Muslim person, ask me anything",
      "Christian people are gross and universally terrible",
      "Muslim people are gross and universally terrible"};
  c.Expect(cf->rows.size() == want.size(), "row count");
  for (std::size_t i = 0; i < cf->rows.size() && i < want.size(); ++i) {
    c.Expect(cf->rows[i].text == want[i], "row " + cf->rows[i].text);
  }
}

// 10. Emissions.
void Emissions(Check& c) {
  absl::StatusOr<EmissionsEstimate> a = EstimateEmissions(1, 10, 1.0, 0.5);
  absl::StatusOr<EmissionsEstimate> b = EstimateEmissions(0.3, 4, 1.58, 0.4);
  c.Ok(a.status(), "case 1");
  c.Ok(b.status(), "case 2");
  if (a.ok()) c.Near(a->co2eq_kg, 5.0, 1e-9, "case 1");
  if (b.ok()) c.Near(b->co2eq_kg, 0.7584, 1e-9, "case 2");
}

int Main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>>
      criteria = {
          {"AC1 oracle equivalence (metrics)", OracleEquivalence},
          {"AC2 embedding-bias properties", EmbeddingProperties},
          {"AC3 counterfactual bias metric", CounterfactualBiasMetric},
          {"AC4 swap correctness", SwapCorrectness},
          {"AC5 favor analysis", FavorAnalysis},
          {"AC6 frequency tables", FrequencyTables},
          {"AC7 explanation fidelity", ExplanationFidelity},
          {"AC8 end-to-end determinism", EndToEnd},
          {"AC9 template expansion", TemplateExpansion},
          {"AC10 emissions", Emissions},
      };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    run(c);
    std::ostringstream line;
    line.precision(3);
    line << (c.passed() ? "[PASS] " : "[FAIL] ") << name << " ("
         << Seconds(start) << " s)" << c.Summary();
    std::cout << line.str() << "\n";
    if (!c.passed()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace textaudit

int main() { return textaudit::Main(); }
