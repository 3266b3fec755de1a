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

#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"
#include "textaudit/explain.h"
#include "textaudit/io.h"

namespace textaudit {
namespace {

using testing::FunctionPredictor;
using testing::KeywordStub;
using testing::StubPredictor;

Comment C(std::string text, std::string id = "c") {
  Comment c;
  c.id = std::move(id);
  c.text = std::move(text);
  return c;
}

StubModel FixtureModel() {
  absl::StatusOr<std::string> text =
      ReadFile(testing::FixturePath("stub_model.json"));
  return *StubModel::FromJson(nlohmann::json::parse(*text));
}

// Fixture comments with at most `max_features` unique tokens.
std::vector<Comment> ShortFixtureComments(std::size_t max_features) {
  absl::StatusOr<LabeledCorpus> corpus = LoadDataset(
      testing::FixturePath("corpus.csv"), DatasetFormat::kCsv);
  std::vector<Comment> out;
  for (const Comment& c : corpus->comments()) {
    const std::size_t n = Featurize(c.text).features.size();
    if (n >= 1 && n <= max_features) out.push_back(c);
  }
  return out;
}

TEST(FeaturizeTest, UniqueTokensTied) {
  const FeaturizedText f = Featurize("You filthy liar, you!");
  EXPECT_EQ(f.features, (std::vector<std::string>{"you", "filthy", "liar"}));
  EXPECT_EQ(f.occurrences[0], (std::vector<std::size_t>{0, 3}));
}

TEST(RealizeMaskTest, DeletesTokensAndTheirSpacing) {
  const FeaturizedText f = Featurize("you filthy liar, you!");
  EXPECT_EQ(RealizeMask(f, {true, true, true}), "you filthy liar, you!");
  EXPECT_EQ(RealizeMask(f, {true, false, true}), "you liar, you!");
  EXPECT_EQ(RealizeMask(f, {false, true, true}), "filthy liar,!");
  EXPECT_EQ(RealizeMask(f, {false, false, false}), ",!");
}

TEST(LocalExplainTest, RecoversKeywordWeight) {
  std::unique_ptr<Predictor> p = StubPredictor(KeywordStub("filthy"));
  LocalExplainOptions options;
  options.exhaustive = true;
  options.l2_lambda = 1e-6;
  absl::StatusOr<LocalExplanation> e =
      LocalExplain(C("you filthy liar"), *p, options);
  ASSERT_TRUE(e.ok()) << e.status();
  ASSERT_EQ(e->weights.size(), 3u);
  EXPECT_EQ(e->n_samples, 8);
  EXPECT_EQ(e->weights[1].token, "filthy");
  EXPECT_NEAR(e->weights[1].weight, 0.8, 1e-3);
  EXPECT_NEAR(e->weights[0].weight, 0.0, 1e-3);
  EXPECT_NEAR(e->weights[2].weight, 0.0, 1e-3);
  EXPECT_NEAR(e->p_full, 0.9, 1e-15);
  EXPECT_GT(e->surrogate_fit_r2, 0.999);
}

TEST(LocalExplainTest, ConstantModelGivesZeroWeights) {
  std::unique_ptr<Predictor> p =
      FunctionPredictor([](const std::string&) { return 0.5; });
  LocalExplainOptions options;
  options.rng_seed = 3;
  absl::StatusOr<LocalExplanation> e =
      LocalExplain(C("a perfectly ordinary comment here"), *p, options);
  ASSERT_TRUE(e.ok()) << e.status();
  for (const TokenWeight& w : e->weights) EXPECT_NEAR(w.weight, 0.0, 1e-9);
  EXPECT_NEAR(e->intercept, 0.5, 1e-9);
  EXPECT_EQ(e->n_samples, 512);
}

TEST(LocalExplainTest, DeterministicForSeed) {
  std::unique_ptr<Predictor> p = StubPredictor(FixtureModel());
  LocalExplainOptions options;
  options.rng_seed = 99;
  options.n_samples = 64;
  const Comment c = C("those vermin are disgusting trash and idiots", "x1");
  absl::StatusOr<LocalExplanation> a = LocalExplain(c, *p, options);
  absl::StatusOr<LocalExplanation> b = LocalExplain(c, *p, options);
  ASSERT_TRUE(a.ok()) << a.status();
  EXPECT_EQ(ToJson(*a).dump(), ToJson(*b).dump());
  options.rng_seed = 100;
  absl::StatusOr<LocalExplanation> other = LocalExplain(c, *p, options);
  ASSERT_TRUE(other.ok());
  EXPECT_NE(ToJson(*a).dump(), ToJson(*other).dump());
}

// An exactly linear model in the unclipped regime is recovered.
TEST(LocalExplainTest, RecoversLinearModel) {
  StubModel linear;
  linear.base = 0.3;
  linear.weights = {{"alpha", 0.1}, {"beta", 0.25}, {"gamma", -0.2},
                    {"delta", 0.05}};
  std::unique_ptr<Predictor> p = StubPredictor(linear);
  LocalExplainOptions options;
  options.exhaustive = true;
  options.l2_lambda = 1e-9;
  absl::StatusOr<LocalExplanation> e =
      LocalExplain(C("alpha beta gamma delta epsilon"), *p, options);
  ASSERT_TRUE(e.ok()) << e.status();
  const std::vector<double> beta = {0.1, 0.25, -0.2, 0.05, 0.0};
  for (std::size_t i = 0; i < beta.size(); ++i) {
    EXPECT_NEAR(e->weights[i].weight, beta[i], 1e-3) << e->weights[i].token;
  }
  EXPECT_NEAR(e->intercept, 0.3, 1e-3);
}

TEST(LocalExplainTest, Errors) {
  std::unique_ptr<Predictor> p = StubPredictor(KeywordStub("x"));
  LocalExplainOptions options;
  options.n_samples = 3;
  EXPECT_FALSE(LocalExplain(C("one two three"), *p, options).ok());
  EXPECT_FALSE(LocalExplain(C("!!!"), *p, LocalExplainOptions()).ok());
  options = LocalExplainOptions();
  options.kernel_width = 0;
  EXPECT_FALSE(LocalExplain(C("one two"), *p, options).ok());

  const LabeledCorpus corpus = testing::MakeCorpus({{"one two", 0}});
  Predictor offline(AdapterConfig{}, MakePredictionsBackend(corpus, {}));
  EXPECT_FALSE(LocalExplain(corpus.comments()[0], offline, {}).ok());
}

TEST(ExactShapleyTest, KeywordIsTheOnlyContributor) {
  std::unique_ptr<Predictor> p = StubPredictor(KeywordStub("filthy"));
  absl::StatusOr<std::vector<TokenValue>> v =
      ExactShapley(C("you filthy liar"), *p);
  ASSERT_TRUE(v.ok()) << v.status();
  ASSERT_EQ(v->size(), 3u);
  EXPECT_NEAR((*v)[0].value, 0.0, 1e-12);
  EXPECT_NEAR((*v)[1].value, 0.8, 1e-12);
  EXPECT_NEAR((*v)[2].value, 0.0, 1e-12);
}

TEST(ExactShapleyTest, SymmetricOrPlayers) {
  std::unique_ptr<Predictor> p = FunctionPredictor([](const std::string& t) {
    const FeaturizedText f = Featurize(t);
    for (const std::string& tok : f.features) {
      if (tok == "a" || tok == "b") return 0.7;
    }
    return 0.2;
  });
  absl::StatusOr<std::vector<TokenValue>> v = ExactShapley(C("a x b y"), *p);
  ASSERT_TRUE(v.ok());
  EXPECT_NEAR((*v)[0].value, (*v)[2].value, 1e-9);
  EXPECT_NEAR((*v)[0].value, 0.25, 1e-12);
  EXPECT_NEAR((*v)[1].value, 0.0, 1e-12);
}

TEST(ExactShapleyTest, TokenLimit) {
  std::unique_ptr<Predictor> p = StubPredictor(KeywordStub("x"));
  std::string text;
  for (std::size_t i = 0; i <= kMaxExactShapleyTokens; ++i) {
    text += "w" + std::to_string(i) + " ";
  }
  EXPECT_FALSE(ExactShapley(C(text), *p).ok());
}

// Efficiency and symmetry on every short fixture comment. Symmetry is
// checked directly from its definition: players i and j with
// v(S + i) = v(S + j) for every S excluding both must get equal values.
TEST(ExactShapleyProperty, AxiomsOnFixtureComments) {
  const StubModel model = FixtureModel();
  std::unique_ptr<Predictor> p = StubPredictor(model);
  const std::vector<Comment> comments = ShortFixtureComments(10);
  ASSERT_GE(comments.size(), 5u);
  for (const Comment& c : comments) {
    absl::StatusOr<std::vector<TokenValue>> v = ExactShapley(c, *p);
    ASSERT_TRUE(v.ok()) << v.status();
    const FeaturizedText f = Featurize(c.text);
    const std::size_t n = f.features.size();
    auto value = [&](std::uint32_t mask) {
      std::vector<bool> keep(n);
      for (std::size_t k = 0; k < n; ++k) keep[k] = (mask >> k) & 1u;
      return model.Score(RealizeMask(f, keep));
    };
    double sum = 0;
    for (const TokenValue& t : *v) sum += t.value;
    EXPECT_NEAR(sum, value((1u << n) - 1) - value(0), 1e-9) << c.id;

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        bool symmetric = true;
        for (std::uint32_t s = 0; s < (1u << n) && symmetric; ++s) {
          if ((s >> i) & 1u || (s >> j) & 1u) continue;
          symmetric = value(s | (1u << i)) == value(s | (1u << j));
        }
        if (symmetric) {
          EXPECT_NEAR((*v)[i].value, (*v)[j].value, 1e-9)
              << c.id << " " << f.features[i] << " " << f.features[j];
        }
      }
    }
  }
}

TEST(SampledShapleyProperty, ConvergesToExact) {
  std::unique_ptr<Predictor> p = StubPredictor(FixtureModel());
  double abs_err = 0;
  std::size_t count = 0;
  for (const Comment& c : ShortFixtureComments(10)) {
    absl::StatusOr<std::vector<TokenValue>> exact = ExactShapley(c, *p);
    absl::StatusOr<std::vector<TokenValue>> sampled =
        SampledShapley(c, *p, 2000, 7);
    ASSERT_TRUE(exact.ok() && sampled.ok());
    ASSERT_EQ(exact->size(), sampled->size());
    for (std::size_t k = 0; k < exact->size(); ++k) {
      abs_err += std::abs((*exact)[k].value - (*sampled)[k].value);
      ++count;
    }
  }
  ASSERT_GT(count, 0u);
  EXPECT_LE(abs_err / static_cast<double>(count), 0.02);
}

TEST(SampledShapleyTest, MaxTokensLimitsPlayers) {
  std::unique_ptr<Predictor> p = StubPredictor(KeywordStub("filthy"));
  absl::StatusOr<std::vector<TokenValue>> v =
      SampledShapley(C("you are a filthy liar"), *p, 50, 1, 2);
  ASSERT_TRUE(v.ok()) << v.status();
  ASSERT_EQ(v->size(), 2u);
  // "filthy" stays present, so neither player changes the score.
  EXPECT_EQ((*v)[0].value, 0.0);
  EXPECT_EQ((*v)[1].value, 0.0);
  EXPECT_FALSE(SampledShapley(C("a b"), *p, 0, 1).ok());
}

LabeledCorpus KeywordCorpus() {
  return testing::MakeCorpus({{"you filthy liar", 1},
                              {"what a lovely day", 0},
                              {"filthy filthy habits", 1},
                              {"I like trains", 0},
                              {"the filthy rich", 0},
                              {"go home now", 0},
                              {"this is filthy", 1},
                              {"nothing to see", 0},
                              {"a filthy lie", 1},
                              {"see you soon", 0}});
}

TEST(GlobalImportanceTest, OcclusionFindsKeyword) {
  std::unique_ptr<Predictor> p = StubPredictor(KeywordStub("filthy"));
  absl::StatusOr<GlobalImportance> g = ComputeGlobalImportance(
      KeywordCorpus(), *p, ImportanceMethod::kOcclusion, 0, 0, 1);
  ASSERT_TRUE(g.ok()) << g.status();
  ASSERT_FALSE(g->rows.empty());
  EXPECT_EQ(g->rows[0].token, "filthy");
  EXPECT_NEAR(g->rows[0].mean_effect, 0.8, 1e-6);
  EXPECT_EQ(g->rows[0].support, 5u);
  for (std::size_t i = 1; i < g->rows.size(); ++i) {
    EXPECT_EQ(g->rows[i].mean_abs_effect, 0.0);
    EXPECT_GE(g->rows[i].support, 1u);
    EXPECT_GE(g->rows[i - 1].mean_abs_effect, g->rows[i].mean_abs_effect);
  }
  const std::string csv = GlobalImportanceCsv(*g);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "token,mean_effect,mean_abs_effect,support");
}

TEST(GlobalImportanceTest, SampledShapleyFindsKeyword) {
  std::unique_ptr<Predictor> p = StubPredictor(KeywordStub("filthy"));
  absl::StatusOr<GlobalImportance> g = ComputeGlobalImportance(
      KeywordCorpus(), *p, ImportanceMethod::kSampledShapley, 20, 8, 5);
  ASSERT_TRUE(g.ok()) << g.status();
  EXPECT_EQ(g->rows[0].token, "filthy");
  EXPECT_NEAR(g->rows[0].mean_effect, 0.8, 1e-12);
  EXPECT_EQ(ToJson(*g)["method"], "sampled_shapley");
}

TEST(GlobalImportanceTest, ConstantModelAndDuplicates) {
  std::unique_ptr<Predictor> flat =
      FunctionPredictor([](const std::string&) { return 0.4; });
  absl::StatusOr<GlobalImportance> g = ComputeGlobalImportance(
      KeywordCorpus(), *flat, ImportanceMethod::kOcclusion, 0, 0, 1);
  ASSERT_TRUE(g.ok());
  for (const ImportanceRow& r : g->rows) EXPECT_EQ(r.mean_effect, 0.0);

  // Duplicating every comment leaves the means unchanged.
  std::vector<std::pair<std::string, int>> doubled;
  const LabeledCorpus base = KeywordCorpus();
  for (const Comment& c : base.comments()) {
    doubled.emplace_back(c.text, LabelValue(c.label));
    doubled.emplace_back(c.text, LabelValue(c.label));
  }
  std::unique_ptr<Predictor> p = StubPredictor(FixtureModel());
  absl::StatusOr<GlobalImportance> once = ComputeGlobalImportance(
      KeywordCorpus(), *p, ImportanceMethod::kOcclusion, 0, 0, 1);
  absl::StatusOr<GlobalImportance> twice = ComputeGlobalImportance(
      testing::MakeCorpus(doubled), *p, ImportanceMethod::kOcclusion, 0, 0, 1);
  ASSERT_TRUE(once.ok() && twice.ok());
  ASSERT_EQ(once->rows.size(), twice->rows.size());
  for (std::size_t i = 0; i < once->rows.size(); ++i) {
    EXPECT_EQ(once->rows[i].token, twice->rows[i].token);
    EXPECT_NEAR(once->rows[i].mean_effect, twice->rows[i].mean_effect, 1e-15);
    EXPECT_EQ(2 * once->rows[i].support, twice->rows[i].support);
  }
}

TEST(ImportanceMethodTest, Names) {
  EXPECT_EQ(*ParseImportanceMethod("occlusion"), ImportanceMethod::kOcclusion);
  EXPECT_EQ(*ParseImportanceMethod("sampled_shapley"),
            ImportanceMethod::kSampledShapley);
  EXPECT_FALSE(ParseImportanceMethod("lime").ok());
}

}  // namespace
}  // namespace textaudit
