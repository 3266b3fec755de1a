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

#include "textaudit/explain.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <unordered_map>
#include <utility>

#include <Eigen/Dense>

#include "textaudit/csv.h"
#include "textaudit/random.h"
#include "textaudit/strings.h"

namespace textaudit {
namespace {

using json = nlohmann::json;

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

absl::Status RequireLive(const Predictor& predictor) {
  if (!predictor.serves_novel_texts()) {
    return absl::FailedPreconditionError(
        "explanations need a live model adapter; a predictions file cannot "
        "score perturbed texts");
  }
  return absl::OkStatus();
}

// Scores each distinct mask once; result is aligned with `masks`.
absl::StatusOr<std::vector<double>> ScoreMasks(
    const FeaturizedText& f, const std::vector<std::vector<bool>>& masks,
    Predictor& predictor) {
  std::map<std::vector<bool>, std::size_t> slot;
  std::vector<std::string> texts;
  std::vector<std::size_t> index;
  index.reserve(masks.size());
  for (const std::vector<bool>& m : masks) {
    auto [it, inserted] = slot.emplace(m, texts.size());
    if (inserted) texts.push_back(RealizeMask(f, m));
    index.push_back(it->second);
  }
  absl::StatusOr<std::vector<double>> unique = predictor.PredictBatch(texts);
  if (!unique.ok()) return unique.status();
  std::vector<double> out;
  out.reserve(masks.size());
  for (std::size_t i : index) out.push_back((*unique)[i]);
  return out;
}

// Player coalition bits -> keep flags; non-players are always kept.
std::vector<bool> CoalitionMask(std::size_t n_features, std::size_t n_players,
                                std::uint64_t bits) {
  std::vector<bool> keep(n_features, true);
  for (std::size_t i = 0; i < n_players; ++i) keep[i] = (bits >> i) & 1;
  return keep;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

FeaturizedText Featurize(std::string_view text, const Tokenizer& tokenizer) {
  FeaturizedText f;
  f.text = std::string(text);
  f.spans = tokenizer.Tokenize(text);
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < f.spans.size(); ++i) {
    auto [it, inserted] = seen.emplace(f.spans[i].token, f.features.size());
    if (inserted) {
      f.features.push_back(f.spans[i].token);
      f.occurrences.emplace_back();
    }
    f.occurrences[it->second].push_back(i);
  }
  return f;
}

std::string RealizeMask(const FeaturizedText& f, const std::vector<bool>& keep) {
  std::vector<bool> drop_span(f.spans.size(), false);
  for (std::size_t k = 0; k < f.features.size() && k < keep.size(); ++k) {
    if (keep[k]) continue;
    for (std::size_t s : f.occurrences[k]) drop_span[s] = true;
  }
  const std::string& text = f.text;
  std::string out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < f.spans.size(); ++i) {
    if (!drop_span[i]) continue;
    std::size_t begin = f.spans[i].start;
    std::size_t end = f.spans[i].end;
    while (begin > cursor && IsAsciiSpace(text[begin - 1])) --begin;
    if (begin == f.spans[i].start) {
      while (end < text.size() && IsAsciiSpace(text[end])) ++end;
    }
    out.append(text, cursor, begin - cursor);
    cursor = end;
  }
  out.append(text, cursor, std::string::npos);
  return out;
}

// ---------------------------------------------------------------------------

absl::StatusOr<LocalExplanation> LocalExplain(
    const Comment& comment, Predictor& predictor,
    const LocalExplainOptions& options, const Tokenizer& tokenizer) {
  if (absl::Status s = RequireLive(predictor); !s.ok()) return s;
  if (!(options.kernel_width > 0)) {
    return absl::InvalidArgumentError("kernel_width must be positive");
  }
  if (options.l2_lambda < 0) {
    return absl::InvalidArgumentError("l2_lambda must be non-negative");
  }
  const FeaturizedText f = Featurize(comment.text, tokenizer);
  const std::size_t n = f.features.size();
  if (n == 0) {
    return absl::InvalidArgumentError(
        StrCat("comment \"", comment.id, "\" has no tokens to explain"));
  }

  std::vector<std::vector<bool>> masks;
  if (options.exhaustive) {
    if (n > 20) {
      return absl::InvalidArgumentError(
          StrCat("exhaustive masks need at most 20 unique tokens, got ", n));
    }
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = count; k-- > 0;) {
      masks.push_back(CoalitionMask(n, n, k));
    }
  } else {
    const std::size_t samples =
        options.n_samples > 0 ? static_cast<std::size_t>(options.n_samples)
                              : std::max<std::size_t>(512, 8 * n);
    if (samples < n + 1) {
      return absl::InvalidArgumentError(
          StrCat("n_samples ", samples, " is below unique tokens + 1 (", n + 1,
                 ")"));
    }
    std::mt19937_64 rng(DeriveSeed(options.rng_seed, comment.id));
    masks.emplace_back(n, true);
    while (masks.size() < samples) {
      std::vector<bool> m(n);
      for (std::size_t k = 0; k < n; ++k) m[k] = FairCoin(rng);
      masks.push_back(std::move(m));
    }
  }
  if (std::all_of(masks.begin(), masks.end(),
                  [&](const std::vector<bool>& m) { return m == masks[0]; })) {
    return absl::FailedPreconditionError(
        "degenerate design: every sampled mask is identical");
  }

  absl::StatusOr<std::vector<double>> y = ScoreMasks(f, masks, predictor);
  if (!y.ok()) return Annotate(y.status(), "scoring perturbed texts");

  const std::size_t rows = masks.size();
  Eigen::MatrixXd x(rows, n);
  Eigen::VectorXd yv(rows);
  Eigen::VectorXd w(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t on = 0;
    for (std::size_t k = 0; k < n; ++k) {
      x(r, k) = masks[r][k] ? 1.0 : 0.0;
      on += masks[r][k];
    }
    yv(r) = (*y)[r];
    const double d = 1.0 - std::sqrt(static_cast<double>(on) / n);
    w(r) = std::exp(-(d * d) / (options.kernel_width * options.kernel_width));
  }
  const double wsum = w.sum();
  const Eigen::RowVectorXd xbar = (w.transpose() * x) / wsum;
  const double ybar = w.dot(yv) / wsum;
  const Eigen::MatrixXd xc = x.rowwise() - xbar;
  const Eigen::VectorXd yc = yv.array() - ybar;
  Eigen::MatrixXd a = xc.transpose() * w.asDiagonal() * xc;
  a.diagonal().array() += options.l2_lambda;
  const Eigen::VectorXd b = xc.transpose() * w.asDiagonal() * yc;
  const Eigen::VectorXd beta = a.ldlt().solve(b);
  if (!beta.allFinite()) {
    return absl::FailedPreconditionError(
        "surrogate fit is singular; raise l2_lambda or n_samples");
  }
  const double intercept = ybar - xbar.dot(beta);
  const Eigen::VectorXd resid = yc - xc * beta;
  const double ss_res = (w.array() * resid.array().square()).sum();
  const double ss_tot = (w.array() * yc.array().square()).sum();

  LocalExplanation e;
  e.comment_id = comment.id;
  for (std::size_t k = 0; k < n; ++k) {
    e.weights.push_back({f.features[k], beta(k)});
  }
  e.intercept = intercept;
  e.surrogate_fit_r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  e.p_full = (*y)[0];
  e.n_samples = static_cast<int>(rows);
  e.kernel_width = options.kernel_width;
  e.l2_lambda = options.l2_lambda;
  e.rng_seed = options.rng_seed;
  e.exhaustive = options.exhaustive;
  return e;
}

// ---------------------------------------------------------------------------

absl::StatusOr<std::vector<TokenValue>> ExactShapley(
    const Comment& comment, Predictor& predictor, const Tokenizer& tokenizer) {
  if (absl::Status s = RequireLive(predictor); !s.ok()) return s;
  const FeaturizedText f = Featurize(comment.text, tokenizer);
  const std::size_t n = f.features.size();
  if (n > kMaxExactShapleyTokens) {
    return absl::InvalidArgumentError(
        StrCat("exact Shapley supports at most ", kMaxExactShapleyTokens,
               " unique tokens, comment \"", comment.id, "\" has ", n));
  }
  std::vector<TokenValue> out;
  if (n == 0) return out;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::vector<bool>> masks;
  masks.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) masks.push_back(CoalitionMask(n, n, k));
  absl::StatusOr<std::vector<double>> v = ScoreMasks(f, masks, predictor);
  if (!v.ok()) return Annotate(v.status(), "scoring coalitions");

  // weight[s] = s! (n - s - 1)! / n!
  std::vector<double> weight(n);
  for (std::size_t s = 0; s < n; ++s) {
    double wgt = 1.0 / n;
    // 1 / (n * C(n-1, s))
    for (std::size_t j = 1; j <= s; ++j) {
      wgt *= static_cast<double>(j) / static_cast<double>(n - j);
    }
    weight[s] = wgt;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double phi = 0;
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t k = 0; k < count; ++k) {
      if (k & bit) continue;
      const std::size_t size = static_cast<std::size_t>(__builtin_popcountll(k));
      phi += weight[size] * ((*v)[k | bit] - (*v)[k]);
    }
    out.push_back({f.features[i], phi});
  }
  return out;
}

absl::StatusOr<std::vector<TokenValue>> SampledShapley(
    const Comment& comment, Predictor& predictor, int m_permutations,
    std::uint64_t rng_seed, int max_tokens, const Tokenizer& tokenizer) {
  if (absl::Status s = RequireLive(predictor); !s.ok()) return s;
  if (m_permutations < 1) {
    return absl::InvalidArgumentError("m_permutations must be at least 1");
  }
  const FeaturizedText f = Featurize(comment.text, tokenizer);
  std::size_t players = f.features.size();
  if (max_tokens > 0) {
    players = std::min(players, static_cast<std::size_t>(max_tokens));
  }
  if (players > 64) {
    return absl::InvalidArgumentError(
        StrCat("comment \"", comment.id, "\" has ", players,
               " tokens; sampled Shapley needs max_tokens <= 64"));
  }
  std::vector<TokenValue> out;
  if (players == 0) return out;

  std::mt19937_64 rng(DeriveSeed(rng_seed, comment.id));
  std::vector<std::vector<std::size_t>> orders(m_permutations);
  std::map<std::uint64_t, std::size_t> slot;
  std::vector<std::vector<bool>> masks;
  auto note = [&](std::uint64_t bits) {
    if (slot.emplace(bits, masks.size()).second) {
      masks.push_back(CoalitionMask(f.features.size(), players, bits));
    }
  };
  note(0);
  for (auto& order : orders) {
    order.resize(players);
    for (std::size_t i = 0; i < players; ++i) order[i] = i;
    Shuffle(order, rng);
    std::uint64_t bits = 0;
    for (std::size_t i : order) {
      bits |= std::uint64_t{1} << i;
      note(bits);
    }
  }
  absl::StatusOr<std::vector<double>> v = ScoreMasks(f, masks, predictor);
  if (!v.ok()) return Annotate(v.status(), "scoring coalitions");

  std::vector<double> phi(players, 0.0);
  for (const auto& order : orders) {
    std::uint64_t bits = 0;
    double prev = (*v)[slot.at(0)];
    for (std::size_t i : order) {
      bits |= std::uint64_t{1} << i;
      const double cur = (*v)[slot.at(bits)];
      phi[i] += cur - prev;
      prev = cur;
    }
  }
  for (std::size_t i = 0; i < players; ++i) {
    out.push_back({f.features[i], phi[i] / m_permutations});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view ImportanceMethodName(ImportanceMethod method) {
  return method == ImportanceMethod::kOcclusion ? "occlusion"
                                                : "sampled_shapley";
}

absl::StatusOr<ImportanceMethod> ParseImportanceMethod(std::string_view name) {
  if (name == "occlusion") return ImportanceMethod::kOcclusion;
  if (name == "sampled_shapley") return ImportanceMethod::kSampledShapley;
  return absl::InvalidArgumentError(
      StrCat("unknown importance method \"", name,
             "\" (expected occlusion or sampled_shapley)"));
}

absl::StatusOr<GlobalImportance> ComputeGlobalImportance(
    const LabeledCorpus& corpus, Predictor& predictor, ImportanceMethod method,
    int m_permutations, int max_tokens_per_comment, std::uint64_t rng_seed,
    const Tokenizer& tokenizer) {
  if (absl::Status s = RequireLive(predictor); !s.ok()) return s;
  if (corpus.empty()) return absl::FailedPreconditionError("corpus is empty");
  if (max_tokens_per_comment < 0) {
    return absl::InvalidArgumentError("max_tokens_per_comment must be >= 0");
  }
  struct Acc {
    double sum = 0;
    double abs_sum = 0;
    std::size_t support = 0;
  };
  std::map<std::string, Acc> acc;
  for (const Comment& c : corpus.comments()) {
    std::vector<TokenValue> effects;
    if (method == ImportanceMethod::kSampledShapley) {
      absl::StatusOr<std::vector<TokenValue>> v =
          SampledShapley(c, predictor, m_permutations, rng_seed,
                         max_tokens_per_comment, tokenizer);
      if (!v.ok()) return Annotate(v.status(), StrCat("comment \"", c.id, "\""));
      effects = *std::move(v);
    } else {
      const FeaturizedText f = Featurize(c.text, tokenizer);
      std::size_t players = f.features.size();
      if (max_tokens_per_comment > 0) {
        players = std::min<std::size_t>(players, max_tokens_per_comment);
      }
      std::vector<std::vector<bool>> masks;
      masks.emplace_back(f.features.size(), true);
      for (std::size_t k = 0; k < players; ++k) {
        masks.emplace_back(f.features.size(), true);
        masks.back()[k] = false;
      }
      absl::StatusOr<std::vector<double>> p = ScoreMasks(f, masks, predictor);
      if (!p.ok()) return Annotate(p.status(), StrCat("comment \"", c.id, "\""));
      for (std::size_t k = 0; k < players; ++k) {
        effects.push_back({f.features[k], (*p)[0] - (*p)[k + 1]});
      }
    }
    for (const TokenValue& e : effects) {
      Acc& a = acc[e.token];
      a.sum += e.value;
      a.abs_sum += std::abs(e.value);
      ++a.support;
    }
  }
  GlobalImportance g;
  g.method = method;
  g.rng_seed = rng_seed;
  g.m_permutations =
      method == ImportanceMethod::kSampledShapley ? m_permutations : 0;
  g.max_tokens_per_comment = max_tokens_per_comment;
  for (const auto& [token, a] : acc) {
    g.rows.push_back({token, a.sum / a.support, a.abs_sum / a.support,
                      a.support});
  }
  std::stable_sort(g.rows.begin(), g.rows.end(),
                   [](const ImportanceRow& l, const ImportanceRow& r) {
                     return l.mean_abs_effect > r.mean_abs_effect;
                   });
  return g;
}

// ---------------------------------------------------------------------------

json ToJson(const LocalExplanation& e) {
  json weights = json::array();
  for (const TokenWeight& w : e.weights) {
    weights.push_back(json{{"token", w.token}, {"weight", w.weight}});
  }
  return json{{"comment_id", e.comment_id},
              {"weights", std::move(weights)},
              {"intercept", e.intercept},
              {"surrogate_fit_r2", e.surrogate_fit_r2},
              {"p_full", e.p_full},
              {"n_samples", e.n_samples},
              {"kernel_width", e.kernel_width},
              {"l2_lambda", e.l2_lambda},
              {"rng_seed", e.rng_seed},
              {"exhaustive", e.exhaustive}};
}

json ToJson(const GlobalImportance& g) {
  json rows = json::array();
  for (const ImportanceRow& r : g.rows) {
    rows.push_back(json{{"token", r.token},
                        {"mean_effect", r.mean_effect},
                        {"mean_abs_effect", r.mean_abs_effect},
                        {"support", r.support}});
  }
  return json{{"method", ImportanceMethodName(g.method)},
              {"rng_seed", g.rng_seed},
              {"m_permutations", g.m_permutations},
              {"max_tokens_per_comment", g.max_tokens_per_comment},
              {"rows", std::move(rows)}};
}

std::string GlobalImportanceCsv(const GlobalImportance& g) {
  std::string out = FormatCsvRow({"token", "mean_effect", "mean_abs_effect",
                                  "support"});
  for (const ImportanceRow& r : g.rows) {
    out += FormatCsvRow({r.token, FormatDouble(r.mean_effect),
                         FormatDouble(r.mean_abs_effect),
                         std::to_string(r.support)});
  }
  return out;
}

}  // namespace textaudit
