// Copyright 2026 The HaloGraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "halograph/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "halograph/errors.hpp"
#include "halograph/sentence_uncertainty.hpp"

namespace halograph {
namespace {

void check_pairs(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ContractViolation(std::string(what) + ": length mismatch");
}

std::pair<std::size_t, std::size_t> class_counts(std::span<const int> labels) {
  std::size_t pos = 0;
  for (int l : labels) pos += (l == 1);
  return {pos, labels.size() - pos};
}

template <typename Fn>
std::optional<double> guarded(Fn&& fn, const std::string& name, std::vector<std::string>& notes) {
  try {
    return fn();
  } catch (const UndefinedMetricError& e) {
    notes.push_back(name + ": " + e.what());
    return std::nullopt;
  }
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v * 100.0);
  return buf;
}

}  // namespace

double project(double score, const ProjectionSpec& spec) {
  if (!std::isfinite(score) || score < 0.0)
    throw ContractViolation("project: score must be finite and >= 0");
  switch (spec.kind) {
    case ProjectionKind::kInverse:
      return score / (1.0 + score);
    case ProjectionKind::kSigmoid:
      return 2.0 * (1.0 / (1.0 + std::exp(-score)) - 0.5);
    case ProjectionKind::kLogistic:
      return 1.0 / (1.0 + std::exp(-(score - spec.mu) / spec.tau));
  }
  return score;
}

ProjectionSpec make_projection(ProjectionKind kind, std::optional<double> mu, double tau,
                               std::span<const double> corpus) {
  ProjectionSpec spec{kind, 0.0, tau};
  if (kind == ProjectionKind::kLogistic) {
    if (mu) {
      spec.mu = *mu;
    } else if (!corpus.empty()) {
      spec.mu = quantile(corpus, 0.5);
    }
  }
  return spec;
}

std::string_view to_string(LabelSetup setup) {
  switch (setup) {
    case LabelSetup::kNonFact: return "NonFact";
    case LabelSetup::kNonFactStar: return "NonFact*";
    case LabelSetup::kFactual: return "Factual";
  }
  return "?";
}

LabelMapping map_labels(LabelSetup setup, std::span<const double> labels) {
  LabelMapping out;
  out.invert_scores = setup == LabelSetup::kFactual;
  out.binary.reserve(labels.size());
  for (double l : labels) {
    if (l != 0.0 && l != 0.5 && l != 1.0)
      throw DataError("label " + std::to_string(l) + " is not one of 0, 0.5, 1");
    switch (setup) {
      case LabelSetup::kNonFact: out.binary.push_back(l > 0.0 ? 1 : 0); break;
      case LabelSetup::kNonFactStar: out.binary.push_back(l == 1.0 ? 1 : 0); break;
      case LabelSetup::kFactual: out.binary.push_back(l == 0.0 ? 1 : 0); break;
    }
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (double(i) + double(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  check_pairs(scores.size(), labels.size(), "roc_auc");
  const auto [pos, neg] = class_counts(labels);
  if (pos == 0 || neg == 0) throw UndefinedMetricError("AUC needs both classes present");
  const auto ranks = average_ranks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) rank_sum += ranks[i];
  }
  const double u = rank_sum - double(pos) * double(pos + 1) / 2.0;
  return u / (double(pos) * double(neg));
}

double pr_auc(std::span<const double> scores, std::span<const int> labels) {
  check_pairs(scores.size(), labels.size(), "pr_auc");
  const auto [pos, neg] = class_counts(labels);
  if (pos == 0 || neg == 0) throw UndefinedMetricError("AUC needs both classes present");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  double ap = 0.0;
  std::size_t tp = 0;
  std::size_t seen = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t group_tp = 0;
    std::size_t j = i;
    for (; j < order.size() && scores[order[j]] == scores[order[i]]; ++j)
      group_tp += (labels[order[j]] == 1);
    tp += group_tp;
    seen += j - i;
    ap += (double(group_tp) / double(pos)) * (double(tp) / double(seen));
    i = j;
  }
  return ap;
}

double auc(AucKind kind, std::span<const double> scores, std::span<const int> labels) {
  return kind == AucKind::kRoc ? roc_auc(scores, labels) : pr_auc(scores, labels);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pairs(x.size(), y.size(), "pearson");
  if (x.size() < 2) throw ContractViolation("pearson: need at least two points");
  const double n = double(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedMetricError("correlation of a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pairs(x.size(), y.size(), "spearman");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

EvalResult evaluate(std::span<const double> sentence_scores,
                    std::span<const double> sentence_labels,
                    std::span<const double> passage_scores,
                    std::span<const double> passage_human_scores, AucKind kind) {
  check_pairs(sentence_scores.size(), sentence_labels.size(), "evaluate");
  check_pairs(passage_scores.size(), passage_human_scores.size(), "evaluate");
  EvalResult r;
  auto setup_auc = [&](LabelSetup setup) {
    const LabelMapping mapping = map_labels(setup, sentence_labels);
    std::vector<double> scores(sentence_scores.begin(), sentence_scores.end());
    if (mapping.invert_scores) {
      for (double& s : scores) s = 1.0 - s;
    }
    return auc(kind, scores, mapping.binary);
  };
  r.auc_nonfact = guarded([&] { return setup_auc(LabelSetup::kNonFact); }, "auc_nonfact", r.undefined);
  r.auc_nonfact_star =
      guarded([&] { return setup_auc(LabelSetup::kNonFactStar); }, "auc_nonfact_star", r.undefined);
  r.auc_factual = guarded([&] { return setup_auc(LabelSetup::kFactual); }, "auc_factual", r.undefined);
  auto correlation = [&](auto fn) {
    if (passage_scores.size() < 2) throw UndefinedMetricError("fewer than two passages");
    return fn(passage_scores, passage_human_scores);
  };
  r.pearson = guarded([&] { return correlation(pearson); }, "pearson", r.undefined);
  r.spearman = guarded([&] { return correlation(spearman); }, "spearman", r.undefined);
  return r;
}

nlohmann::json eval_result_to_json(const EvalResult& result) {
  auto value = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return {{"auc_nonfact", value(result.auc_nonfact)},
          {"auc_nonfact_star", value(result.auc_nonfact_star)},
          {"auc_factual", value(result.auc_factual)},
          {"pearson", value(result.pearson)},
          {"spearman", value(result.spearman)},
          {"undefined", result.undefined}};
}

std::string format_eval_table(std::span<const NamedEvalResult> rows) {
  std::size_t name_width = 6;
  for (const auto& row : rows) name_width = std::max(name_width, row.name.size());
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-*s %9s %9s %9s %9s %9s\n", int(name_width), "method",
                "NonFact", "NonFact*", "Factual", "Pearson", "Spearman");
  out << buf;
  for (const auto& row : rows) {
    const EvalResult& r = row.result;
    std::snprintf(buf, sizeof buf, "%-*s %9s %9s %9s %9s %9s\n", int(name_width),
                  row.name.c_str(), cell(r.auc_nonfact).c_str(), cell(r.auc_nonfact_star).c_str(),
                  cell(r.auc_factual).c_str(), cell(r.pearson).c_str(), cell(r.spearman).c_str());
    out << buf;
  }
  return out.str();
}

}  // namespace halograph
