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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halograph/config.hpp"
#include "json.hpp"

namespace halograph {

// Monotone map from [0, inf) uncertainties to [0, 1].
//   inverse:  x / (1 + x)
//   sigmoid:  2 * (1 / (1 + e^-x) - 1/2)
//   logistic: 1 / (1 + e^(-(x - mu) / tau))
struct ProjectionSpec {
  ProjectionKind kind = ProjectionKind::kInverse;
  double mu = 0.0;
  double tau = 1.0;
};

// Throws ContractViolation for negative or non-finite scores.
double project(double score, const ProjectionSpec& spec);

// Logistic location defaults to the median of `corpus` when `mu` is unset.
ProjectionSpec make_projection(ProjectionKind kind, std::optional<double> mu, double tau,
                               std::span<const double> corpus);

enum class LabelSetup { kNonFact, kNonFactStar, kFactual };

std::string_view to_string(LabelSetup setup);

struct LabelMapping {
  std::vector<int> binary;   // 1 = positive
  bool invert_scores = false;  // rank by 1 - projected uncertainty
};

// NonFact:  {1, 0.5} positive, {0} negative
// NonFact*: {1} positive, {0.5, 0} negative
// Factual:  {0} positive, {0.5, 1} negative, scores inverted
// Throws DataError on a label outside {0, 0.5, 1}.
LabelMapping map_labels(LabelSetup setup, std::span<const double> labels);

// Mann-Whitney form: P(random positive outranks random negative), ties 1/2.
// Throws UndefinedMetricError unless both classes are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

// Average precision; tied scores are treated as one threshold.
double pr_auc(std::span<const double> scores, std::span<const int> labels);

double auc(AucKind kind, std::span<const double> scores, std::span<const int> labels);

// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Throw ContractViolation on length mismatch or n < 2, UndefinedMetricError
// on constant input.
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

struct EvalResult {
  std::optional<double> auc_nonfact;
  std::optional<double> auc_nonfact_star;
  std::optional<double> auc_factual;
  std::optional<double> pearson;
  std::optional<double> spearman;
  std::vector<std::string> undefined;  // why a metric is missing

  bool complete() const { return undefined.empty(); }
};

// Sentence-level AUCs over projected sentence scores and labels, passage-level
// correlations between projected passage scores and human scores. Undefined
// metrics are left empty and explained in `undefined`.
EvalResult evaluate(std::span<const double> sentence_scores,
                    std::span<const double> sentence_labels,
                    std::span<const double> passage_scores,
                    std::span<const double> passage_human_scores, AucKind kind);

nlohmann::json eval_result_to_json(const EvalResult& result);

struct NamedEvalResult {
  std::string name;
  EvalResult result;
};

// Fixed-width table, one row per result, values as percentages.
std::string format_eval_table(std::span<const NamedEvalResult> rows);

}  // namespace halograph
