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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace halograph {

enum class ProjectionKind { kInverse, kSigmoid, kLogistic };

enum class IsolatedSentencePolicy { kAdjacentFallback, kSkip };

enum class PassageMethod { kGraph, kAdjacent, kAverage };

enum class AucKind { kRoc, kPr };

// Token-level score used by the pipeline. kVanillaLogprob is the "w/ log"
// substitution: -ln(realized_prob) in place of the decay-weighted statistic.
enum class TokenMetric { kDecayStatistic, kVanillaLogprob };

// Sentence-level score. Anything other than kInterpolated replaces U_s with
// the named baseline before passage calibration.
enum class SentenceMetric {
  kInterpolated,
  kAvgNegLogprob,
  kMaxNegLogprob,
  kAvgEntropy,
  kMaxEntropy,
};

std::string_view to_string(ProjectionKind kind);
std::string_view to_string(IsolatedSentencePolicy policy);
std::string_view to_string(PassageMethod method);
std::string_view to_string(AucKind kind);
std::string_view to_string(TokenMetric metric);
std::string_view to_string(SentenceMetric metric);

// Parsers throw std::invalid_argument on unknown names.
ProjectionKind parse_projection_kind(std::string_view name);
IsolatedSentencePolicy parse_isolated_policy(std::string_view name);
PassageMethod parse_passage_method(std::string_view name);
AucKind parse_auc_kind(std::string_view name);
TokenMetric parse_token_metric(std::string_view name);
SentenceMetric parse_sentence_metric(std::string_view name);

struct Config {
  double alpha = 0.8;
  double beta = 0.65;
  double lambda = 0.7;
  std::size_t k = 3;

  ProjectionKind sentence_projection = ProjectionKind::kLogistic;
  ProjectionKind passage_projection = ProjectionKind::kInverse;
  // Logistic location; unset means "median of the scored corpus".
  std::optional<double> sentence_logistic_mu;
  std::optional<double> passage_logistic_mu;
  double sentence_logistic_tau = 1.0;
  double passage_logistic_tau = 1.0;

  IsolatedSentencePolicy isolated_sentence_policy =
      IsolatedSentencePolicy::kAdjacentFallback;
  PassageMethod passage_method = PassageMethod::kGraph;
  AucKind auc = AucKind::kRoc;
  TokenMetric token_metric = TokenMetric::kDecayStatistic;
  SentenceMetric sentence_metric = SentenceMetric::kInterpolated;

  bool operator==(const Config&) const = default;
};

// Throws ContractViolation when a field is outside its documented range.
void check_config(const Config& config);

// alpha 0.8, beta 0.65, lambda 0.7, k 3.
bool is_default_point(const Config& config);

nlohmann::json config_to_json(const Config& config);

// Overlays every key present in `j` onto `config`; unknown keys are rejected.
void apply_config_json(const nlohmann::json& j, Config& config);

}  // namespace halograph
