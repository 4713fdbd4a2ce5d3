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

#include "halograph/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "halograph/errors.hpp"

namespace halograph {

std::string_view to_string(BaselineMetric metric) {
  switch (metric) {
    case BaselineMetric::kAvgNegLogprob: return "avg_neg_logprob";
    case BaselineMetric::kMaxNegLogprob: return "max_neg_logprob";
    case BaselineMetric::kAvgEntropy: return "avg_entropy";
    case BaselineMetric::kMaxEntropy: return "max_entropy";
    case BaselineMetric::kVanillaLogprobToken: return "vanilla_logprob_token";
  }
  return "?";
}

BaselineMetric parse_baseline_metric(std::string_view name) {
  for (auto m : {BaselineMetric::kAvgNegLogprob, BaselineMetric::kMaxNegLogprob,
                 BaselineMetric::kAvgEntropy, BaselineMetric::kMaxEntropy,
                 BaselineMetric::kVanillaLogprobToken}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown baseline metric '" + std::string(name) + "'");
}

const std::vector<BaselineMetric>& sentence_baseline_metrics() {
  static const std::vector<BaselineMetric> kMetrics{
      BaselineMetric::kAvgNegLogprob, BaselineMetric::kMaxNegLogprob,
      BaselineMetric::kAvgEntropy, BaselineMetric::kMaxEntropy};
  return kMetrics;
}

double token_baseline_vanilla(const TokenRecord& token, std::vector<std::string>* warnings) {
  double p = token.realized_prob;
  if (p < kMinRealizedProb) {
    if (warnings) {
      warnings->push_back("realized_prob " + std::to_string(p) + " at position " +
                          std::to_string(token.passage_position) + " clamped to 1e-12");
    }
    p = kMinRealizedProb;
  }
  return -std::log(p);
}

double topk_entropy(std::span<const double> topk) {
  double h = 0.0;
  for (double p : topk) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double sentence_baseline(BaselineMetric metric, std::span<const TokenRecord> tokens,
                         std::vector<std::string>* warnings) {
  if (tokens.empty()) throw ContractViolation("sentence_baseline: sentence has no tokens");
  const bool logprob =
      metric == BaselineMetric::kAvgNegLogprob || metric == BaselineMetric::kMaxNegLogprob;
  const bool take_max =
      metric == BaselineMetric::kMaxNegLogprob || metric == BaselineMetric::kMaxEntropy;
  if (metric == BaselineMetric::kVanillaLogprobToken)
    throw ContractViolation("sentence_baseline: vanilla_logprob_token is a token-level metric");

  double sum = 0.0;
  double max = 0.0;
  for (const auto& t : tokens) {
    const double v = logprob ? token_baseline_vanilla(t, warnings) : topk_entropy(t.topk_probs);
    sum += v;
    max = std::max(max, v);
  }
  return take_max ? max : sum / double(tokens.size());
}

}  // namespace halograph
