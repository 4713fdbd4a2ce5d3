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

#include "halograph/token_uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "halograph/baselines.hpp"
#include "halograph/errors.hpp"

namespace halograph {

double decay_term(std::int64_t passage_position, std::int64_t passage_length) {
  if (passage_length < 1 || passage_position < 1 || passage_position > passage_length) {
    throw ContractViolation("decay_term: position " + std::to_string(passage_position) +
                            " outside [1, " + std::to_string(passage_length) + "]");
  }
  const double ratio = double(passage_position) / double(passage_length);
  return 1.0 + std::exp(ratio - 1.0);
}

double population_variance(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double n = double(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / n;
}

double token_uncertainty(std::span<const double> topk, std::int64_t passage_position,
                         std::int64_t passage_length) {
  if (topk.empty()) throw ContractViolation("token_uncertainty: empty top-k list");
  const double top = *std::max_element(topk.begin(), topk.end());
  const double denominator = top + population_variance(topk);
  if (!(denominator > 0.0)) {
    throw DegenerateInputError("token_uncertainty: top-k list at position " +
                               std::to_string(passage_position) + " has no probability mass");
  }
  return decay_term(passage_position, passage_length) / denominator;
}

std::vector<TokenScore> score_tokens(const PassageBundle& bundle, TokenMetric metric,
                                     std::vector<std::string>* warnings) {
  std::vector<TokenScore> scores;
  scores.reserve(bundle.tokens.size());
  const auto length = std::int64_t(bundle.length());
  for (const auto& t : bundle.tokens) {
    double u = 0.0;
    if (metric == TokenMetric::kDecayStatistic) {
      u = token_uncertainty(t.topk_probs, t.passage_position, length);
    } else {
      u = token_baseline_vanilla(t, warnings);
    }
    scores.push_back({t.passage_position, u});
  }
  return scores;
}

}  // namespace halograph
