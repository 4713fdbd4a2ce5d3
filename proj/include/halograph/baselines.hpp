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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halograph/bundle.hpp"

namespace halograph {

// Sentence-level uncertainty baselines computed from token probabilities.
// All quantities are in nats. Entropy uses the raw top-k probabilities
// without renormalization; missing mass contributes nothing.
enum class BaselineMetric {
  kAvgNegLogprob,
  kMaxNegLogprob,
  kAvgEntropy,
  kMaxEntropy,
  kVanillaLogprobToken,
};

inline constexpr double kMinRealizedProb = 1e-12;

std::string_view to_string(BaselineMetric metric);
BaselineMetric parse_baseline_metric(std::string_view name);  // std::invalid_argument

// The four sentence-level metrics, in stable output order.
const std::vector<BaselineMetric>& sentence_baseline_metrics();

// -ln(realized_prob); zero probabilities are clamped to kMinRealizedProb and
// a warning is appended.
double token_baseline_vanilla(const TokenRecord& token,
                              std::vector<std::string>* warnings = nullptr);

double topk_entropy(std::span<const double> topk);

// Avg/max of per-token -ln p or per-token top-k entropy. Throws
// ContractViolation on an empty token list or a token-level metric.
double sentence_baseline(BaselineMetric metric, std::span<const TokenRecord> tokens,
                         std::vector<std::string>* warnings = nullptr);

}  // namespace halograph
