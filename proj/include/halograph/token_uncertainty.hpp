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

#include <cstdint>
#include <span>
#include <vector>

#include "halograph/bundle.hpp"
#include "halograph/config.hpp"

namespace halograph {

// 1 + e^(position/length - 1). Range (1 + 1/e, 2], strictly increasing in
// position. Throws ContractViolation unless 1 <= position <= length.
double decay_term(std::int64_t passage_position, std::int64_t passage_length);

// Population variance (divides by n).
double population_variance(std::span<const double> values);

// decay_term / (max(topk) + var(topk)). Symmetric in the order of topk.
// Throws DegenerateInputError when the denominator is zero (all-zero list)
// and ContractViolation on an empty list.
double token_uncertainty(std::span<const double> topk, std::int64_t passage_position,
                         std::int64_t passage_length);

struct TokenScore {
  std::int64_t passage_position = 0;
  double uncertainty = 0.0;
};

// One score per token, in passage order, under the configured token metric.
std::vector<TokenScore> score_tokens(const PassageBundle& bundle, TokenMetric metric,
                                     std::vector<std::string>* warnings = nullptr);

}  // namespace halograph
