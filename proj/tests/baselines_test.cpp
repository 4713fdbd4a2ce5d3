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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "halograph/baselines.hpp"
#include "halograph/errors.hpp"
#include "halograph/synth.hpp"
#include "test_support.hpp"

using namespace halograph;
using doctest::Approx;

namespace {

TokenRecord token(double realized, std::vector<double> topk = {1.0, 0.0, 0.0}) {
  TokenRecord t;
  t.surface = "x";
  t.sentence_index = 1;
  t.within_sentence_index = 1;
  t.passage_position = 1;
  t.realized_prob = realized;
  t.topk_probs = std::move(topk);
  return t;
}

}  // namespace

TEST_CASE("neg logprob aggregation") {
  const std::vector<TokenRecord> tokens{token(1.0), token(std::exp(-1.0))};
  CHECK(sentence_baseline(BaselineMetric::kAvgNegLogprob, tokens) == Approx(0.5).epsilon(1e-15));
  CHECK(sentence_baseline(BaselineMetric::kMaxNegLogprob, tokens) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("top-k entropy") {
  CHECK(topk_entropy(std::vector<double>{1.0, 0.0, 0.0}) == 0.0);
  CHECK(topk_entropy(std::vector<double>{0.5, 0.25, 0.25}) ==
        Approx(1.0397207708399179).epsilon(1e-15));
  // Missing mass is not renormalized.
  CHECK(topk_entropy(std::vector<double>{0.5}) == Approx(0.5 * std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("vanilla token value") {
  CHECK(token_baseline_vanilla(token(1.0)) == 0.0);
  CHECK(token_baseline_vanilla(token(std::exp(-2.0))) == Approx(2.0).epsilon(1e-15));
  std::vector<std::string> warnings;
  CHECK(token_baseline_vanilla(token(0.0), &warnings) == Approx(-std::log(1e-12)));
  CHECK(warnings.size() == 1);
}

TEST_CASE("sentence baseline rejects empty input and token metrics") {
  CHECK_THROWS_AS(sentence_baseline(BaselineMetric::kAvgEntropy, std::vector<TokenRecord>{}),
                  ContractViolation);
  const std::vector<TokenRecord> one{token(0.5)};
  CHECK_THROWS_AS(sentence_baseline(BaselineMetric::kVanillaLogprobToken, one), ContractViolation);
}

TEST_CASE("metric names round trip") {
  for (auto m : sentence_baseline_metrics()) CHECK(parse_baseline_metric(to_string(m)) == m);
  CHECK(parse_baseline_metric("vanilla_logprob_token") == BaselineMetric::kVanillaLogprobToken);
  CHECK(sentence_baseline_metrics().size() == 4);
  CHECK_THROWS_AS(parse_baseline_metric("bertscore"), std::invalid_argument);
}

TEST_CASE("property: entropy bound, max over avg, order invariance") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ln3 = std::log(3.0);
  CHECK(topk_entropy(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}) == Approx(ln3).epsilon(1e-12));
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> p{unit(rng), unit(rng), unit(rng)};
    const double s = p[0] + p[1] + p[2];
    for (auto& x : p) x /= s * (1.0 + 0.2 * unit(rng));
    CHECK(topk_entropy(p) <= ln3 + 1e-12);
  }

  for (const auto& b : synthesize_corpus(4, 60)) {
    for (std::int64_t s = 1; s <= std::int64_t(b.sentence_count()); ++s) {
      std::vector<TokenRecord> tokens;
      for (const auto& t : b.tokens)
        if (t.sentence_index == s) tokens.push_back(t);
      const double avg_lp = sentence_baseline(BaselineMetric::kAvgNegLogprob, tokens);
      const double max_lp = sentence_baseline(BaselineMetric::kMaxNegLogprob, tokens);
      const double avg_h = sentence_baseline(BaselineMetric::kAvgEntropy, tokens);
      const double max_h = sentence_baseline(BaselineMetric::kMaxEntropy, tokens);
      CHECK(max_lp >= avg_lp - 1e-12);
      CHECK(max_h >= avg_h - 1e-12);
      CHECK(avg_lp >= 0.0);
      CHECK(avg_h >= 0.0);

      auto reordered = tokens;
      std::shuffle(reordered.begin(), reordered.end(), rng);
      CHECK(sentence_baseline(BaselineMetric::kAvgNegLogprob, reordered) ==
            Approx(avg_lp).epsilon(1e-12));
      CHECK(sentence_baseline(BaselineMetric::kMaxNegLogprob, reordered) == max_lp);
      CHECK(sentence_baseline(BaselineMetric::kAvgEntropy, reordered) ==
            Approx(avg_h).epsilon(1e-12));
      CHECK(sentence_baseline(BaselineMetric::kMaxEntropy, reordered) == max_h);
    }
  }
}
