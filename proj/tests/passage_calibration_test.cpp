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
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "halograph/errors.hpp"
#include "halograph/passage_calibration.hpp"
#include "halograph/semantic_graph.hpp"
#include "halograph/synth.hpp"
#include "test_support.hpp"

using namespace halograph;
using doctest::Approx;
using halograph::testing::load_fixture;
using halograph::testing::plain_bundle;

namespace {

SemanticGraph linked(std::size_t m, const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
  std::vector<std::int64_t> counts(m, 1);
  PassageBundle b = plain_bundle(counts);
  for (auto [a, c] : pairs) b.links.push_back({a, c, LinkKind::kCoreference});
  return build_graph(b);
}

// Every ordered pair over m sentences with contradiction `value(p, h)`.
template <typename F>
NliTable all_pairs(std::int64_t m, F value) {
  std::vector<NliScore> scores;
  for (std::int64_t p = 1; p <= m; ++p)
    for (std::int64_t h = 1; h <= m; ++h)
      if (p != h) scores.push_back({p, h, value(p, h)});
  return NliTable(scores);
}

const std::vector<NliScore> kChainNli{{2, 1, 0.5}, {1, 2, 0.2}, {3, 2, 0.6}, {2, 3, 0.3}};

}  // namespace

TEST_CASE("two-sentence fixture") {
  const PassageBundle b = load_fixture("two_sentence.jsonl");
  const std::vector<double> u{2.0, 4.0};
  const NliTable nli(b.nli_scores);
  CHECK(calibrate_graph(build_graph(b), u, nli).raw_uncertainty == 1.1);
  CHECK(calibrate_adjacent(u, nli).raw_uncertainty == 1.1);
}

TEST_CASE("average") {
  CHECK(calibrate_average(std::vector<double>{1, 2, 3}).raw_uncertainty == 2.0);
  CHECK(calibrate_average(std::vector<double>{4.5}).raw_uncertainty == 4.5);
  CHECK_THROWS_AS(calibrate_average(std::vector<double>{}), ContractViolation);
}

TEST_CASE("unit contradictions on a complete graph give the mean") {
  const std::vector<double> u{1.0, 2.5, 4.0, 0.5};
  const auto g = linked(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const auto nli = all_pairs(4, [](auto, auto) { return 1.0; });
  CHECK(calibrate_graph(g, u, nli).raw_uncertainty == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("edgeless passage equals the average") {
  const std::vector<double> u{3.0, 1.0, 8.0};
  const auto g = linked(3, {});
  CHECK(calibrate_graph(g, u, NliTable{}).raw_uncertainty ==
        calibrate_average(u).raw_uncertainty);
}

TEST_CASE("chain of three") {
  // (1*0.5 + 2*(0.2 + 0.6) + 3*0.3) / 4
  const std::vector<double> u{1.0, 2.0, 3.0};
  const NliTable nli(kChainNli);
  const auto g = linked(3, {{1, 2}, {2, 3}});
  CHECK(calibrate_graph(g, u, nli).raw_uncertainty == Approx(0.75).epsilon(1e-15));
  CHECK(calibrate_adjacent(u, nli).raw_uncertainty == Approx(0.75).epsilon(1e-15));
}

TEST_CASE("isolated sentence policy") {
  const std::vector<double> u{1.0, 2.0, 3.0};
  const NliTable nli(kChainNli);
  const auto g = linked(3, {{1, 2}});
  // linked part: 1*0.5 + 2*0.2 = 0.9; sentence 3 falls back to premise 2 (0.3).
  CHECK(calibrate_graph(g, u, nli, IsolatedSentencePolicy::kAdjacentFallback).raw_uncertainty ==
        Approx(1.8 / 3.0).epsilon(1e-15));
  CHECK(calibrate_graph(g, u, nli, IsolatedSentencePolicy::kSkip).raw_uncertainty ==
        Approx(0.45).epsilon(1e-15));
  const auto fallback = effective_neighbors(g, 3, IsolatedSentencePolicy::kAdjacentFallback);
  CHECK(fallback[2] == std::set<std::int64_t>{2});
  CHECK(effective_neighbors(g, 3, IsolatedSentencePolicy::kSkip)[2].empty());
}

TEST_CASE("single sentence adjacent falls back to itself") {
  CHECK(calibrate_adjacent(std::vector<double>{2.5}, NliTable{}).raw_uncertainty == 2.5);
}

TEST_CASE("missing NLI pair is a data error naming the pair") {
  const std::vector<double> u{1.0, 2.0};
  const NliTable nli(std::vector<NliScore>{{2, 1, 0.5}});
  try {
    calibrate_graph(linked(2, {{1, 2}}), u, nli);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("premise 1, hypothesis 2") != std::string::npos);
  }
}

TEST_CASE("property: homogeneity, bounds and constant-contradiction degeneracy") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& b : synthesize_corpus(13, 80)) {
    const auto m = b.sentence_count();
    std::vector<double> u(m);
    for (auto& x : u) x = 0.1 + 5.0 * unit(rng);
    const auto g = build_graph(b);
    const NliTable nli(b.nli_scores);
    const double c = 0.2 + 3.0 * unit(rng);
    std::vector<double> scaled = u;
    for (auto& x : scaled) x *= c;
    const double max_u = *std::max_element(u.begin(), u.end());

    const double graph = calibrate_graph(g, u, nli).raw_uncertainty;
    const double adjacent = calibrate_adjacent(u, nli).raw_uncertainty;
    const double average = calibrate_average(u).raw_uncertainty;
    CHECK(calibrate_graph(g, scaled, nli).raw_uncertainty == Approx(c * graph).epsilon(1e-12));
    CHECK(calibrate_adjacent(scaled, nli).raw_uncertainty == Approx(c * adjacent).epsilon(1e-12));
    CHECK(calibrate_average(scaled).raw_uncertainty == Approx(c * average).epsilon(1e-12));
    CHECK(graph <= max_u * (1 + 1e-12));
    CHECK(adjacent <= max_u * (1 + 1e-12));
    CHECK(graph >= 0.0);

    if (g.total_neighbor_count() == 0) {
      CHECK(graph == average);
      continue;
    }
    const double k = unit(rng);
    const auto constant = all_pairs(std::int64_t(m), [&](auto, auto) { return k; });
    const auto neighbors = effective_neighbors(g, m, IsolatedSentencePolicy::kAdjacentFallback);
    double weighted = 0.0, total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      weighted += double(neighbors[i].size()) * u[i];
      total += double(neighbors[i].size());
    }
    CHECK(calibrate_graph(g, u, constant).raw_uncertainty ==
          Approx(k * weighted / total).epsilon(1e-12));
  }
}
