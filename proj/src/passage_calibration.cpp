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

#include "halograph/passage_calibration.hpp"

#include <numeric>
#include <string>

#include "halograph/errors.hpp"

namespace halograph {
namespace {

std::set<std::int64_t> positional_neighbors(std::int64_t sentence, std::int64_t m) {
  std::set<std::int64_t> out;
  if (sentence - 1 >= 1) out.insert(sentence - 1);
  if (sentence + 1 <= m) out.insert(sentence + 1);
  return out;
}

PassageScore weighted(PassageMethod method, const std::vector<std::set<std::int64_t>>& neighbors,
                      std::span<const double> u, const NliTable& nli) {
  double numerator = 0.0;
  std::size_t denominator = 0;
  for (std::size_t s = 0; s < neighbors.size(); ++s) {
    const auto hypothesis = std::int64_t(s) + 1;
    for (std::int64_t premise : neighbors[s]) {
      numerator += u[s] * nli.contradiction(premise, hypothesis);
      ++denominator;
    }
  }
  if (denominator == 0) return {method, calibrate_average(u).raw_uncertainty};
  return {method, numerator / double(denominator)};
}

}  // namespace

NliTable::NliTable(std::span<const NliScore> scores) {
  for (const auto& s : scores)
    table_[{s.premise_sentence, s.hypothesis_sentence}] = s.contradiction_prob;
}

double NliTable::contradiction(std::int64_t premise, std::int64_t hypothesis) const {
  auto it = table_.find({premise, hypothesis});
  if (it == table_.end()) {
    throw DataError("missing NLI score for ordered pair (premise " + std::to_string(premise) +
                    ", hypothesis " + std::to_string(hypothesis) + ")");
  }
  return it->second;
}

bool NliTable::contains(std::int64_t premise, std::int64_t hypothesis) const {
  return table_.count({premise, hypothesis}) > 0;
}

std::vector<std::set<std::int64_t>> effective_neighbors(const SemanticGraph& graph,
                                                        std::size_t sentence_count,
                                                        IsolatedSentencePolicy policy) {
  const auto m = std::int64_t(sentence_count);
  std::vector<std::set<std::int64_t>> out(sentence_count);
  for (std::int64_t i = 1; i <= m; ++i) {
    const auto& linked = graph.neighbors_of(i);
    if (!linked.empty()) {
      out[std::size_t(i - 1)] = linked;
    } else if (policy == IsolatedSentencePolicy::kAdjacentFallback) {
      out[std::size_t(i - 1)] = positional_neighbors(i, m);
    }
  }
  return out;
}

PassageScore calibrate_graph(const SemanticGraph& graph,
                             std::span<const double> sentence_uncertainties, const NliTable& nli,
                             IsolatedSentencePolicy policy) {
  if (graph.total_neighbor_count() == 0)
    return {PassageMethod::kGraph, calibrate_average(sentence_uncertainties).raw_uncertainty};
  return weighted(PassageMethod::kGraph,
                  effective_neighbors(graph, sentence_uncertainties.size(), policy),
                  sentence_uncertainties, nli);
}

PassageScore calibrate_adjacent(std::span<const double> sentence_uncertainties,
                                const NliTable& nli) {
  const auto m = std::int64_t(sentence_uncertainties.size());
  std::vector<std::set<std::int64_t>> neighbors;
  for (std::int64_t i = 1; i <= m; ++i) neighbors.push_back(positional_neighbors(i, m));
  return weighted(PassageMethod::kAdjacent, neighbors, sentence_uncertainties, nli);
}

PassageScore calibrate_average(std::span<const double> sentence_uncertainties) {
  if (sentence_uncertainties.empty())
    throw ContractViolation("calibrate_average: passage has no sentences");
  const double sum =
      std::accumulate(sentence_uncertainties.begin(), sentence_uncertainties.end(), 0.0);
  return {PassageMethod::kAverage, sum / double(sentence_uncertainties.size())};
}

}  // namespace halograph
