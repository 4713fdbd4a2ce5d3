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
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "halograph/bundle.hpp"
#include "halograph/config.hpp"
#include "halograph/semantic_graph.hpp"

namespace halograph {

// Ordered-pair lookup of NLI(con | premise, hypothesis).
class NliTable {
 public:
  NliTable() = default;
  explicit NliTable(std::span<const NliScore> scores);

  // Throws DataError naming the pair when absent.
  double contradiction(std::int64_t premise, std::int64_t hypothesis) const;
  bool contains(std::int64_t premise, std::int64_t hypothesis) const;

 private:
  std::map<std::pair<std::int64_t, std::int64_t>, double> table_;
};

struct PassageScore {
  PassageMethod method = PassageMethod::kGraph;
  double raw_uncertainty = 0.0;
};

// Sentence uncertainties below are indexed by sentence - 1.

// Neighbor-weighted contradiction calibration:
//   U_p = sum_i sum_{j in N(i)} U_s(i) * NLI(con | S_j, S_i) / sum_i |N(i)|
// Sentences without neighbors in a linked passage use positional neighbors
// {i-1, i+1} under kAdjacentFallback and drop out under kSkip. A passage with
// no links at all gets the plain average.
PassageScore calibrate_graph(const SemanticGraph& graph,
                             std::span<const double> sentence_uncertainties,
                             const NliTable& nli,
                             IsolatedSentencePolicy policy =
                                 IsolatedSentencePolicy::kAdjacentFallback);

// Same weighting with N(i) = {i-1, i+1} clipped to the passage.
PassageScore calibrate_adjacent(std::span<const double> sentence_uncertainties,
                                const NliTable& nli);

PassageScore calibrate_average(std::span<const double> sentence_uncertainties);

// Effective neighbor sets used by calibrate_graph, exposed for reporting.
std::vector<std::set<std::int64_t>> effective_neighbors(const SemanticGraph& graph,
                                                        std::size_t sentence_count,
                                                        IsolatedSentencePolicy policy);

}  // namespace halograph
