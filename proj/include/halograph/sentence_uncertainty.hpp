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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halograph/bundle.hpp"
#include "halograph/config.hpp"
#include "halograph/semantic_graph.hpp"

namespace halograph {

inline constexpr double kIntensityEpsilon = 1e-9;

struct EntityScore {
  std::string entity_id;
  std::int64_t sentence_index = 0;
  double self_uncertainty = 0.0;
  double propagated_uncertainty = 0.0;  // 0 when nothing points at the entity
};

struct SentenceScore {
  std::int64_t sentence_index = 0;
  std::size_t entity_count = 0;
  double entity_uncertainty = 0.0;
  double global_uncertainty = 0.0;
  double sentence_uncertainty = 0.0;
};

// Mean token uncertainty over the span. `token_uncertainties` is indexed by
// passage position - 1.
double entity_self_uncertainty(const EntitySpan& span, const PassageBundle& bundle,
                               std::span<const double> token_uncertainties);

// Mean over incoming triples of (att(s,v) + att(v,o)) / 2.
double relation_intensity(std::span<const Triple> incoming);

// Sum over triples (s, v, o) pointing at `object` of att(s,o) / I_o * U(s),
// with U the subject's self-uncertainty (single hop). Intensities below
// kIntensityEpsilon are replaced by it and a warning is appended.
double propagated_uncertainty(std::string_view object, const SemanticGraph& graph,
                              const std::map<std::string, double, std::less<>>& self_uncertainty,
                              std::vector<std::string>* warnings = nullptr);

// Mean of self + beta * propagated. A sentence without entities yields
// `global_uncertainty` so the interpolation collapses onto the global term.
double entity_uncertainty(std::span<const EntityScore> entities, double beta,
                          double global_uncertainty);

// Linear-interpolation quantile on the sorted values: h = (n-1) * alpha.
double quantile(std::span<const double> values, double alpha);

// alpha-quantile of the sentence's token uncertainties.
double global_uncertainty(std::span<const double> token_uncertainties, double alpha);

double sentence_uncertainty(double entity_uncertainty, double global_uncertainty, double lambda);

struct SentenceScoring {
  std::vector<EntityScore> entities;    // bundle entity order
  std::vector<SentenceScore> sentences;  // sentence order
};

SentenceScoring score_sentences(const PassageBundle& bundle, const SemanticGraph& graph,
                                std::span<const double> token_uncertainties,
                                const Config& config,
                                std::vector<std::string>* warnings = nullptr);

}  // namespace halograph
