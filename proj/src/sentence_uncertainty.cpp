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

#include "halograph/sentence_uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "halograph/errors.hpp"

namespace halograph {

double entity_self_uncertainty(const EntitySpan& span, const PassageBundle& bundle,
                               std::span<const double> token_uncertainties) {
  if (span.token_range.size() < 1)
    throw ContractViolation("entity '" + span.entity_id + "' has an empty token range");
  const std::int64_t offset = bundle.sentence_offset(span.sentence_index);
  double sum = 0.0;
  for (std::int64_t j = span.token_range.first; j <= span.token_range.last; ++j) {
    const std::int64_t index = offset + j - 1;
    if (index < 0 || index >= std::int64_t(token_uncertainties.size()))
      throw ContractViolation("entity '" + span.entity_id + "' covers an unscored token");
    sum += token_uncertainties[std::size_t(index)];
  }
  return sum / double(span.token_range.size());
}

double relation_intensity(std::span<const Triple> incoming) {
  if (incoming.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : incoming) sum += (t.att_subject_relation + t.att_relation_object) / 2.0;
  return sum / double(incoming.size());
}

double propagated_uncertainty(std::string_view object, const SemanticGraph& graph,
                              const std::map<std::string, double, std::less<>>& self_uncertainty,
                              std::vector<std::string>* warnings) {
  const auto& incoming = graph.incoming(object);
  if (incoming.empty()) return 0.0;
  double intensity = relation_intensity(incoming);
  if (intensity < kIntensityEpsilon) {
    if (warnings) {
      warnings->push_back("relation intensity of '" + std::string(object) + "' is " +
                          std::to_string(intensity) + "; using 1e-9");
    }
    intensity = kIntensityEpsilon;
  }
  double total = 0.0;
  for (const auto& t : incoming) {
    auto it = self_uncertainty.find(t.subject);
    if (it == self_uncertainty.end())
      throw ContractViolation("subject '" + t.subject + "' has no self-uncertainty");
    total += t.att_subject_object / intensity * it->second;
  }
  return total;
}

double entity_uncertainty(std::span<const EntityScore> entities, double beta,
                          double global_uncertainty) {
  if (entities.empty()) return global_uncertainty;
  double sum = 0.0;
  for (const auto& e : entities) sum += e.self_uncertainty + beta * e.propagated_uncertainty;
  return sum / double(entities.size());
}

double quantile(std::span<const double> values, double alpha) {
  if (values.empty()) throw ContractViolation("quantile of an empty list");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractViolation("quantile level outside [0,1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = double(sorted.size() - 1) * alpha;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - double(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double global_uncertainty(std::span<const double> token_uncertainties, double alpha) {
  return quantile(token_uncertainties, alpha);
}

double sentence_uncertainty(double entity_uncertainty, double global_uncertainty, double lambda) {
  return lambda * entity_uncertainty + (1.0 - lambda) * global_uncertainty;
}

SentenceScoring score_sentences(const PassageBundle& bundle, const SemanticGraph& graph,
                                std::span<const double> token_uncertainties,
                                const Config& config, std::vector<std::string>* warnings) {
  SentenceScoring out;

  std::map<std::string, double, std::less<>> self;
  for (const auto& span : bundle.entities) {
    const double u = entity_self_uncertainty(span, bundle, token_uncertainties);
    self.emplace(span.entity_id, u);
    out.entities.push_back({span.entity_id, span.sentence_index, u, 0.0});
  }
  for (auto& e : out.entities)
    e.propagated_uncertainty = propagated_uncertainty(e.entity_id, graph, self, warnings);

  std::int64_t offset = 0;
  for (std::size_t s = 0; s < bundle.sentence_count(); ++s) {
    const auto sentence = std::int64_t(s) + 1;
    const std::int64_t n = bundle.sentence_token_counts[s];
    auto tokens = token_uncertainties.subspan(std::size_t(offset), std::size_t(n));
    offset += n;

    std::vector<EntityScore> members;
    for (const auto& e : out.entities) {
      if (e.sentence_index == sentence) members.push_back(e);
    }
    SentenceScore score;
    score.sentence_index = sentence;
    score.entity_count = members.size();
    score.global_uncertainty = global_uncertainty(tokens, config.alpha);
    score.entity_uncertainty = entity_uncertainty(members, config.beta, score.global_uncertainty);
    score.sentence_uncertainty =
        sentence_uncertainty(score.entity_uncertainty, score.global_uncertainty, config.lambda);
    out.sentences.push_back(score);
  }
  return out;
}

}  // namespace halograph
