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

#include "halograph/semantic_graph.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace halograph {
namespace {

constexpr std::array<std::string_view, 3> kEntityPosTags{"NOUN", "NUM", "PROPN"};

constexpr std::array<std::string_view, 18> kEntityNerTypes{
    "PERSON", "DATE",        "ORG", "GPE",      "NORP", "ORDINAL",
    "PRODUCT", "CARDINAL",   "LOC", "FAC",      "EVENT", "WORK_OF_ART",
    "LAW",    "LANGUAGE",    "TIME", "PERCENT", "MONEY", "QUANTITY",
};

bool triple_less(const Triple& a, const Triple& b) {
  return std::tie(a.subject, a.relation_token, a.object, a.att_subject_object,
                  a.att_subject_relation, a.att_relation_object) <
         std::tie(b.subject, b.relation_token, b.object, b.att_subject_object,
                  b.att_subject_relation, b.att_relation_object);
}

bool is_entity_token(const TokenRecord& t) {
  return (t.pos_tag && is_entity_pos_tag(*t.pos_tag)) ||
         (t.ner_type && is_entity_ner_type(*t.ner_type));
}

bool span_is_entity(const EntitySpan& span, const PassageBundle& bundle) {
  const std::int64_t offset = bundle.sentence_offset(span.sentence_index);
  for (std::int64_t j = span.token_range.first; j <= span.token_range.last; ++j) {
    const TokenRecord* t = bundle.token_at(offset + j);
    if (t == nullptr || !is_entity_token(*t)) return false;
  }
  return true;
}

}  // namespace

bool is_entity_pos_tag(std::string_view pos_tag) {
  return std::find(kEntityPosTags.begin(), kEntityPosTags.end(), pos_tag) != kEntityPosTags.end();
}

bool is_entity_ner_type(std::string_view ner_type) {
  return std::find(kEntityNerTypes.begin(), kEntityNerTypes.end(), ner_type) !=
         kEntityNerTypes.end();
}

const std::set<std::int64_t>& SemanticGraph::neighbors_of(std::int64_t sentence) const {
  static const std::set<std::int64_t> kEmpty;
  auto it = neighbors.find(sentence);
  return it == neighbors.end() ? kEmpty : it->second;
}

const std::vector<Triple>& SemanticGraph::incoming(std::string_view object) const {
  static const std::vector<Triple> kEmpty;
  auto it = incoming_by_object.find(std::string(object));
  return it == incoming_by_object.end() ? kEmpty : it->second;
}

std::size_t SemanticGraph::total_neighbor_count() const {
  std::size_t total = 0;
  for (const auto& [sentence, set] : neighbors) total += set.size();
  return total;
}

SemanticGraph build_graph(const PassageBundle& bundle) {
  SemanticGraph g;
  for (std::int64_t s = 1; s <= std::int64_t(bundle.sentence_count()); ++s) {
    g.neighbors[s];
    g.triples_by_sentence[s];
  }
  for (const auto& link : bundle.links) {
    g.neighbors[link.sentence_a].insert(link.sentence_b);
    g.neighbors[link.sentence_b].insert(link.sentence_a);
  }
  for (const auto& triple : bundle.triples) {
    const EntitySpan* object = bundle.find_entity(triple.object);
    if (object != nullptr) g.triples_by_sentence[object->sentence_index].push_back(triple);
    g.incoming_by_object[triple.object].push_back(triple);
  }
  for (auto& [s, list] : g.triples_by_sentence) std::sort(list.begin(), list.end(), triple_less);
  for (auto& [o, list] : g.incoming_by_object) std::sort(list.begin(), list.end(), triple_less);
  return g;
}

bool check_triple_roles(const Triple& triple, const PassageBundle& bundle) {
  const EntitySpan* subject = bundle.find_entity(triple.subject);
  const EntitySpan* object = bundle.find_entity(triple.object);
  const TokenRecord* relation = bundle.token_at(triple.relation_token);
  if (subject == nullptr || object == nullptr || relation == nullptr) return false;
  if (!relation->pos_tag || *relation->pos_tag != "VERB") return false;
  return span_is_entity(*subject, bundle) && span_is_entity(*object, bundle);
}

nlohmann::json graph_summary_json(const SemanticGraph& graph) {
  nlohmann::json adjacency = nlohmann::json::object();
  for (const auto& [s, set] : graph.neighbors)
    adjacency[std::to_string(s)] = std::vector<std::int64_t>(set.begin(), set.end());
  nlohmann::json triple_counts = nlohmann::json::object();
  for (const auto& [s, list] : graph.triples_by_sentence)
    triple_counts[std::to_string(s)] = list.size();
  nlohmann::json incoming = nlohmann::json::object();
  for (const auto& [o, list] : graph.incoming_by_object) incoming[o] = list.size();
  return {{"neighbors", adjacency},
          {"triples_per_sentence", triple_counts},
          {"incoming_per_object", incoming},
          {"total_neighbor_count", graph.total_neighbor_count()}};
}

}  // namespace halograph
