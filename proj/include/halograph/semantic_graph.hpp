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
#include <string>
#include <string_view>
#include <vector>

#include "halograph/bundle.hpp"

namespace halograph {

// Per-sentence triple sets plus passage-level sentence adjacency.
// Triple lists are kept in a canonical order so that graphs built from
// permuted triple lists compare equal.
struct SemanticGraph {
  std::map<std::int64_t, std::vector<Triple>> triples_by_sentence;
  std::map<std::string, std::vector<Triple>> incoming_by_object;
  std::map<std::int64_t, std::set<std::int64_t>> neighbors;  // every sentence has an entry

  const std::set<std::int64_t>& neighbors_of(std::int64_t sentence) const;
  const std::vector<Triple>& incoming(std::string_view object) const;  // empty if none
  std::size_t total_neighbor_count() const;  // sum of |N(i)|

  bool operator==(const SemanticGraph&) const = default;
};

// Requires a valid bundle. Adjacency comes from links only; duplicate links
// collapse to one edge.
SemanticGraph build_graph(const PassageBundle& bundle);

// Role filter for extracted triples: every subject and object token must be a
// NOUN/NUM/PROPN or carry one of the accepted NER types, and the relation
// token must be a VERB. Tokens without tags fail.
bool check_triple_roles(const Triple& triple, const PassageBundle& bundle);

bool is_entity_pos_tag(std::string_view pos_tag);
bool is_entity_ner_type(std::string_view ner_type);

// Adjacency and triple counts for debugging output.
nlohmann::json graph_summary_json(const SemanticGraph& graph);

}  // namespace halograph
