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

// Passage bundle data model: the complete, precomputed scoring input for one
// generated passage, and its JSON Lines serialization.
//
// Wire format (one passage per line, UTF-8):
//
//   {"format_version": 1,
//    "passage_id": "p0",
//    "sentence_token_counts": [n_1, ..., n_m],
//    "tokens": [{"surface", "sentence_index", "within_sentence_index",
//                "passage_position", "topk_probs", "realized_prob",
//                "pos_tag"?, "ner_type"?}, ...],          // passage order
//    "entities": [{"entity_id", "sentence_index", "token_range": [first, last]}],
//    "triples": [{"subject", "relation_token", "object", "att_subject_object",
//                 "att_subject_relation", "att_relation_object"}],
//    "links": [{"sentence_a", "sentence_b", "kind"}],   // kind: coreference | entity-link
//    "nli_scores": [{"premise_sentence", "hypothesis_sentence", "contradiction_prob"}],
//    "sentence_labels"?: [0 | 0.5 | 1, ...],
//    "passage_human_score"?: x,
//    "metadata"?: {...}}                                 // ignored
//
// All indices are 1-based. token_range is an inclusive within-sentence
// interval. Triple subject/object name entity ids; relation_token is the
// passage_position of the relation (verb) token.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace halograph {

inline constexpr int kFormatVersion = 1;

struct TokenRecord {
  std::string surface;
  std::int64_t sentence_index = 0;
  std::int64_t within_sentence_index = 0;
  std::int64_t passage_position = 0;
  std::vector<double> topk_probs;  // descending
  double realized_prob = 0.0;
  std::optional<std::string> pos_tag;
  std::optional<std::string> ner_type;

  bool operator==(const TokenRecord&) const = default;
};

struct TokenRange {
  std::int64_t first = 0;
  std::int64_t last = 0;  // inclusive

  std::int64_t size() const { return last - first + 1; }
  bool operator==(const TokenRange&) const = default;
};

struct EntitySpan {
  std::string entity_id;
  std::int64_t sentence_index = 0;
  TokenRange token_range;

  bool operator==(const EntitySpan&) const = default;
};

struct Triple {
  std::string subject;
  std::int64_t relation_token = 0;
  std::string object;
  double att_subject_object = 0.0;
  double att_subject_relation = 0.0;
  double att_relation_object = 0.0;

  bool operator==(const Triple&) const = default;
};

enum class LinkKind { kCoreference, kEntityLink };

std::string_view to_string(LinkKind kind);

struct SentenceLink {
  std::int64_t sentence_a = 0;
  std::int64_t sentence_b = 0;
  LinkKind kind = LinkKind::kCoreference;

  bool operator==(const SentenceLink&) const = default;
};

// contradiction_prob = NLI(con | premise, hypothesis).
struct NliScore {
  std::int64_t premise_sentence = 0;
  std::int64_t hypothesis_sentence = 0;
  double contradiction_prob = 0.0;

  bool operator==(const NliScore&) const = default;
};

struct PassageBundle {
  std::string passage_id;
  std::vector<std::int64_t> sentence_token_counts;
  std::vector<TokenRecord> tokens;
  std::vector<EntitySpan> entities;
  std::vector<Triple> triples;
  std::vector<SentenceLink> links;
  std::vector<NliScore> nli_scores;
  std::optional<std::vector<double>> sentence_labels;
  std::optional<double> passage_human_score;

  std::size_t sentence_count() const { return sentence_token_counts.size(); }
  std::size_t length() const { return tokens.size(); }

  // Nullptr when absent.
  const EntitySpan* find_entity(std::string_view entity_id) const;
  const TokenRecord* token_at(std::int64_t passage_position) const;

  // Number of tokens in sentences 1..sentence_index-1.
  std::int64_t sentence_offset(std::int64_t sentence_index) const;

  bool operator==(const PassageBundle&) const = default;
};

// Parses one JSON line. Shape errors raise ParseError carrying `line_number`;
// unresolvable entity or token references raise IntegrityError.
PassageBundle load_bundle(std::string_view line, std::size_t line_number = 1);

// Reads a whole JSON Lines stream, skipping blank lines.
std::vector<PassageBundle> load_bundles(std::istream& in);
std::vector<PassageBundle> load_bundle_file(const std::string& path);

nlohmann::json bundle_to_json(const PassageBundle& bundle);
std::string serialize_bundle(const PassageBundle& bundle);  // single line, no newline

struct Violation {
  std::string field;
  std::string rule;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

// Empty iff every bundle invariant holds. Never throws on a materialized
// bundle, whatever its contents.
std::vector<Violation> validate_bundle(const PassageBundle& bundle,
                                       std::size_t expected_k);

nlohmann::json violations_to_json(const std::vector<Violation>& violations);

// Copy of `bundle` whose top-k lists keep only their first `k` entries. The
// first k of a descending top-K list are exactly the top-k, so this is exact
// for k <= K. Throws ContractViolation if some list is shorter than k.
PassageBundle truncate_topk(const PassageBundle& bundle, std::size_t k);

}  // namespace halograph
