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

#include "halograph/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "halograph/errors.hpp"

namespace halograph {

using nlohmann::json;

namespace {

constexpr double kProbSlack = 1e-9;

// Field accessors that turn shape problems into ParseError with the line.
class Reader {
 public:
  explicit Reader(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw ParseError(line_, path + ": " + what);
  }

  const json& field(const json& obj, const char* key, const std::string& path) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required field");
    return *it;
  }

  const json& object(const json& j, const std::string& path) const {
    if (!j.is_object()) fail(path, "expected object");
    return j;
  }

  const json& array(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected array");
    return j;
  }

  std::int64_t integer(const json& j, const std::string& path) const {
    if (!j.is_number_integer()) fail(path, "expected integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > INT64_MAX)
      fail(path, "integer out of range");
    return j.get<std::int64_t>();
  }

  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected number");
    return j.get<double>();
  }

  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected string");
    return j.get<std::string>();
  }

  std::optional<std::string> optional_string(const json& obj, const char* key,
                                             const std::string& path) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return string(*it, path + "." + key);
  }

  void only_keys(const json& obj, std::initializer_list<const char*> keys,
                 const std::string& path) const {
    for (const auto& item : obj.items()) {
      bool known = std::any_of(keys.begin(), keys.end(),
                               [&](const char* k) { return item.key() == k; });
      if (!known) fail(path + "." + item.key(), "unknown field");
    }
  }

 private:
  std::size_t line_;
};

std::string at(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

TokenRecord read_token(const Reader& r, const json& j, const std::string& path) {
  r.object(j, path);
  r.only_keys(j,
              {"surface", "sentence_index", "within_sentence_index", "passage_position",
               "topk_probs", "realized_prob", "pos_tag", "ner_type"},
              path);
  TokenRecord t;
  t.surface = r.string(r.field(j, "surface", path), path + ".surface");
  t.sentence_index = r.integer(r.field(j, "sentence_index", path), path + ".sentence_index");
  t.within_sentence_index =
      r.integer(r.field(j, "within_sentence_index", path), path + ".within_sentence_index");
  t.passage_position =
      r.integer(r.field(j, "passage_position", path), path + ".passage_position");
  const json& probs = r.array(r.field(j, "topk_probs", path), path + ".topk_probs");
  for (std::size_t i = 0; i < probs.size(); ++i)
    t.topk_probs.push_back(r.number(probs[i], at(path + ".topk_probs", i)));
  t.realized_prob = r.number(r.field(j, "realized_prob", path), path + ".realized_prob");
  t.pos_tag = r.optional_string(j, "pos_tag", path);
  t.ner_type = r.optional_string(j, "ner_type", path);
  return t;
}

EntitySpan read_entity(const Reader& r, const json& j, const std::string& path) {
  r.object(j, path);
  r.only_keys(j, {"entity_id", "sentence_index", "token_range"}, path);
  EntitySpan e;
  e.entity_id = r.string(r.field(j, "entity_id", path), path + ".entity_id");
  e.sentence_index = r.integer(r.field(j, "sentence_index", path), path + ".sentence_index");
  const json& range = r.array(r.field(j, "token_range", path), path + ".token_range");
  if (range.size() != 2) r.fail(path + ".token_range", "expected [first, last]");
  e.token_range.first = r.integer(range[0], path + ".token_range[0]");
  e.token_range.last = r.integer(range[1], path + ".token_range[1]");
  return e;
}

Triple read_triple(const Reader& r, const json& j, const std::string& path) {
  r.object(j, path);
  r.only_keys(j,
              {"subject", "relation_token", "object", "att_subject_object",
               "att_subject_relation", "att_relation_object"},
              path);
  Triple t;
  t.subject = r.string(r.field(j, "subject", path), path + ".subject");
  t.relation_token = r.integer(r.field(j, "relation_token", path), path + ".relation_token");
  t.object = r.string(r.field(j, "object", path), path + ".object");
  t.att_subject_object =
      r.number(r.field(j, "att_subject_object", path), path + ".att_subject_object");
  t.att_subject_relation =
      r.number(r.field(j, "att_subject_relation", path), path + ".att_subject_relation");
  t.att_relation_object =
      r.number(r.field(j, "att_relation_object", path), path + ".att_relation_object");
  return t;
}

SentenceLink read_link(const Reader& r, const json& j, const std::string& path) {
  r.object(j, path);
  r.only_keys(j, {"sentence_a", "sentence_b", "kind"}, path);
  SentenceLink l;
  l.sentence_a = r.integer(r.field(j, "sentence_a", path), path + ".sentence_a");
  l.sentence_b = r.integer(r.field(j, "sentence_b", path), path + ".sentence_b");
  std::string kind = r.string(r.field(j, "kind", path), path + ".kind");
  if (kind == "coreference") {
    l.kind = LinkKind::kCoreference;
  } else if (kind == "entity-link") {
    l.kind = LinkKind::kEntityLink;
  } else {
    r.fail(path + ".kind", "expected 'coreference' or 'entity-link', got '" + kind + "'");
  }
  return l;
}

NliScore read_nli(const Reader& r, const json& j, const std::string& path) {
  r.object(j, path);
  r.only_keys(j, {"premise_sentence", "hypothesis_sentence", "contradiction_prob"}, path);
  NliScore n;
  n.premise_sentence =
      r.integer(r.field(j, "premise_sentence", path), path + ".premise_sentence");
  n.hypothesis_sentence =
      r.integer(r.field(j, "hypothesis_sentence", path), path + ".hypothesis_sentence");
  n.contradiction_prob =
      r.number(r.field(j, "contradiction_prob", path), path + ".contradiction_prob");
  return n;
}

template <typename T, typename Fn>
std::vector<T> read_list(const Reader& r, const json& root, const char* key, Fn&& fn) {
  const std::string path = key;
  const json& arr = r.array(r.field(root, key, "$"), path);
  std::vector<T> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(fn(r, arr[i], at(path, i)));
  return out;
}

void resolve_references(const PassageBundle& b) {
  std::unordered_set<std::string> ids;
  for (const auto& e : b.entities) {
    if (!ids.insert(e.entity_id).second)
      throw IntegrityError("duplicate entity_id '" + e.entity_id + "'");
  }
  for (std::size_t i = 0; i < b.triples.size(); ++i) {
    const Triple& t = b.triples[i];
    const std::string where = "triples[" + std::to_string(i) + "]";
    if (!ids.count(t.subject))
      throw IntegrityError(where + ".subject references unknown entity_id '" + t.subject + "'");
    if (!ids.count(t.object))
      throw IntegrityError(where + ".object references unknown entity_id '" + t.object + "'");
    if (b.token_at(t.relation_token) == nullptr)
      throw IntegrityError(where + ".relation_token references missing token position " +
                           std::to_string(t.relation_token));
  }
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view to_string(LinkKind kind) {
  return kind == LinkKind::kCoreference ? "coreference" : "entity-link";
}

const EntitySpan* PassageBundle::find_entity(std::string_view entity_id) const {
  for (const auto& e : entities) {
    if (e.entity_id == entity_id) return &e;
  }
  return nullptr;
}

const TokenRecord* PassageBundle::token_at(std::int64_t passage_position) const {
  if (passage_position < 1 || static_cast<std::size_t>(passage_position) > tokens.size())
    return nullptr;
  return &tokens[static_cast<std::size_t>(passage_position - 1)];
}

std::int64_t PassageBundle::sentence_offset(std::int64_t sentence_index) const {
  std::int64_t offset = 0;
  for (std::int64_t s = 1; s < sentence_index && s <= std::int64_t(sentence_count()); ++s)
    offset += sentence_token_counts[static_cast<std::size_t>(s - 1)];
  return offset;
}

PassageBundle load_bundle(std::string_view line, std::size_t line_number) {
  Reader r(line_number);
  json root;
  try {
    root = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_number, std::string("malformed JSON: ") + e.what());
  }
  r.object(root, "$");
  r.only_keys(root,
              {"format_version", "passage_id", "sentence_token_counts", "tokens", "entities",
               "triples", "links", "nli_scores", "sentence_labels", "passage_human_score",
               "metadata"},
              "$");

  std::int64_t version = r.integer(r.field(root, "format_version", "$"), "format_version");
  if (version != kFormatVersion)
    r.fail("format_version", "unsupported version " + std::to_string(version));

  PassageBundle b;
  b.passage_id = r.string(r.field(root, "passage_id", "$"), "passage_id");
  const json& counts = r.array(r.field(root, "sentence_token_counts", "$"),
                               "sentence_token_counts");
  for (std::size_t i = 0; i < counts.size(); ++i)
    b.sentence_token_counts.push_back(r.integer(counts[i], at("sentence_token_counts", i)));

  b.tokens = read_list<TokenRecord>(r, root, "tokens", read_token);
  b.entities = read_list<EntitySpan>(r, root, "entities", read_entity);
  b.triples = read_list<Triple>(r, root, "triples", read_triple);
  b.links = read_list<SentenceLink>(r, root, "links", read_link);
  b.nli_scores = read_list<NliScore>(r, root, "nli_scores", read_nli);

  if (auto it = root.find("sentence_labels"); it != root.end() && !it->is_null()) {
    const json& labels = r.array(*it, "sentence_labels");
    std::vector<double> values;
    for (std::size_t i = 0; i < labels.size(); ++i)
      values.push_back(r.number(labels[i], at("sentence_labels", i)));
    b.sentence_labels = std::move(values);
  }
  if (auto it = root.find("passage_human_score"); it != root.end() && !it->is_null())
    b.passage_human_score = r.number(*it, "passage_human_score");

  resolve_references(b);
  return b;
}

std::vector<PassageBundle> load_bundles(std::istream& in) {
  std::vector<PassageBundle> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(load_bundle(line, line_number));
  }
  return out;
}

std::vector<PassageBundle> load_bundle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open bundle file '" + path + "'");
  return load_bundles(in);
}

json bundle_to_json(const PassageBundle& b) {
  json root;
  root["format_version"] = kFormatVersion;
  root["passage_id"] = b.passage_id;
  root["sentence_token_counts"] = b.sentence_token_counts;
  json tokens = json::array();
  for (const auto& t : b.tokens) {
    json jt;
    jt["surface"] = t.surface;
    jt["sentence_index"] = t.sentence_index;
    jt["within_sentence_index"] = t.within_sentence_index;
    jt["passage_position"] = t.passage_position;
    jt["topk_probs"] = t.topk_probs;
    jt["realized_prob"] = t.realized_prob;
    if (t.pos_tag) jt["pos_tag"] = *t.pos_tag;
    if (t.ner_type) jt["ner_type"] = *t.ner_type;
    tokens.push_back(std::move(jt));
  }
  root["tokens"] = std::move(tokens);
  json entities = json::array();
  for (const auto& e : b.entities) {
    entities.push_back({{"entity_id", e.entity_id},
                        {"sentence_index", e.sentence_index},
                        {"token_range", {e.token_range.first, e.token_range.last}}});
  }
  root["entities"] = std::move(entities);
  json triples = json::array();
  for (const auto& t : b.triples) {
    triples.push_back({{"subject", t.subject},
                       {"relation_token", t.relation_token},
                       {"object", t.object},
                       {"att_subject_object", t.att_subject_object},
                       {"att_subject_relation", t.att_subject_relation},
                       {"att_relation_object", t.att_relation_object}});
  }
  root["triples"] = std::move(triples);
  json links = json::array();
  for (const auto& l : b.links) {
    links.push_back({{"sentence_a", l.sentence_a},
                     {"sentence_b", l.sentence_b},
                     {"kind", std::string(to_string(l.kind))}});
  }
  root["links"] = std::move(links);
  json nli = json::array();
  for (const auto& n : b.nli_scores) {
    nli.push_back({{"premise_sentence", n.premise_sentence},
                   {"hypothesis_sentence", n.hypothesis_sentence},
                   {"contradiction_prob", n.contradiction_prob}});
  }
  root["nli_scores"] = std::move(nli);
  if (b.sentence_labels) root["sentence_labels"] = *b.sentence_labels;
  if (b.passage_human_score) root["passage_human_score"] = *b.passage_human_score;
  return root;
}

std::string serialize_bundle(const PassageBundle& bundle) {
  return bundle_to_json(bundle).dump();
}

std::vector<Violation> validate_bundle(const PassageBundle& b, std::size_t expected_k) {
  std::vector<Violation> out;
  auto add = [&out](std::string field, std::string rule, std::string detail) {
    out.push_back({std::move(field), std::move(rule), std::move(detail)});
  };
  const auto m = static_cast<std::int64_t>(b.sentence_count());
  auto valid_sentence = [m](std::int64_t s) { return s >= 1 && s <= m; };
  auto count_of = [&b](std::int64_t s) {
    return b.sentence_token_counts[static_cast<std::size_t>(s - 1)];
  };

  if (m < 1) add("sentence_token_counts", "non-empty", "passage must have at least one sentence");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < b.sentence_token_counts.size(); ++i) {
    const std::int64_t n = b.sentence_token_counts[i];
    if (n < 1) {
      add(at("sentence_token_counts", i), "positive",
          "sentence " + std::to_string(i + 1) + " has " + std::to_string(n) + " tokens");
    } else {
      total += n;
    }
  }
  if (total != std::int64_t(b.tokens.size())) {
    add("tokens", "length-matches-counts",
        "sum of sentence_token_counts is " + std::to_string(total) + " but " +
            std::to_string(b.tokens.size()) + " tokens given");
  }

  for (std::size_t idx = 0; idx < b.tokens.size(); ++idx) {
    const TokenRecord& t = b.tokens[idx];
    const std::string path = at("tokens", idx);
    if (t.passage_position != std::int64_t(idx) + 1) {
      add(path + ".passage_position", "passage-order",
          "expected " + std::to_string(idx + 1) + ", got " + std::to_string(t.passage_position));
    }
    if (!valid_sentence(t.sentence_index)) {
      add(path + ".sentence_index", "valid-sentence",
          "sentence " + std::to_string(t.sentence_index) + " does not exist");
    } else {
      const std::int64_t n = count_of(t.sentence_index);
      if (t.within_sentence_index < 1 || t.within_sentence_index > n) {
        add(path + ".within_sentence_index", "within-sentence-range",
            std::to_string(t.within_sentence_index) + " outside [1, " + std::to_string(n) + "]");
      } else {
        const std::int64_t expected = b.sentence_offset(t.sentence_index) + t.within_sentence_index;
        if (t.passage_position != expected) {
          add(path + ".passage_position", "consistent-with-sentence-lengths",
              "token (" + std::to_string(t.sentence_index) + "," +
                  std::to_string(t.within_sentence_index) + ") must sit at position " +
                  std::to_string(expected));
        }
      }
    }
    if (t.topk_probs.size() != expected_k) {
      add(path + ".topk_probs", "length-equals-k",
          "expected " + std::to_string(expected_k) + " probabilities, got " +
              std::to_string(t.topk_probs.size()));
    }
    double sum = 0.0;
    bool all_probs = true;
    for (std::size_t i = 0; i < t.topk_probs.size(); ++i) {
      const double p = t.topk_probs[i];
      if (!is_probability(p)) {
        all_probs = false;
        add(at(path + ".topk_probs", i), "probability-range", "value outside [0,1]");
      } else {
        sum += p;
      }
    }
    if (all_probs) {
      if (!std::is_sorted(t.topk_probs.begin(), t.topk_probs.end(), std::greater<>())) {
        add(path + ".topk_probs", "descending", "top-k probabilities must be sorted descending");
      }
      if (sum > 1.0 + kProbSlack) {
        add(path + ".topk_probs", "sum-at-most-one", "top-k mass is " + std::to_string(sum));
      }
    }
    if (!is_probability(t.realized_prob)) {
      add(path + ".realized_prob", "probability-range", "value outside [0,1]");
    } else if (!t.topk_probs.empty() && all_probs &&
               t.realized_prob > t.topk_probs.front() + kProbSlack) {
      add(path + ".realized_prob", "at-most-top1",
          "realized probability exceeds the top-1 probability");
    }
  }

  // Entities: unique ids, valid ranges, no overlap within a sentence.
  std::set<std::string> ids;
  std::map<std::int64_t, std::vector<std::pair<TokenRange, std::string>>> spans_by_sentence;
  for (std::size_t i = 0; i < b.entities.size(); ++i) {
    const EntitySpan& e = b.entities[i];
    const std::string path = at("entities", i);
    if (!ids.insert(e.entity_id).second)
      add(path + ".entity_id", "unique", "duplicate entity_id '" + e.entity_id + "'");
    if (!valid_sentence(e.sentence_index)) {
      add(path + ".sentence_index", "valid-sentence",
          "sentence " + std::to_string(e.sentence_index) + " does not exist");
      continue;
    }
    const std::int64_t n = count_of(e.sentence_index);
    if (e.token_range.first < 1 || e.token_range.last > n ||
        e.token_range.first > e.token_range.last) {
      add(path + ".token_range", "contiguous-within-sentence",
          "[" + std::to_string(e.token_range.first) + ", " + std::to_string(e.token_range.last) +
              "] is not a non-empty interval inside [1, " + std::to_string(n) + "]");
      continue;
    }
    spans_by_sentence[e.sentence_index].push_back({e.token_range, e.entity_id});
  }
  for (auto& [sentence, spans] : spans_by_sentence) {
    std::sort(spans.begin(), spans.end(),
              [](const auto& x, const auto& y) { return x.first.first < y.first.first; });
    for (std::size_t i = 1; i < spans.size(); ++i) {
      if (spans[i].first.first <= spans[i - 1].first.last) {
        add("entities", "no-overlap",
            "entities '" + spans[i - 1].second + "' and '" + spans[i].second +
                "' overlap in sentence " + std::to_string(sentence));
      }
    }
  }

  for (std::size_t i = 0; i < b.triples.size(); ++i) {
    const Triple& t = b.triples[i];
    const std::string path = at("triples", i);
    const EntitySpan* subject = b.find_entity(t.subject);
    const EntitySpan* object = b.find_entity(t.object);
    const TokenRecord* relation = b.token_at(t.relation_token);
    if (!subject) add(path + ".subject", "resolves", "unknown entity_id '" + t.subject + "'");
    if (!object) add(path + ".object", "resolves", "unknown entity_id '" + t.object + "'");
    if (!relation)
      add(path + ".relation_token", "resolves",
          "no token at position " + std::to_string(t.relation_token));
    if (subject && object && relation) {
      if (subject->sentence_index != object->sentence_index ||
          subject->sentence_index != relation->sentence_index) {
        add(path, "same-sentence", "subject, relation and object must share one sentence");
      }
    }
    for (auto [name, value] : {std::pair{"att_subject_object", t.att_subject_object},
                               std::pair{"att_subject_relation", t.att_subject_relation},
                               std::pair{"att_relation_object", t.att_relation_object}}) {
      if (!std::isfinite(value) || value < 0.0)
        add(path + "." + name, "finite-non-negative", "attention must be finite and >= 0");
    }
  }

  std::set<std::pair<std::int64_t, std::int64_t>> required_pairs;
  for (std::size_t i = 0; i < b.links.size(); ++i) {
    const SentenceLink& l = b.links[i];
    const std::string path = at("links", i);
    if (!valid_sentence(l.sentence_a) || !valid_sentence(l.sentence_b)) {
      add(path, "valid-sentences",
          "link (" + std::to_string(l.sentence_a) + "," + std::to_string(l.sentence_b) +
              ") references a missing sentence");
      continue;
    }
    if (l.sentence_a == l.sentence_b) {
      add(path, "distinct", "link connects sentence " + std::to_string(l.sentence_a) + " to itself");
      continue;
    }
    if (l.sentence_a > l.sentence_b) add(path, "ordered", "links must be stored with a < b");
    required_pairs.insert({l.sentence_a, l.sentence_b});
    required_pairs.insert({l.sentence_b, l.sentence_a});
  }

  std::set<std::pair<std::int64_t, std::int64_t>> provided_pairs;
  for (std::size_t i = 0; i < b.nli_scores.size(); ++i) {
    const NliScore& n = b.nli_scores[i];
    const std::string path = at("nli_scores", i);
    if (!valid_sentence(n.premise_sentence) || !valid_sentence(n.hypothesis_sentence) ||
        n.premise_sentence == n.hypothesis_sentence) {
      add(path, "valid-sentences",
          "pair (" + std::to_string(n.premise_sentence) + "," +
              std::to_string(n.hypothesis_sentence) + ") is not a pair of distinct sentences");
    }
    if (!is_probability(n.contradiction_prob))
      add(path + ".contradiction_prob", "probability-range", "value outside [0,1]");
    if (!provided_pairs.insert({n.premise_sentence, n.hypothesis_sentence}).second) {
      add(path, "one-per-ordered-pair",
          "duplicate score for ordered pair (" + std::to_string(n.premise_sentence) + "," +
              std::to_string(n.hypothesis_sentence) + ")");
    }
  }
  for (const auto& [premise, hypothesis] : required_pairs) {
    if (!provided_pairs.count({premise, hypothesis})) {
      add("nli_scores", "covers-linked-pairs",
          "missing ordered pair (" + std::to_string(premise) + "," + std::to_string(hypothesis) +
              ")");
    }
  }

  if (b.sentence_labels) {
    const auto& labels = *b.sentence_labels;
    if (std::int64_t(labels.size()) != m) {
      add("sentence_labels", "length-equals-m",
          "expected " + std::to_string(m) + " labels, got " + std::to_string(labels.size()));
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != 0.0 && labels[i] != 0.5 && labels[i] != 1.0)
        add(at("sentence_labels", i), "label-domain", "label must be 0, 0.5 or 1");
    }
  }
  if (b.passage_human_score && !is_probability(*b.passage_human_score))
    add("passage_human_score", "probability-range", "value outside [0,1]");

  return out;
}

json violations_to_json(const std::vector<Violation>& violations) {
  json arr = json::array();
  for (const auto& v : violations)
    arr.push_back({{"field", v.field}, {"rule", v.rule}, {"detail", v.detail}});
  return arr;
}

PassageBundle truncate_topk(const PassageBundle& bundle, std::size_t k) {
  PassageBundle out = bundle;
  for (auto& t : out.tokens) {
    if (t.topk_probs.size() < k) {
      throw ContractViolation("token at position " + std::to_string(t.passage_position) +
                              " stores only " + std::to_string(t.topk_probs.size()) +
                              " probabilities, cannot take top-" + std::to_string(k));
    }
    t.topk_probs.resize(k);
  }
  return out;
}

}  // namespace halograph
