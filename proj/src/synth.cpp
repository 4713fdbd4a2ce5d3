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

#include "halograph/synth.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string>
#include <utility>

namespace halograph {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool chance(double p) { return uniform() < p; }
  // Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = std::uint64_t(hi - lo) + 1;
    return lo + std::int64_t(engine_() % span);
  }
  template <typename T, std::size_t N>
  const T& pick(const std::array<T, N>& items) {
    return items[std::size_t(integer(0, std::int64_t(N) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::array<double, 3> kLabels{0.0, 0.5, 1.0};
constexpr std::array<const char*, 6> kPosTags{"NOUN", "PROPN", "NUM", "VERB", "ADJ", "DET"};
constexpr std::array<const char*, 5> kNerTypes{"PERSON", "DATE", "GPE", "ORG", "CARDINAL"};

std::vector<double> draw_topk(Rng& rng, std::size_t k, double label) {
  std::vector<double> raw(k);
  if (rng.chance(0.05)) {
    std::fill(raw.begin(), raw.end(), 1.0);
  } else {
    // Higher labels flatten the head of the distribution.
    const double peak = 1.0 + 6.0 * (1.0 - label) * rng.uniform();
    for (std::size_t i = 0; i < k; ++i) raw[i] = rng.uniform(0.01, 1.0) * (i == 0 ? peak : 1.0);
  }
  double sum = 0.0;
  for (double v : raw) sum += v;
  const double mass = rng.chance(0.1) ? 1.0 : rng.uniform(0.3, 1.0);
  for (double& v : raw) v = v / sum * mass;
  std::sort(raw.begin(), raw.end(), std::greater<>());
  return raw;
}

PassageBundle synthesize_passage(Rng& rng, std::size_t index, const SynthShape& shape) {
  PassageBundle b;
  b.passage_id = "synth-" + std::to_string(index);
  const auto m = rng.integer(1, std::int64_t(shape.max_sentences));
  std::vector<double> labels;
  for (std::int64_t s = 1; s <= m; ++s) {
    b.sentence_token_counts.push_back(rng.integer(1, std::int64_t(shape.max_tokens_per_sentence)));
    labels.push_back(rng.pick(kLabels));
  }

  std::int64_t position = 0;
  for (std::int64_t s = 1; s <= m; ++s) {
    const std::int64_t n = b.sentence_token_counts[std::size_t(s - 1)];
    for (std::int64_t j = 1; j <= n; ++j) {
      TokenRecord t;
      t.surface = "w" + std::to_string(s) + "_" + std::to_string(j);
      t.sentence_index = s;
      t.within_sentence_index = j;
      t.passage_position = ++position;
      t.topk_probs = draw_topk(rng, shape.k, labels[std::size_t(s - 1)]);
      t.realized_prob = rng.chance(0.7) ? t.topk_probs.front()
                                        : t.topk_probs.front() * rng.uniform(0.05, 1.0);
      t.pos_tag = rng.pick(kPosTags);
      if (rng.chance(0.3)) t.ner_type = rng.pick(kNerTypes);
      b.tokens.push_back(std::move(t));
    }
  }

  for (std::int64_t s = 1; s <= m; ++s) {
    const std::int64_t n = b.sentence_token_counts[std::size_t(s - 1)];
    std::vector<std::string> ids;
    std::int64_t j = 1;
    while (j <= n) {
      if (rng.chance(shape.entity_rate)) {
        const std::int64_t last = std::min(n, j + rng.integer(0, 2));
        EntitySpan e;
        e.entity_id = "e" + std::to_string(s) + "_" + std::to_string(ids.size() + 1);
        e.sentence_index = s;
        e.token_range = {j, last};
        ids.push_back(e.entity_id);
        b.entities.push_back(std::move(e));
        j = last + 1;
      } else {
        ++j;
      }
    }
    if (ids.size() < 2) continue;
    const auto triples = rng.integer(0, std::int64_t(shape.max_triples_per_sentence));
    const std::int64_t offset = b.sentence_offset(s);
    for (std::int64_t t = 0; t < triples; ++t) {
      const auto subject = std::size_t(rng.integer(0, std::int64_t(ids.size()) - 1));
      auto object = std::size_t(rng.integer(0, std::int64_t(ids.size()) - 2));
      if (object >= subject) ++object;
      Triple triple;
      triple.subject = ids[subject];
      triple.object = ids[object];
      triple.relation_token = offset + rng.integer(1, n);
      triple.att_subject_object = rng.uniform(0.01, 1.0);
      triple.att_subject_relation = rng.uniform(0.01, 1.0);
      triple.att_relation_object = rng.uniform(0.01, 1.0);
      b.triples.push_back(std::move(triple));
    }
  }

  std::set<std::pair<std::int64_t, std::int64_t>> nli_pairs;
  for (std::int64_t a = 1; a <= m; ++a) {
    for (std::int64_t c = a + 1; c <= m; ++c) {
      if (!rng.chance(shape.link_rate)) continue;
      const LinkKind kind = rng.chance(0.5) ? LinkKind::kCoreference : LinkKind::kEntityLink;
      b.links.push_back({a, c, kind});
      if (rng.chance(0.1)) b.links.push_back({a, c, LinkKind::kEntityLink});
      nli_pairs.insert({a, c});
      nli_pairs.insert({c, a});
    }
    if (a < m) {
      nli_pairs.insert({a, a + 1});
      nli_pairs.insert({a + 1, a});
    }
  }
  for (const auto& [premise, hypothesis] : nli_pairs) {
    const double hallucinated = labels[std::size_t(hypothesis - 1)];
    b.nli_scores.push_back({premise, hypothesis, std::min(1.0, rng.uniform(0.0, 0.6) + 0.4 * hallucinated)});
  }

  double label_sum = 0.0;
  for (double l : labels) label_sum += l;
  b.sentence_labels = labels;
  b.passage_human_score = label_sum / double(labels.size());
  return b;
}

}  // namespace

std::vector<PassageBundle> synthesize_corpus(std::uint64_t seed, std::size_t n_passages,
                                             const SynthShape& shape) {
  Rng rng(seed);
  std::vector<PassageBundle> out;
  out.reserve(n_passages);
  for (std::size_t i = 0; i < n_passages; ++i) out.push_back(synthesize_passage(rng, i, shape));
  return out;
}

}  // namespace halograph
