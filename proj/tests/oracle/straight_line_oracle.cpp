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

#include "straight_line_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using nlohmann::json;

json params_to_json(const OracleParams& p) {
  return {{"alpha", p.alpha},
          {"beta", p.beta},
          {"lambda", p.lambda},
          {"isolated_sentence_policy", p.skip_isolated ? "skip" : "adjacent-fallback"}};
}

json score_bundle_json(const json& bundle, const OracleParams& p) {
  const json& tokens = bundle["tokens"];
  const json& counts = bundle["sentence_token_counts"];
  const int m = int(counts.size());
  const int len = int(tokens.size());

  // Token uncertainty: (1 + e^(pos/len - 1)) / (max + population variance).
  std::vector<double> tu(len);
  for (int t = 0; t < len; ++t) {
    const json& c = tokens[t]["topk_probs"];
    double mx = -1.0, mean = 0.0;
    for (const auto& v : c) {
      mx = std::max(mx, v.get<double>());
      mean += v.get<double>();
    }
    mean /= double(c.size());
    double var = 0.0;
    for (const auto& v : c) var += (v.get<double>() - mean) * (v.get<double>() - mean);
    var /= double(c.size());
    int pos = tokens[t]["passage_position"].get<int>();
    tu[t] = (1.0 + std::exp(double(pos) / double(len) - 1.0)) / (mx + var);
  }

  // Sentence start offsets.
  std::vector<int> start(m + 1, 0);
  for (int s = 1; s <= m; ++s) start[s] = (s == 1 ? 0 : start[s - 1] + counts[s - 2].get<int>());

  // Entity self-uncertainty: mean over the span.
  std::map<std::string, double> self;
  std::map<std::string, int> sentence_of;
  for (const auto& e : bundle["entities"]) {
    int s = e["sentence_index"].get<int>();
    int a = e["token_range"][0].get<int>();
    int z = e["token_range"][1].get<int>();
    double sum = 0.0;
    for (int j = a; j <= z; ++j) sum += tu[start[s] + j - 1];
    self[e["entity_id"].get<std::string>()] = sum / double(z - a + 1);
    sentence_of[e["entity_id"].get<std::string>()] = s;
  }

  // Propagated uncertainty, single hop from subject self-uncertainty.
  std::map<std::string, double> propagated;
  for (const auto& e : bundle["entities"]) {
    std::string o = e["entity_id"].get<std::string>();
    double intensity = 0.0;
    int count = 0;
    for (const auto& tr : bundle["triples"]) {
      if (tr["object"].get<std::string>() != o) continue;
      intensity += (tr["att_subject_relation"].get<double>() + tr["att_relation_object"].get<double>()) / 2.0;
      ++count;
    }
    double up = 0.0;
    if (count > 0) {
      intensity /= double(count);
      if (intensity < 1e-9) intensity = 1e-9;
      for (const auto& tr : bundle["triples"]) {
        if (tr["object"].get<std::string>() != o) continue;
        up += tr["att_subject_object"].get<double>() / intensity * self[tr["subject"].get<std::string>()];
      }
    }
    propagated[o] = up;
  }

  std::vector<double> ue(m), ug(m), us(m);
  for (int s = 1; s <= m; ++s) {
    // Global: type-7 quantile of the sentence's token uncertainties.
    std::vector<double> xs(tu.begin() + start[s], tu.begin() + start[s] + counts[s - 1].get<int>());
    std::sort(xs.begin(), xs.end());
    double h = double(xs.size() - 1) * p.alpha;
    int lo = int(std::floor(h));
    double g = (lo + 1 < int(xs.size())) ? xs[lo] + (h - lo) * (xs[lo + 1] - xs[lo]) : xs.back();
    ug[s - 1] = g;

    double sum = 0.0;
    int n_entities = 0;
    for (const auto& e : bundle["entities"]) {
      if (e["sentence_index"].get<int>() != s) continue;
      std::string id = e["entity_id"].get<std::string>();
      sum += self[id] + p.beta * propagated[id];
      ++n_entities;
    }
    ue[s - 1] = n_entities > 0 ? sum / double(n_entities) : g;
    us[s - 1] = p.lambda * ue[s - 1] + (1.0 - p.lambda) * ug[s - 1];
  }

  std::map<std::pair<int, int>, double> nli;
  for (const auto& n : bundle["nli_scores"])
    nli[{n["premise_sentence"].get<int>(), n["hypothesis_sentence"].get<int>()}] =
        n["contradiction_prob"].get<double>();

  double average = 0.0;
  for (double v : us) average += v;
  average /= double(m);

  // Graph calibration.
  std::vector<std::set<int>> nb(m + 1);
  for (const auto& l : bundle["links"]) {
    int a = l["sentence_a"].get<int>(), b = l["sentence_b"].get<int>();
    nb[a].insert(b);
    nb[b].insert(a);
  }
  bool any_link = bundle["links"].size() > 0;
  double graph = average;
  if (any_link) {
    double num = 0.0;
    int den = 0;
    for (int i = 1; i <= m; ++i) {
      std::set<int> ni = nb[i];
      if (ni.empty() && !p.skip_isolated) {
        if (i > 1) ni.insert(i - 1);
        if (i < m) ni.insert(i + 1);
      }
      for (int j : ni) {
        num += us[i - 1] * nli.at({j, i});
        ++den;
      }
    }
    graph = den > 0 ? num / double(den) : average;
  }

  // Adjacent calibration.
  json adjacent = nullptr;
  {
    double num = 0.0;
    int den = 0;
    bool complete = true;
    for (int i = 1; i <= m; ++i) {
      for (int j : {i - 1, i + 1}) {
        if (j < 1 || j > m) continue;
        auto it = nli.find({j, i});
        if (it == nli.end()) {
          complete = false;
          continue;
        }
        num += us[i - 1] * it->second;
        ++den;
      }
    }
    if (complete) adjacent = den > 0 ? num / double(den) : average;
  }

  return {{"passage_id", bundle["passage_id"]},
          {"token_uncertainties", tu},
          {"entity_uncertainty", ue},
          {"global_uncertainty", ug},
          {"sentence_uncertainty", us},
          {"passage_graph", graph},
          {"passage_adjacent", adjacent},
          {"passage_average", average}};
}

}  // namespace oracle
