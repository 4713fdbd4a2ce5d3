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

#include "halograph/pipeline.hpp"

#include <chrono>
#include <fstream>

#include "halograph/errors.hpp"
#include "halograph/semantic_graph.hpp"
#include "halograph/token_uncertainty.hpp"

namespace halograph {

using nlohmann::json;

namespace {

std::size_t baseline_slot(SentenceMetric metric) {
  switch (metric) {
    case SentenceMetric::kAvgNegLogprob: return 0;
    case SentenceMetric::kMaxNegLogprob: return 1;
    case SentenceMetric::kAvgEntropy: return 2;
    case SentenceMetric::kMaxEntropy: return 3;
    case SentenceMetric::kInterpolated: break;
  }
  throw ContractViolation("interpolated sentence metric has no baseline slot");
}

std::size_t baseline_slot(BaselineMetric metric) {
  const auto& metrics = sentence_baseline_metrics();
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    if (metrics[i] == metric) return i;
  }
  throw ContractViolation("'" + std::string(to_string(metric)) + "' is not a sentence baseline");
}

bool has_adjacent_pairs(const NliTable& nli, std::size_t m) {
  for (std::int64_t i = 1; i < std::int64_t(m); ++i) {
    if (!nli.contains(i, i + 1) || !nli.contains(i + 1, i)) return false;
  }
  return true;
}

std::vector<double> median_source(std::span<const PassageReport> reports, PassageMethod method) {
  std::vector<double> values;
  for (const auto& r : reports) {
    if (method == PassageMethod::kAdjacent && !r.adjacent) continue;
    values.push_back(r.value(method).raw);
  }
  return values;
}

std::vector<double> projected_passages(std::span<const PassageReport> reports,
                                       PassageMethod method) {
  std::vector<double> out;
  for (const auto& r : reports) out.push_back(r.value(method).projected);
  return out;
}

}  // namespace

const PassageValue& PassageReport::value(PassageMethod method) const {
  switch (method) {
    case PassageMethod::kGraph: return graph;
    case PassageMethod::kAverage: return average;
    case PassageMethod::kAdjacent:
      if (!adjacent)
        throw DataError("passage '" + passage_id + "' lacks NLI scores for adjacent sentences");
      return *adjacent;
  }
  return graph;
}

const ProjectionSpec& ProjectionSet::passage(PassageMethod method) const {
  switch (method) {
    case PassageMethod::kGraph: return graph;
    case PassageMethod::kAdjacent: return adjacent;
    case PassageMethod::kAverage: return average;
  }
  return graph;
}

PassageReport score_passage(const PassageBundle& bundle, const Config& config) {
  PassageReport report;
  report.passage_id = bundle.passage_id;

  for (const auto& score : score_tokens(bundle, config.token_metric, &report.warnings))
    report.token_uncertainties.push_back(score.uncertainty);

  const SemanticGraph graph = build_graph(bundle);
  for (std::size_t i = 0; i < bundle.triples.size(); ++i) {
    if (!check_triple_roles(bundle.triples[i], bundle))
      report.warnings.push_back("triples[" + std::to_string(i) + "] fails the role filter");
  }

  SentenceScoring scoring =
      score_sentences(bundle, graph, report.token_uncertainties, config, &report.warnings);
  report.entities = std::move(scoring.entities);

  std::vector<double> downstream;
  std::int64_t offset = 0;
  for (std::size_t s = 0; s < scoring.sentences.size(); ++s) {
    SentenceReport sentence;
    sentence.score = scoring.sentences[s];
    const auto n = std::size_t(bundle.sentence_token_counts[s]);
    std::span<const TokenRecord> tokens(bundle.tokens.data() + offset, n);
    offset += std::int64_t(n);
    const auto& metrics = sentence_baseline_metrics();
    for (std::size_t b = 0; b < metrics.size(); ++b)
      sentence.baselines[b] = sentence_baseline(metrics[b], tokens);
    sentence.downstream = config.sentence_metric == SentenceMetric::kInterpolated
                              ? sentence.score.sentence_uncertainty
                              : sentence.baselines[baseline_slot(config.sentence_metric)];
    downstream.push_back(sentence.downstream);
    report.sentences.push_back(sentence);
  }

  const NliTable nli(bundle.nli_scores);
  report.graph.raw =
      calibrate_graph(graph, downstream, nli, config.isolated_sentence_policy).raw_uncertainty;
  if (has_adjacent_pairs(nli, bundle.sentence_count()) ||
      config.passage_method == PassageMethod::kAdjacent) {
    report.adjacent = PassageValue{calibrate_adjacent(downstream, nli).raw_uncertainty, 0.0};
  } else {
    report.warnings.push_back("adjacent method skipped: NLI scores for adjacent sentences missing");
  }
  report.average.raw = calibrate_average(downstream).raw_uncertainty;
  return report;
}

ProjectionSet project_corpus(std::vector<PassageReport>& reports, const Config& config) {
  std::vector<double> sentence_values;
  for (const auto& r : reports) {
    for (const auto& s : r.sentences) sentence_values.push_back(s.downstream);
  }
  ProjectionSet set;
  set.sentence = make_projection(config.sentence_projection, config.sentence_logistic_mu,
                                 config.sentence_logistic_tau, sentence_values);
  auto passage_spec = [&](PassageMethod method) {
    return make_projection(config.passage_projection, config.passage_logistic_mu,
                           config.passage_logistic_tau, median_source(reports, method));
  };
  set.graph = passage_spec(PassageMethod::kGraph);
  set.adjacent = passage_spec(PassageMethod::kAdjacent);
  set.average = passage_spec(PassageMethod::kAverage);

  for (auto& r : reports) {
    for (auto& s : r.sentences) s.projected = project(s.downstream, set.sentence);
    r.graph.projected = project(r.graph.raw, set.graph);
    if (r.adjacent) r.adjacent->projected = project(r.adjacent->raw, set.adjacent);
    r.average.projected = project(r.average.raw, set.average);
  }
  return set;
}

CorpusScoring score_corpus(std::span<const PassageBundle> bundles, const Config& config) {
  CorpusScoring out;
  out.passages.reserve(bundles.size());
  for (const auto& bundle : bundles) {
    const auto start = std::chrono::steady_clock::now();
    out.passages.push_back(score_passage(bundle, config));
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out.seconds.push_back(elapsed.count());
  }
  out.projections = project_corpus(out.passages, config);
  return out;
}

json passage_report_to_json(const PassageReport& r, PassageMethod selected) {
  json entities = json::array();
  for (const auto& e : r.entities) {
    entities.push_back({{"entity_id", e.entity_id},
                        {"sentence_index", e.sentence_index},
                        {"self_uncertainty", e.self_uncertainty},
                        {"propagated_uncertainty", e.propagated_uncertainty}});
  }
  json sentences = json::array();
  const auto& metrics = sentence_baseline_metrics();
  for (const auto& s : r.sentences) {
    json baselines = json::object();
    for (std::size_t b = 0; b < metrics.size(); ++b)
      baselines[std::string(to_string(metrics[b]))] = s.baselines[b];
    sentences.push_back({{"sentence_index", s.score.sentence_index},
                         {"entity_count", s.score.entity_count},
                         {"entity_uncertainty", s.score.entity_uncertainty},
                         {"global_uncertainty", s.score.global_uncertainty},
                         {"sentence_uncertainty", s.score.sentence_uncertainty},
                         {"score", s.downstream},
                         {"projected", s.projected},
                         {"baselines", baselines}});
  }
  auto value = [](const PassageValue& v) {
    return json{{"raw", v.raw}, {"projected", v.projected}};
  };
  json passage = {{"graph", value(r.graph)},
                  {"adjacent", r.adjacent ? value(*r.adjacent) : json(nullptr)},
                  {"average", value(r.average)}};
  return {{"passage_id", r.passage_id},
          {"token_uncertainties", r.token_uncertainties},
          {"entities", entities},
          {"sentences", sentences},
          {"passage", passage},
          {"selected_method", std::string(to_string(selected))},
          {"warnings", r.warnings}};
}

PassageReport passage_report_from_json(const json& j, std::size_t line_number) {
  try {
    PassageReport r;
    r.passage_id = j.at("passage_id").get<std::string>();
    r.token_uncertainties = j.at("token_uncertainties").get<std::vector<double>>();
    for (const auto& e : j.at("entities")) {
      r.entities.push_back({e.at("entity_id").get<std::string>(),
                            e.at("sentence_index").get<std::int64_t>(),
                            e.at("self_uncertainty").get<double>(),
                            e.at("propagated_uncertainty").get<double>()});
    }
    const auto& metrics = sentence_baseline_metrics();
    for (const auto& s : j.at("sentences")) {
      SentenceReport sr;
      sr.score.sentence_index = s.at("sentence_index").get<std::int64_t>();
      sr.score.entity_count = s.at("entity_count").get<std::size_t>();
      sr.score.entity_uncertainty = s.at("entity_uncertainty").get<double>();
      sr.score.global_uncertainty = s.at("global_uncertainty").get<double>();
      sr.score.sentence_uncertainty = s.at("sentence_uncertainty").get<double>();
      sr.downstream = s.at("score").get<double>();
      sr.projected = s.at("projected").get<double>();
      for (std::size_t b = 0; b < metrics.size(); ++b)
        sr.baselines[b] = s.at("baselines").at(std::string(to_string(metrics[b]))).get<double>();
      r.sentences.push_back(sr);
    }
    auto value = [](const json& v) {
      return PassageValue{v.at("raw").get<double>(), v.at("projected").get<double>()};
    };
    const json& passage = j.at("passage");
    r.graph = value(passage.at("graph"));
    if (!passage.at("adjacent").is_null()) r.adjacent = value(passage.at("adjacent"));
    r.average = value(passage.at("average"));
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(line_number, std::string("malformed report: ") + e.what());
  }
}

std::vector<PassageReport> load_report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open report file '" + path + "'");
  std::vector<PassageReport> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_number, std::string("malformed JSON: ") + e.what());
    }
    out.push_back(passage_report_from_json(j, line_number));
  }
  return out;
}

json projection_to_json(const ProjectionSpec& spec) {
  return {{"kind", std::string(to_string(spec.kind))}, {"mu", spec.mu}, {"tau", spec.tau}};
}

json projections_to_json(const ProjectionSet& set) {
  return {{"sentence", projection_to_json(set.sentence)},
          {"passage",
           {{"graph", projection_to_json(set.graph)},
            {"adjacent", projection_to_json(set.adjacent)},
            {"average", projection_to_json(set.average)}}}};
}

EvalInputs collect_eval_inputs(std::span<const PassageBundle> bundles) {
  EvalInputs in;
  for (const auto& b : bundles) {
    if (!b.sentence_labels || !b.passage_human_score)
      throw DataError("passage '" + b.passage_id + "' has no labels");
    in.sentence_labels.insert(in.sentence_labels.end(), b.sentence_labels->begin(),
                              b.sentence_labels->end());
    in.passage_human_scores.push_back(*b.passage_human_score);
  }
  return in;
}

EvalResult evaluate_reports(std::span<const PassageReport> reports,
                            std::span<const PassageBundle> bundles, const Config& config) {
  if (reports.size() != bundles.size())
    throw DataError("report and bundle files hold different passage counts");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].passage_id != bundles[i].passage_id ||
        reports[i].sentences.size() != bundles[i].sentence_count())
      throw DataError("report line " + std::to_string(i + 1) + " does not match bundle '" +
                      bundles[i].passage_id + "'");
  }
  const EvalInputs in = collect_eval_inputs(bundles);
  std::vector<double> sentence_scores;
  for (const auto& r : reports) {
    for (const auto& s : r.sentences) sentence_scores.push_back(s.projected);
  }
  return evaluate(sentence_scores, in.sentence_labels,
                  projected_passages(reports, config.passage_method), in.passage_human_scores,
                  config.auc);
}

EvalResult evaluate_baseline(BaselineMetric metric, std::span<const PassageReport> reports,
                             std::span<const PassageBundle> bundles, const Config& config) {
  const std::size_t slot = baseline_slot(metric);
  const EvalInputs in = collect_eval_inputs(bundles);
  std::vector<double> sentence_raw;
  std::vector<double> passage_raw;
  for (const auto& r : reports) {
    double sum = 0.0;
    for (const auto& s : r.sentences) {
      sentence_raw.push_back(s.baselines[slot]);
      sum += s.baselines[slot];
    }
    passage_raw.push_back(r.sentences.empty() ? 0.0 : sum / double(r.sentences.size()));
  }
  const ProjectionSpec sentence_spec = make_projection(
      config.sentence_projection, config.sentence_logistic_mu, config.sentence_logistic_tau,
      sentence_raw);
  const ProjectionSpec passage_spec = make_projection(
      config.passage_projection, config.passage_logistic_mu, config.passage_logistic_tau,
      passage_raw);
  for (double& v : sentence_raw) v = project(v, sentence_spec);
  for (double& v : passage_raw) v = project(v, passage_spec);
  return evaluate(sentence_raw, in.sentence_labels, passage_raw, in.passage_human_scores,
                  config.auc);
}

}  // namespace halograph
