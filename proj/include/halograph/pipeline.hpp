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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "halograph/baselines.hpp"
#include "halograph/bundle.hpp"
#include "halograph/config.hpp"
#include "halograph/evaluation.hpp"
#include "halograph/passage_calibration.hpp"
#include "halograph/sentence_uncertainty.hpp"

namespace halograph {

struct SentenceReport {
  SentenceScore score;
  double downstream = 0.0;  // U_s, or the substituted baseline
  double projected = 0.0;
  std::array<double, 4> baselines{};  // sentence_baseline_metrics() order
};

struct PassageValue {
  double raw = 0.0;
  double projected = 0.0;
};

struct PassageReport {
  std::string passage_id;
  std::vector<double> token_uncertainties;
  std::vector<EntityScore> entities;
  std::vector<SentenceReport> sentences;
  PassageValue graph;
  std::optional<PassageValue> adjacent;  // empty when adjacent NLI pairs are missing
  PassageValue average;
  std::vector<std::string> warnings;

  const PassageValue& value(PassageMethod method) const;  // throws DataError if absent
};

struct ProjectionSet {
  ProjectionSpec sentence;
  ProjectionSpec graph;
  ProjectionSpec adjacent;
  ProjectionSpec average;

  const ProjectionSpec& passage(PassageMethod method) const;
};

// Raw scores for one validated bundle; projected fields stay zero. Missing
// NLI pairs needed by the graph method (or by the adjacent method when it is
// the configured passage method) raise DataError.
PassageReport score_passage(const PassageBundle& bundle, const Config& config);

// Fills projected fields in place. Logistic locations default to the corpus
// median of the values being projected.
ProjectionSet project_corpus(std::vector<PassageReport>& reports, const Config& config);

struct CorpusScoring {
  std::vector<PassageReport> passages;
  ProjectionSet projections;
  std::vector<double> seconds;  // wall time per passage
};

CorpusScoring score_corpus(std::span<const PassageBundle> bundles, const Config& config);

nlohmann::json passage_report_to_json(const PassageReport& report, PassageMethod selected);
// Inverse of passage_report_to_json; throws ParseError on a malformed line.
PassageReport passage_report_from_json(const nlohmann::json& j, std::size_t line_number);
std::vector<PassageReport> load_report_file(const std::string& path);
nlohmann::json projection_to_json(const ProjectionSpec& spec);
nlohmann::json projections_to_json(const ProjectionSet& set);

// Bundle labels flattened across passages plus the matching projected scores
// for each method. Throws DataError if a bundle lacks labels.
struct EvalInputs {
  std::vector<double> sentence_labels;
  std::vector<double> passage_human_scores;
};
EvalInputs collect_eval_inputs(std::span<const PassageBundle> bundles);

// Evaluates the configured method from in-memory reports.
EvalResult evaluate_reports(std::span<const PassageReport> reports,
                            std::span<const PassageBundle> bundles, const Config& config);

// Evaluates a sentence baseline: projected baseline values at sentence level
// and their per-passage average at passage level.
EvalResult evaluate_baseline(BaselineMetric metric, std::span<const PassageReport> reports,
                             std::span<const PassageBundle> bundles, const Config& config);

}  // namespace halograph
