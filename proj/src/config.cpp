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

#include "halograph/config.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "halograph/errors.hpp"

namespace halograph {
namespace {

template <typename Enum, std::size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<ProjectionKind, 3> kProjectionNames{{
    {ProjectionKind::kInverse, "inverse"},
    {ProjectionKind::kSigmoid, "sigmoid"},
    {ProjectionKind::kLogistic, "logistic"},
}};

constexpr NameTable<IsolatedSentencePolicy, 2> kIsolatedNames{{
    {IsolatedSentencePolicy::kAdjacentFallback, "adjacent-fallback"},
    {IsolatedSentencePolicy::kSkip, "skip"},
}};

constexpr NameTable<PassageMethod, 3> kMethodNames{{
    {PassageMethod::kGraph, "graph"},
    {PassageMethod::kAdjacent, "adjacent"},
    {PassageMethod::kAverage, "average"},
}};

constexpr NameTable<AucKind, 2> kAucNames{{
    {AucKind::kRoc, "roc"},
    {AucKind::kPr, "pr"},
}};

constexpr NameTable<TokenMetric, 2> kTokenMetricNames{{
    {TokenMetric::kDecayStatistic, "ours"},
    {TokenMetric::kVanillaLogprob, "vanilla_logprob_token"},
}};

constexpr NameTable<SentenceMetric, 5> kSentenceMetricNames{{
    {SentenceMetric::kInterpolated, "ours"},
    {SentenceMetric::kAvgNegLogprob, "avg_neg_logprob"},
    {SentenceMetric::kMaxNegLogprob, "max_neg_logprob"},
    {SentenceMetric::kAvgEntropy, "avg_entropy"},
    {SentenceMetric::kMaxEntropy, "max_entropy"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const NameTable<Enum, N>& table, Enum value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename Enum, std::size_t N>
Enum parse_name(const NameTable<Enum, N>& table, std::string_view name,
                std::string_view what) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  throw std::invalid_argument("unknown " + std::string(what) + " '" +
                              std::string(name) + "'");
}

}  // namespace

std::string_view to_string(ProjectionKind kind) { return name_of(kProjectionNames, kind); }
std::string_view to_string(IsolatedSentencePolicy policy) { return name_of(kIsolatedNames, policy); }
std::string_view to_string(PassageMethod method) { return name_of(kMethodNames, method); }
std::string_view to_string(AucKind kind) { return name_of(kAucNames, kind); }
std::string_view to_string(TokenMetric metric) { return name_of(kTokenMetricNames, metric); }
std::string_view to_string(SentenceMetric metric) { return name_of(kSentenceMetricNames, metric); }

ProjectionKind parse_projection_kind(std::string_view name) {
  return parse_name(kProjectionNames, name, "projection");
}
IsolatedSentencePolicy parse_isolated_policy(std::string_view name) {
  return parse_name(kIsolatedNames, name, "isolated-sentence policy");
}
PassageMethod parse_passage_method(std::string_view name) {
  return parse_name(kMethodNames, name, "passage method");
}
AucKind parse_auc_kind(std::string_view name) {
  return parse_name(kAucNames, name, "auc kind");
}
TokenMetric parse_token_metric(std::string_view name) {
  return parse_name(kTokenMetricNames, name, "token metric");
}
SentenceMetric parse_sentence_metric(std::string_view name) {
  return parse_name(kSentenceMetricNames, name, "sentence metric");
}

void check_config(const Config& config) {
  auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!in_unit(config.alpha)) throw ContractViolation("alpha must lie in [0,1]");
  if (!std::isfinite(config.beta) || config.beta < 0.0)
    throw ContractViolation("beta must be finite and >= 0");
  if (!in_unit(config.lambda)) throw ContractViolation("lambda must lie in [0,1]");
  if (config.k < 1) throw ContractViolation("top-k size must be >= 1");
  if (!(config.sentence_logistic_tau > 0.0) || !(config.passage_logistic_tau > 0.0))
    throw ContractViolation("logistic tau must be > 0");
}

bool is_default_point(const Config& config) {
  return config.alpha == 0.8 && config.beta == 0.65 && config.lambda == 0.7 &&
         config.k == 3;
}

nlohmann::json config_to_json(const Config& config) {
  nlohmann::json j;
  j["alpha"] = config.alpha;
  j["beta"] = config.beta;
  j["lambda"] = config.lambda;
  j["top_k"] = config.k;
  j["sentence_projection"] = to_string(config.sentence_projection);
  j["passage_projection"] = to_string(config.passage_projection);
  j["sentence_logistic_mu"] = config.sentence_logistic_mu
                                  ? nlohmann::json(*config.sentence_logistic_mu)
                                  : nlohmann::json(nullptr);
  j["passage_logistic_mu"] = config.passage_logistic_mu
                                 ? nlohmann::json(*config.passage_logistic_mu)
                                 : nlohmann::json(nullptr);
  j["sentence_logistic_tau"] = config.sentence_logistic_tau;
  j["passage_logistic_tau"] = config.passage_logistic_tau;
  j["isolated_sentence_policy"] = to_string(config.isolated_sentence_policy);
  j["passage_method"] = to_string(config.passage_method);
  j["auc"] = to_string(config.auc);
  j["token_metric"] = to_string(config.token_metric);
  j["sentence_metric"] = to_string(config.sentence_metric);
  return j;
}

void apply_config_json(const nlohmann::json& j, Config& config) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "alpha") {
      config.alpha = value.get<double>();
    } else if (key == "beta") {
      config.beta = value.get<double>();
    } else if (key == "lambda") {
      config.lambda = value.get<double>();
    } else if (key == "top_k" || key == "k") {
      config.k = value.get<std::size_t>();
    } else if (key == "sentence_projection") {
      config.sentence_projection = parse_projection_kind(value.get<std::string>());
    } else if (key == "passage_projection") {
      config.passage_projection = parse_projection_kind(value.get<std::string>());
    } else if (key == "sentence_logistic_mu") {
      config.sentence_logistic_mu =
          value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
    } else if (key == "passage_logistic_mu") {
      config.passage_logistic_mu =
          value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
    } else if (key == "sentence_logistic_tau") {
      config.sentence_logistic_tau = value.get<double>();
    } else if (key == "passage_logistic_tau") {
      config.passage_logistic_tau = value.get<double>();
    } else if (key == "isolated_sentence_policy") {
      config.isolated_sentence_policy = parse_isolated_policy(value.get<std::string>());
    } else if (key == "passage_method") {
      config.passage_method = parse_passage_method(value.get<std::string>());
    } else if (key == "auc") {
      config.auc = parse_auc_kind(value.get<std::string>());
    } else if (key == "token_metric") {
      config.token_metric = parse_token_metric(value.get<std::string>());
    } else if (key == "sentence_metric") {
      config.sentence_metric = parse_sentence_metric(value.get<std::string>());
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

}  // namespace halograph
