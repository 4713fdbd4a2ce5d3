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

#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "halograph/baselines.hpp"
#include "halograph/bundle.hpp"
#include "halograph/config.hpp"
#include "halograph/errors.hpp"
#include "halograph/evaluation.hpp"
#include "halograph/pipeline.hpp"
#include "halograph/semantic_graph.hpp"
#include "halograph/synth.hpp"
#include "json.hpp"
#include "straight_line_oracle.hpp"

namespace halograph::cli {
namespace {

using nlohmann::json;

constexpr const char* kConfigEnv = "HALOGRAPH_CONFIG";

// Thrown from command bodies to leave with a specific exit code.
struct Exit {
  int code;
};

struct ConfigFlags {
  double alpha = 0;
  double beta = 0;
  double lambda = 0;
  std::size_t k = 0;
  std::string sentence_projection;
  std::string passage_projection;
  double sentence_mu = 0;
  double passage_mu = 0;
  double sentence_tau = 0;
  double passage_tau = 0;
  std::string passage_method;
  std::string auc;
  std::string isolated;
  std::string token_metric;
  std::string sentence_metric;
  std::vector<std::pair<CLI::Option*, std::function<void(Config&)>>> bound;
};

template <typename T, typename Apply>
void bind_option(CLI::App* app, ConfigFlags& flags, const std::string& name, T& target,
          const std::string& help, Apply apply) {
  CLI::Option* opt = app->add_option(name, target, help);
  flags.bound.emplace_back(opt, [&target, apply](Config& c) { apply(c, target); });
}

void add_config_flags(CLI::App* app, ConfigFlags& f) {
  bind_option(app, f, "--alpha", f.alpha, "quantile level for global uncertainty",
       [](Config& c, double v) { c.alpha = v; });
  bind_option(app, f, "--beta", f.beta, "weight of propagated entity uncertainty",
       [](Config& c, double v) { c.beta = v; });
  bind_option(app, f, "--lambda", f.lambda, "interpolation weight of entity uncertainty",
       [](Config& c, double v) { c.lambda = v; });
  bind_option(app, f, "--top-k", f.k, "top-k size every bundle must carry",
       [](Config& c, std::size_t v) { c.k = v; });
  bind_option(app, f, "--projection-sentence", f.sentence_projection, "inverse | sigmoid | logistic",
       [](Config& c, const std::string& v) { c.sentence_projection = parse_projection_kind(v); });
  bind_option(app, f, "--projection-passage", f.passage_projection, "inverse | sigmoid | logistic",
       [](Config& c, const std::string& v) { c.passage_projection = parse_projection_kind(v); });
  bind_option(app, f, "--sentence-logistic-mu", f.sentence_mu, "logistic location (default: corpus median)",
       [](Config& c, double v) { c.sentence_logistic_mu = v; });
  bind_option(app, f, "--passage-logistic-mu", f.passage_mu, "logistic location (default: corpus median)",
       [](Config& c, double v) { c.passage_logistic_mu = v; });
  bind_option(app, f, "--sentence-logistic-tau", f.sentence_tau, "logistic scale",
       [](Config& c, double v) { c.sentence_logistic_tau = v; });
  bind_option(app, f, "--passage-logistic-tau", f.passage_tau, "logistic scale",
       [](Config& c, double v) { c.passage_logistic_tau = v; });
  bind_option(app, f, "--passage-method", f.passage_method, "graph | adjacent | average",
       [](Config& c, const std::string& v) { c.passage_method = parse_passage_method(v); });
  bind_option(app, f, "--auc", f.auc, "roc | pr",
       [](Config& c, const std::string& v) { c.auc = parse_auc_kind(v); });
  bind_option(app, f, "--isolated", f.isolated, "adjacent-fallback | skip",
       [](Config& c, const std::string& v) { c.isolated_sentence_policy = parse_isolated_policy(v); });
  bind_option(app, f, "--token-metric", f.token_metric, "ours | vanilla_logprob_token",
       [](Config& c, const std::string& v) { c.token_metric = parse_token_metric(v); });
  bind_option(app, f, "--sentence-metric", f.sentence_metric,
       "ours | avg_neg_logprob | max_neg_logprob | avg_entropy | max_entropy",
       [](Config& c, const std::string& v) { c.sentence_metric = parse_sentence_metric(v); });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Defaults, then the file named by HALOGRAPH_CONFIG, then explicit flags.
Config resolve_config(const ConfigFlags& flags) {
  Config config;
  if (const char* path = std::getenv(kConfigEnv); path != nullptr && *path != '\0')
    apply_config_json(read_json_file(path), config);
  for (const auto& [opt, apply] : flags.bound) {
    if (opt->count() > 0) apply(config);
  }
  check_config(config);
  return config;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

std::vector<PassageBundle> load_or_exit(const std::string& path, std::ostream& err) {
  try {
    return load_bundle_file(path);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    throw Exit{kInvalidInput};
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    throw Exit{kInvalidInput};
  }
}

// Prints violations as one JSON object per offending passage.
void validate_or_exit(const std::vector<PassageBundle>& bundles, std::size_t k,
                      std::ostream& err) {
  bool failed = false;
  for (const auto& b : bundles) {
    const auto violations = validate_bundle(b, k);
    if (violations.empty()) continue;
    failed = true;
    err << json{{"passage_id", b.passage_id}, {"violations", violations_to_json(violations)}}.dump()
        << "\n";
  }
  if (failed) throw Exit{kInvalidInput};
}

void require_labels(const std::vector<PassageBundle>& bundles, std::ostream& err) {
  for (const auto& b : bundles) {
    if (!b.sentence_labels || !b.passage_human_score) {
      err << "passage '" << b.passage_id << "' is unlabeled\n";
      throw Exit{kUnlabeled};
    }
  }
}

CorpusScoring score_or_exit(const std::vector<PassageBundle>& bundles, const Config& config,
                            std::ostream& err) {
  try {
    return score_corpus(bundles, config);
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    throw Exit{kMissingNli};
  } catch (const DegenerateInputError& e) {
    err << "degenerate input: " << e.what() << "\n";
    throw Exit{kInvalidInput};
  }
}

void dump_graphs(const std::vector<PassageBundle>& bundles, const std::string& path) {
  auto out = open_output(path);
  for (const auto& b : bundles) {
    out << json{{"passage_id", b.passage_id}, {"graph", graph_summary_json(build_graph(b))}}.dump()
        << "\n";
  }
}

std::string default_manifest_path(const std::string& output) { return output + ".manifest.json"; }

void write_report(const CorpusScoring& scoring, const Config& config, const std::string& path) {
  auto out = open_output(path);
  for (const auto& r : scoring.passages)
    out << passage_report_to_json(r, config.passage_method).dump() << "\n";
}

void write_manifest(const std::string& manifest_path, const std::string& input,
                    const std::string& output, const Config& config,
                    const CorpusScoring& scoring) {
  json timing = json::array();
  json warnings = json::array();
  for (std::size_t i = 0; i < scoring.passages.size(); ++i) {
    const auto& r = scoring.passages[i];
    timing.push_back({{"passage_id", r.passage_id}, {"seconds", scoring.seconds[i]}});
    for (const auto& w : r.warnings) warnings.push_back(r.passage_id + ": " + w);
  }
  json manifest = {{"command", "score"},
                   {"config", config_to_json(config)},
                   {"input", input},
                   {"output", output},
                   {"projections", projections_to_json(scoring.projections)},
                   {"timing", timing},
                   {"warnings", warnings}};
  auto out = open_output(manifest_path);
  out << manifest.dump(2) << "\n";
}

int do_score(const std::string& input, const std::string& output, const std::string& manifest,
             const Config& config, const std::string& dump_graph, std::ostream& out,
             std::ostream& err) {
  const auto bundles = load_or_exit(input, err);
  validate_or_exit(bundles, config.k, err);
  if (!dump_graph.empty()) dump_graphs(bundles, dump_graph);
  const CorpusScoring scoring = score_or_exit(bundles, config, err);
  write_report(scoring, config, output);
  write_manifest(manifest.empty() ? default_manifest_path(output) : manifest, input, output,
                 config, scoring);
  out << "scored " << scoring.passages.size() << " passage(s) -> " << output << "\n";
  return kOk;
}

std::vector<BaselineMetric> parse_baselines(const std::vector<std::string>& names) {
  std::vector<BaselineMetric> out;
  for (const auto& name : names) {
    if (name == "all") return sentence_baseline_metrics();
    const BaselineMetric m = parse_baseline_metric(name);
    if (m == BaselineMetric::kVanillaLogprobToken)
      throw std::invalid_argument("vanilla_logprob_token is a token metric; use score --token-metric");
    out.push_back(m);
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad grid value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty grid '" + text + "'");
  return out;
}

struct GridPoint {
  std::string sweep;
  double alpha, beta, lambda;
  std::size_t k;
};

std::vector<GridPoint> default_grid(const Config& base) {
  std::vector<GridPoint> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back({"alpha", i / 10.0, base.beta, base.lambda, base.k});
  for (int i = 1; i <= 19; ++i) grid.push_back({"beta", base.alpha, i * 5 / 100.0, base.lambda, base.k});
  for (int i = 1; i <= 9; ++i) grid.push_back({"lambda", base.alpha, base.beta, i / 10.0, base.k});
  for (std::size_t k : {1, 3, 5, 7}) grid.push_back({"k", base.alpha, base.beta, base.lambda, k});
  return grid;
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string format_sweep_table(const std::vector<json>& rows) {
  std::ostringstream out;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-7s %6s %6s %6s %3s %9s %9s %9s %9s %9s %10s %s\n", "sweep",
                "alpha", "beta", "lambda", "k", "NonFact", "NonFact*", "Factual", "Pearson",
                "Spearman", "mean_U_G", "");
  out << buf;
  auto pct = [](const json& v) {
    if (v.is_null()) return std::string("-");
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v.get<double>() * 100.0);
    return std::string(b);
  };
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-7s %6.2f %6.2f %6.2f %3zu %9s %9s %9s %9s %9s %10.4f %s\n",
                  r["sweep"].get<std::string>().c_str(), r["alpha"].get<double>(),
                  r["beta"].get<double>(), r["lambda"].get<double>(), r["top_k"].get<std::size_t>(),
                  pct(r["auc_nonfact"]).c_str(), pct(r["auc_nonfact_star"]).c_str(),
                  pct(r["auc_factual"]).c_str(), pct(r["pearson"]).c_str(),
                  pct(r["spearman"]).c_str(), r["mean_global_uncertainty"].get<double>(),
                  r["default_point"].get<bool>() ? "(default)" : "");
    out << buf;
  }
  return out.str();
}

void add_validate(CLI::App& app, std::function<int()>& action, std::ostream& out,
                  std::ostream& err) {
  auto* sub = app.add_subcommand("validate", "check bundle files against every invariant");
  auto input = std::make_shared<std::string>();
  auto k = std::make_shared<std::size_t>(Config{}.k);
  auto dump = std::make_shared<std::string>();
  auto as_json = std::make_shared<bool>(false);
  sub->add_option("input", *input, "bundle JSON Lines file")->required();
  auto* k_opt = sub->add_option("--top-k", *k, "expected top-k size");
  sub->add_option("--dump-graph", *dump, "write adjacency and triple counts as JSON Lines");
  sub->add_flag("--json", *as_json, "print all violations as one JSON array");
  sub->callback([=, &action, &out, &err] {
    action = [=, &out, &err] {
      Config config;
      if (const char* path = std::getenv(kConfigEnv); path != nullptr && *path != '\0')
        apply_config_json(read_json_file(path), config);
      if (k_opt->count() > 0) config.k = *k;
      const auto bundles = load_or_exit(*input, err);
      if (!dump->empty()) dump_graphs(bundles, *dump);
      json all = json::array();
      std::size_t roles = 0;
      for (const auto& b : bundles) {
        for (const auto& v : validate_bundle(b, config.k)) {
          json j = violations_to_json({v})[0];
          j["passage_id"] = b.passage_id;
          all.push_back(std::move(j));
        }
        for (const auto& t : b.triples) roles += check_triple_roles(t, b) ? 0 : 1;
      }
      if (*as_json) {
        out << all.dump() << "\n";
      } else {
        for (const auto& v : all) {
          out << v["passage_id"].get<std::string>() << ": " << v["field"].get<std::string>()
              << " [" << v["rule"].get<std::string>() << "] " << v["detail"].get<std::string>()
              << "\n";
        }
        out << bundles.size() << " passage(s), " << all.size() << " violation(s), " << roles
            << " triple(s) failing the role filter\n";
      }
      return all.empty() ? int(kOk) : int(kInvalidInput);
    };
  });
}

void add_score(CLI::App& app, std::function<int()>& action, std::ostream& out, std::ostream& err) {
  auto* sub = app.add_subcommand("score", "score bundles into a JSON Lines report");
  auto flags = std::make_shared<ConfigFlags>();
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>("report.jsonl");
  auto manifest = std::make_shared<std::string>();
  auto dump = std::make_shared<std::string>();
  sub->add_option("input", *input, "bundle JSON Lines file")->required();
  sub->add_option("-o,--output", *output, "report path");
  sub->add_option("--manifest", *manifest, "run manifest path (default: <output>.manifest.json)");
  sub->add_option("--dump-graph", *dump, "write adjacency and triple counts as JSON Lines");
  add_config_flags(sub, *flags);
  sub->callback([=, &action, &out, &err] {
    action = [=, &out, &err] {
      return do_score(*input, *output, *manifest, resolve_config(*flags), *dump, out, err);
    };
  });
}

void add_rerun(CLI::App& app, std::function<int()>& action, std::ostream& out, std::ostream& err) {
  auto* sub = app.add_subcommand("rerun", "repeat a score run from its manifest");
  auto manifest = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto new_manifest = std::make_shared<std::string>();
  sub->add_option("manifest", *manifest, "manifest written by score")->required();
  sub->add_option("-o,--output", *output, "write the report here instead");
  sub->add_option("--manifest-out", *new_manifest, "manifest path for the new run");
  sub->callback([=, &action, &out, &err] {
    action = [=, &out, &err] {
      const json m = read_json_file(*manifest);
      if (m.value("command", "") != "score") throw Error("manifest does not describe a score run");
      Config config;
      apply_config_json(m.at("config"), config);
      check_config(config);
      const std::string target = output->empty() ? m.at("output").get<std::string>() : *output;
      return do_score(m.at("input").get<std::string>(), target, *new_manifest, config, "", out,
                      err);
    };
  });
}

void add_eval(CLI::App& app, std::function<int()>& action, std::ostream& out, std::ostream& err) {
  auto* sub = app.add_subcommand("eval", "evaluate a report against labeled bundles");
  auto flags = std::make_shared<ConfigFlags>();
  auto report = std::make_shared<std::string>();
  auto input = std::make_shared<std::string>();
  auto baselines = std::make_shared<std::vector<std::string>>();
  auto output = std::make_shared<std::string>();
  auto format = std::make_shared<std::string>("table");
  sub->add_option("report", *report, "report from score")->required();
  sub->add_option("input", *input, "labeled bundle file the report was scored from")->required();
  sub->add_option("--baselines", *baselines, "sentence baselines to evaluate too, or 'all'")
      ->delimiter(',');
  sub->add_option("-o,--output", *output, "also write the results as JSON here");
  sub->add_option("--format", *format, "table | json")->check(CLI::IsMember({"table", "json"}));
  add_config_flags(sub, *flags);
  sub->callback([=, &action, &out, &err] {
    action = [=, &out, &err] {
      const Config config = resolve_config(*flags);
      const auto metrics = parse_baselines(*baselines);
      const auto bundles = load_or_exit(*input, err);
      require_labels(bundles, err);
      validate_or_exit(bundles, config.k, err);
      std::vector<PassageReport> reports;
      try {
        reports = load_report_file(*report);
      } catch (const ParseError& e) {
        err << "report parse error: " << e.what() << "\n";
        return int(kInvalidInput);
      }

      std::vector<NamedEvalResult> rows;
      try {
        rows.push_back({"ours/" + std::string(to_string(config.passage_method)),
                        evaluate_reports(reports, bundles, config)});
        for (BaselineMetric m : metrics)
          rows.push_back({std::string(to_string(m)), evaluate_baseline(m, reports, bundles, config)});
      } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return int(kMissingNli);
      }

      json results = json::object();
      bool complete = true;
      for (const auto& row : rows) {
        results[row.name] = eval_result_to_json(row.result);
        complete = complete && row.result.complete();
      }
      json doc = {{"auc", std::string(to_string(config.auc))},
                  {"passage_method", std::string(to_string(config.passage_method))},
                  {"results", results}};
      if (*format == "json") {
        out << doc.dump(2) << "\n";
      } else {
        out << format_eval_table(rows);
      }
      if (!output->empty()) open_output(*output) << doc.dump(2) << "\n";
      for (const auto& row : rows) {
        for (const auto& note : row.result.undefined) err << row.name << ": " << note << "\n";
      }
      return complete ? int(kOk) : int(kUndefinedMetric);
    };
  });
}

void add_synth(CLI::App& app, std::function<int()>& action, std::ostream& out, std::ostream& err) {
  auto* sub = app.add_subcommand("synth", "generate a seeded synthetic corpus and its oracle scores");
  auto flags = std::make_shared<ConfigFlags>();
  auto seed = std::make_shared<std::uint64_t>(0);
  auto n = std::make_shared<std::size_t>(10);
  auto shape = std::make_shared<SynthShape>();
  auto output = std::make_shared<std::string>("synth.jsonl");
  auto oracle_path = std::make_shared<std::string>();
  sub->add_option("--seed", *seed, "random seed");
  sub->add_option("-n,--n-passages", *n, "number of passages");
  sub->add_option("--max-sentences", shape->max_sentences, "sentences per passage, at most")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-tokens", shape->max_tokens_per_sentence, "tokens per sentence, at most")
      ->check(CLI::PositiveNumber);
  sub->add_option("--entity-rate", shape->entity_rate, "chance an entity starts at a token");
  sub->add_option("--link-rate", shape->link_rate, "chance two sentences are linked");
  sub->add_option("--max-triples", shape->max_triples_per_sentence, "triples per sentence, at most");
  sub->add_option("-o,--output", *output, "bundle file");
  sub->add_option("--oracle", *oracle_path, "oracle file (default: <output>.oracle.jsonl)");
  add_config_flags(sub, *flags);
  sub->callback([=, &action, &out, &err] {
    action = [=, &out, &err] {
      const Config config = resolve_config(*flags);
      SynthShape s = *shape;
      s.k = config.k;
      const auto bundles = synthesize_corpus(*seed, *n, s);
      const std::string oracle_file = oracle_path->empty() ? *output + ".oracle.jsonl" : *oracle_path;
      oracle::OracleParams params{config.alpha, config.beta, config.lambda,
                                  config.isolated_sentence_policy == IsolatedSentencePolicy::kSkip};
      auto bundle_out = open_output(*output);
      auto oracle_out = open_output(oracle_file);
      for (const auto& b : bundles) {
        const json j = bundle_to_json(b);
        bundle_out << j.dump() << "\n";
        json scores = oracle::score_bundle_json(j, params);
        scores["params"] = oracle::params_to_json(params);
        oracle_out << scores.dump() << "\n";
      }
      out << "wrote " << bundles.size() << " passage(s) -> " << *output << ", oracle -> "
          << oracle_file << "\n";
      (void)err;
      return int(kOk);
    };
  });
}

void add_sweep(CLI::App& app, std::function<int()>& action, std::ostream& out, std::ostream& err) {
  auto* sub = app.add_subcommand("sweep", "evaluate over a hyperparameter grid");
  auto flags = std::make_shared<ConfigFlags>();
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto alphas = std::make_shared<std::string>();
  auto betas = std::make_shared<std::string>();
  auto lambdas = std::make_shared<std::string>();
  auto ks = std::make_shared<std::string>();
  auto format = std::make_shared<std::string>("table");
  sub->add_option("input", *input, "labeled bundle file")->required();
  sub->add_option("-o,--output", *output, "write rows as JSON Lines here");
  sub->add_option("--alphas", *alphas, "comma-separated alpha grid");
  sub->add_option("--betas", *betas, "comma-separated beta grid");
  sub->add_option("--lambdas", *lambdas, "comma-separated lambda grid");
  sub->add_option("--top-ks", *ks, "comma-separated top-k grid");
  sub->add_option("--format", *format, "table | jsonl")->check(CLI::IsMember({"table", "jsonl"}));
  add_config_flags(sub, *flags);
  sub->callback([=, &action, &out, &err] {
    action = [=, &out, &err] {
      const Config base = resolve_config(*flags);
      const auto bundles = load_or_exit(*input, err);
      require_labels(bundles, err);
      const std::size_t stored_k =
          bundles.empty() || bundles.front().tokens.empty() ? base.k
                                                            : bundles.front().tokens.front().topk_probs.size();
      validate_or_exit(bundles, stored_k, err);

      std::vector<GridPoint> grid;
      const bool explicit_grid = !alphas->empty() || !betas->empty() || !lambdas->empty() || !ks->empty();
      if (!explicit_grid) {
        grid = default_grid(base);
      } else {
        const auto as = alphas->empty() ? std::vector<double>{base.alpha} : parse_grid(*alphas);
        const auto bs = betas->empty() ? std::vector<double>{base.beta} : parse_grid(*betas);
        const auto ls = lambdas->empty() ? std::vector<double>{base.lambda} : parse_grid(*lambdas);
        const auto kv = ks->empty() ? std::vector<double>{double(base.k)} : parse_grid(*ks);
        for (double a : as)
          for (double b : bs)
            for (double l : ls)
              for (double k : kv) grid.push_back({"grid", a, b, l, std::size_t(k)});
      }

      std::vector<json> rows;
      bool complete = true;
      for (const auto& point : grid) {
        if (point.k > stored_k || point.k < 1) {
          err << "skipping k=" << point.k << ": bundles store top-" << stored_k << "\n";
          continue;
        }
        Config config = base;
        config.alpha = point.alpha;
        config.beta = point.beta;
        config.lambda = point.lambda;
        config.k = point.k;
        check_config(config);
        std::vector<PassageBundle> truncated;
        for (const auto& b : bundles) truncated.push_back(truncate_topk(b, point.k));
        const CorpusScoring scoring = score_or_exit(truncated, config, err);
        EvalResult result;
        try {
          result = evaluate_reports(scoring.passages, truncated, config);
        } catch (const DataError& e) {
          err << "data error: " << e.what() << "\n";
          throw Exit{kMissingNli};
        }
        complete = complete && result.complete();
        double ue = 0.0, ug = 0.0, us = 0.0;
        std::size_t count = 0;
        for (const auto& r : scoring.passages) {
          for (const auto& s : r.sentences) {
            ue += s.score.entity_uncertainty;
            ug += s.score.global_uncertainty;
            us += s.score.sentence_uncertainty;
            ++count;
          }
        }
        const double denom = count ? double(count) : 1.0;
        json row = {{"sweep", point.sweep},
                    {"alpha", point.alpha},
                    {"beta", point.beta},
                    {"lambda", point.lambda},
                    {"top_k", point.k},
                    {"default_point", is_default_point(config)},
                    {"auc_nonfact", optional_json(result.auc_nonfact)},
                    {"auc_nonfact_star", optional_json(result.auc_nonfact_star)},
                    {"auc_factual", optional_json(result.auc_factual)},
                    {"pearson", optional_json(result.pearson)},
                    {"spearman", optional_json(result.spearman)},
                    {"mean_entity_uncertainty", ue / denom},
                    {"mean_global_uncertainty", ug / denom},
                    {"mean_sentence_uncertainty", us / denom}};
        rows.push_back(std::move(row));
      }
      if (!output->empty()) {
        auto file = open_output(*output);
        for (const auto& r : rows) file << r.dump() << "\n";
      }
      if (*format == "jsonl") {
        for (const auto& r : rows) out << r.dump() << "\n";
      } else {
        out << format_sweep_table(rows);
      }
      return complete ? int(kOk) : int(kUndefinedMetric);
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"halograph: graph-based uncertainty scoring for hallucination detection"};
  app.require_subcommand(1);
  std::function<int()> action;
  add_validate(app, action, out, err);
  add_score(app, action, out, err);
  add_rerun(app, action, out, err);
  add_eval(app, action, out, err);
  add_synth(app, action, out, err);
  add_sweep(app, action, out, err);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int(kOk) : int(kUsage);
  }

  try {
    return action ? action() : int(kUsage);
  } catch (const Exit& e) {
    return e.code;
  } catch (const ContractViolation& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace halograph::cli
