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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "commands.hpp"
#include "doctest.h"
#include "halograph/bundle.hpp"
#include "halograph/pipeline.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace halograph;
using halograph::testing::fixture_path;
using halograph::testing::load_fixture;
using halograph::testing::read_file;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("halograph_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

void write_bundles(const std::string& path, const std::vector<PassageBundle>& bundles) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& b : bundles) out << serialize_bundle(b) << "\n";
}

std::vector<json> read_jsonl(const std::string& path) {
  std::vector<json> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

// Two labeled passages where higher uncertainty marks the hallucinated
// sentence and the more uncertain passage has the higher human score.
std::vector<PassageBundle> separable_corpus() {
  PassageBundle a = load_fixture("two_sentence.jsonl");
  a.passage_id = "a";
  a.sentence_labels = std::vector<double>{0.0, 1.0};
  a.passage_human_score = 0.2;
  PassageBundle b = a;
  b.passage_id = "b";
  b.nli_scores = {{2, 1, 0.9}, {1, 2, 0.8}};
  b.passage_human_score = 0.8;
  return {a, b};
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"score"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"score", fixture_path("minimal.jsonl"), "--alpha", "1.5", "-o", "/dev/null"}).code ==
        cli::kUsage);
}

TEST_CASE("validate") {
  CHECK(run({"validate", fixture_path("two_sentence.jsonl")}).code == cli::kOk);
  CHECK(run({"validate", fixture_path("two_sentence.jsonl"), "--top-k", "5"}).code ==
        cli::kInvalidInput);

  TempDir dir;
  PassageBundle b = load_fixture("two_sentence.jsonl");
  b.nli_scores.pop_back();
  write_bundles(dir / "broken.jsonl", {b});
  const auto r = run({"validate", dir / "broken.jsonl", "--json"});
  CHECK(r.code == cli::kInvalidInput);
  const json violations = json::parse(r.out);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0]["rule"] == "covers-linked-pairs");

  write_text(dir / "garbage.jsonl", "{\"format_version\": 1}\nnot json\n");
  const auto g = run({"validate", dir / "garbage.jsonl"});
  CHECK(g.code == cli::kInvalidInput);
  CHECK(g.err.find("line 1") != std::string::npos);
}

TEST_CASE("score writes the report and manifest") {
  TempDir dir;
  const auto r = run({"score", fixture_path("two_sentence.jsonl"), "-o", dir / "report.jsonl",
                      "--dump-graph", dir / "graph.jsonl"});
  REQUIRE(r.code == cli::kOk);
  const auto rows = read_jsonl(dir / "report.jsonl");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["passage"]["graph"]["raw"].get<double>() == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(rows[0]["selected_method"] == "graph");
  const json manifest = json::parse(read_file(dir / "report.jsonl.manifest.json"));
  CHECK(manifest["command"] == "score");
  CHECK(manifest["config"]["alpha"] == 0.8);
  CHECK(manifest["timing"].size() == 1);
  CHECK(read_jsonl(dir / "graph.jsonl").size() == 1);
}

TEST_CASE("score exit codes for bad input and missing NLI") {
  TempDir dir;
  write_text(dir / "bad.jsonl", "{");
  CHECK(run({"score", dir / "bad.jsonl", "-o", dir / "r.jsonl"}).code == cli::kInvalidInput);

  // Sentence 2 has no links, so the positional fallback needs NLI pairs the
  // bundle does not carry.
  PassageBundle b = halograph::testing::plain_bundle({1, 1, 1});
  b.links = {{1, 3, LinkKind::kCoreference}};
  b.nli_scores = {{1, 3, 0.2}, {3, 1, 0.4}};
  write_bundles(dir / "gap.jsonl", {b});
  const auto r = run({"score", dir / "gap.jsonl", "-o", dir / "r.jsonl"});
  CHECK(r.code == cli::kMissingNli);
  CHECK(r.err.find("premise 1, hypothesis 2") != std::string::npos);
  CHECK(run({"score", dir / "gap.jsonl", "-o", dir / "r.jsonl", "--isolated", "skip"}).code ==
        cli::kOk);
}

TEST_CASE("ablation flags reproduce the structural identities") {
  TempDir dir;
  REQUIRE(run({"synth", "--seed", "3", "-n", "8", "-o", dir / "c.jsonl"}).code == cli::kOk);
  REQUIRE(run({"score", dir / "c.jsonl", "-o", dir / "l1.jsonl", "--lambda", "1"}).code == cli::kOk);
  for (const auto& row : read_jsonl(dir / "l1.jsonl"))
    for (const auto& s : row["sentences"])
      CHECK(s["sentence_uncertainty"] == s["entity_uncertainty"]);

  REQUIRE(run({"score", dir / "c.jsonl", "-o", dir / "b0.jsonl", "--beta", "0"}).code == cli::kOk);
  for (const auto& row : read_jsonl(dir / "b0.jsonl")) {
    for (const auto& s : row["sentences"]) {
      if (s["entity_count"] == 0) continue;
      double sum = 0.0;
      for (const auto& e : row["entities"])
        if (e["sentence_index"] == s["sentence_index"]) sum += e["self_uncertainty"].get<double>();
      CHECK(s["entity_uncertainty"].get<double>() ==
            doctest::Approx(sum / s["entity_count"].get<double>()).epsilon(1e-12));
    }
  }
}

TEST_CASE("synth is deterministic and writes a matching oracle file") {
  TempDir dir;
  REQUIRE(run({"synth", "--seed", "9", "-n", "5", "-o", dir / "a.jsonl"}).code == cli::kOk);
  REQUIRE(run({"synth", "--seed", "9", "-n", "5", "-o", dir / "b.jsonl"}).code == cli::kOk);
  CHECK(read_file(dir / "a.jsonl") == read_file(dir / "b.jsonl"));
  CHECK(read_file(dir / "a.jsonl.oracle.jsonl") == read_file(dir / "b.jsonl.oracle.jsonl"));
  CHECK(read_jsonl(dir / "a.jsonl.oracle.jsonl").size() == 5);
  CHECK(run({"validate", dir / "a.jsonl"}).code == cli::kOk);

  REQUIRE(run({"synth", "--seed", "10", "-n", "5", "-o", dir / "c.jsonl"}).code == cli::kOk);
  CHECK(read_file(dir / "a.jsonl") != read_file(dir / "c.jsonl"));

  REQUIRE(run({"synth", "-n", "0", "-o", dir / "empty.jsonl"}).code == cli::kOk);
  CHECK(read_file(dir / "empty.jsonl").empty());
  CHECK(read_file(dir / "empty.jsonl.oracle.jsonl").empty());
  CHECK(run({"validate", dir / "empty.jsonl"}).code == cli::kOk);
}

TEST_CASE("eval on a perfectly separable corpus") {
  TempDir dir;
  write_bundles(dir / "sep.jsonl", separable_corpus());
  REQUIRE(run({"score", dir / "sep.jsonl", "-o", dir / "r.jsonl"}).code == cli::kOk);
  const auto r =
      run({"eval", dir / "r.jsonl", dir / "sep.jsonl", "--format", "json", "-o", dir / "eval.json"});
  REQUIRE(r.code == cli::kOk);
  const json doc = json::parse(r.out);
  const json& ours = doc["results"]["ours/graph"];
  CHECK(ours["auc_nonfact"] == 1.0);
  CHECK(ours["auc_nonfact_star"] == 1.0);
  CHECK(ours["auc_factual"] == 1.0);
  CHECK(ours["pearson"].get<double>() == doctest::Approx(1.0));
  CHECK(ours["spearman"].get<double>() == doctest::Approx(1.0));
  CHECK(json::parse(read_file(dir / "eval.json")) == doc);

  // Both passages share their tokens, so baseline passage scores tie and the
  // correlations are undefined.
  const auto b = run({"eval", dir / "r.jsonl", dir / "sep.jsonl", "--format", "json",
                      "--baselines", "all"});
  CHECK(b.code == cli::kUndefinedMetric);
  const json with_baselines = json::parse(b.out);
  CHECK(with_baselines["results"].size() == 5);
  CHECK(with_baselines["results"]["avg_neg_logprob"]["auc_nonfact"] == 1.0);
  CHECK(with_baselines["results"]["avg_neg_logprob"]["pearson"].is_null());

  const auto table = run({"eval", dir / "r.jsonl", dir / "sep.jsonl"});
  CHECK(table.code == cli::kOk);
  CHECK(table.out.find("100.00") != std::string::npos);
}

TEST_CASE("eval exit codes for unlabeled input and undefined metrics") {
  TempDir dir;
  REQUIRE(run({"score", fixture_path("minimal.jsonl"), "-o", dir / "m.jsonl"}).code == cli::kOk);
  CHECK(run({"eval", dir / "m.jsonl", fixture_path("minimal.jsonl")}).code == cli::kUnlabeled);

  PassageBundle one = load_fixture("two_sentence.jsonl");
  one.sentence_labels = std::vector<double>{1.0, 1.0};
  write_bundles(dir / "one.jsonl", {one});
  REQUIRE(run({"score", dir / "one.jsonl", "-o", dir / "o.jsonl"}).code == cli::kOk);
  const auto r = run({"eval", dir / "o.jsonl", dir / "one.jsonl"});
  CHECK(r.code == cli::kUndefinedMetric);
  CHECK(r.err.find("auc_nonfact") != std::string::npos);
}

TEST_CASE("sweep") {
  TempDir dir;
  REQUIRE(run({"synth", "--seed", "4", "-n", "30", "--max-sentences", "4", "-o",
               dir / "c.jsonl"})
              .code == cli::kOk);

  const auto alpha = run({"sweep", dir / "c.jsonl", "--alphas", "0.2,0.5,0.8", "--format",
                          "jsonl", "-o", dir / "sweep.jsonl"});
  REQUIRE(alpha.code == cli::kOk);
  const auto rows = read_jsonl(dir / "sweep.jsonl");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["mean_global_uncertainty"] <= rows[1]["mean_global_uncertainty"]);
  CHECK(rows[1]["mean_global_uncertainty"] <= rows[2]["mean_global_uncertainty"]);
  CHECK_FALSE(rows[0]["default_point"].get<bool>());
  CHECK(rows[2]["default_point"].get<bool>());

  // The default-parameter cell equals a plain score + eval run.
  REQUIRE(run({"score", dir / "c.jsonl", "-o", dir / "r.jsonl"}).code == cli::kOk);
  const auto e = run({"eval", dir / "r.jsonl", dir / "c.jsonl", "--format", "json"});
  REQUIRE(e.code == cli::kOk);
  const json ours = json::parse(e.out)["results"]["ours/graph"];
  for (const char* key : {"auc_nonfact", "auc_nonfact_star", "auc_factual", "pearson", "spearman"})
    CHECK(rows[2][key].get<double>() == doctest::Approx(ours[key].get<double>()).epsilon(1e-12));

  const auto grid = run({"sweep", dir / "c.jsonl", "--format", "jsonl"});
  REQUIRE(grid.code == cli::kOk);
  std::size_t lines = 0, defaults = 0;
  std::istringstream in(grid.out);
  for (std::string line; std::getline(in, line); ++lines)
    defaults += json::parse(line)["default_point"].get<bool>() ? 1 : 0;
  CHECK(lines == 11 + 19 + 9 + 2);  // k = 5 and 7 exceed the stored top-3
  CHECK(defaults == 4);
  CHECK(grid.err.find("skipping k=5") != std::string::npos);

  const auto table = run({"sweep", dir / "c.jsonl", "--lambdas", "0.7"});
  CHECK(table.out.find("(default)") != std::string::npos);
}

TEST_CASE("rerun from a manifest is byte-identical") {
  TempDir dir;
  REQUIRE(run({"synth", "--seed", "5", "-n", "12", "-o", dir / "c.jsonl"}).code == cli::kOk);
  REQUIRE(run({"score", dir / "c.jsonl", "-o", dir / "first.jsonl", "--beta", "0.3",
               "--projection-sentence", "sigmoid"})
              .code == cli::kOk);
  REQUIRE(run({"rerun", dir / "first.jsonl.manifest.json", "-o", dir / "second.jsonl"}).code ==
          cli::kOk);
  REQUIRE(run({"rerun", dir / "first.jsonl.manifest.json", "-o", dir / "third.jsonl"}).code ==
          cli::kOk);
  CHECK(read_file(dir / "first.jsonl") == read_file(dir / "second.jsonl"));
  CHECK(read_file(dir / "second.jsonl") == read_file(dir / "third.jsonl"));
  const json m = json::parse(read_file(dir / "second.jsonl.manifest.json"));
  CHECK(m["config"]["beta"] == 0.3);
  CHECK(m["config"]["sentence_projection"] == "sigmoid");
}

TEST_CASE("configuration file from the environment") {
  TempDir dir;
  REQUIRE(run({"synth", "--seed", "6", "-n", "6", "-o", dir / "c.jsonl"}).code == cli::kOk);
  write_text(dir / "cfg.json", R"({"beta": 0.0, "lambda": 0.4})");
  ::setenv("HALOGRAPH_CONFIG", (dir / "cfg.json").c_str(), 1);
  const auto from_env = run({"score", dir / "c.jsonl", "-o", dir / "env.jsonl"});
  const auto overridden = run({"score", dir / "c.jsonl", "-o", dir / "over.jsonl", "--lambda", "0.9"});
  ::unsetenv("HALOGRAPH_CONFIG");
  REQUIRE(from_env.code == cli::kOk);
  REQUIRE(overridden.code == cli::kOk);
  REQUIRE(run({"score", dir / "c.jsonl", "-o", dir / "flags.jsonl", "--beta", "0", "--lambda",
               "0.4"})
              .code == cli::kOk);
  CHECK(read_file(dir / "env.jsonl") == read_file(dir / "flags.jsonl"));
  const json m = json::parse(read_file(dir / "over.jsonl.manifest.json"));
  CHECK(m["config"]["beta"] == 0.0);
  CHECK(m["config"]["lambda"] == 0.9);

  write_text(dir / "bad.json", R"({"gamma": 1})");
  ::setenv("HALOGRAPH_CONFIG", (dir / "bad.json").c_str(), 1);
  CHECK(run({"score", dir / "c.jsonl", "-o", dir / "x.jsonl"}).code == cli::kUsage);
  ::unsetenv("HALOGRAPH_CONFIG");
}
