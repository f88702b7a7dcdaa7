// Copyright 2026 The dinet Authors.
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

#include "dinet/cli.hpp"

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dinet/io.hpp"
#include "support.hpp"

namespace dinet::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dinet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) { return io::load_text(p); }

void write_json(const fs::path& p, const json& j) { io::save_text(p, j.dump()); }

TEST_CASE("generate is reproducible for a fixed seed") {
  const auto dir = testing::scratch_dir("cli_generate");
  for (const char* run_name : {"a", "b"}) {
    const Outcome o = invoke({"generate", "--builtin", "experiment-1", "--seed", "7",
                              "--out-adjacency", (dir / run_name / "adj.mtx").string(),
                              "--out-truth", (dir / run_name / "truth").string()});
    REQUIRE(o.code == 0);
    CHECK(o.out.find("seed 7") != std::string::npos);
  }
  CHECK(slurp(dir / "a/adj.mtx") == slurp(dir / "b/adj.mtx"));
  for (const char* f : {"pi_r.csv", "labels.txt", "manifest.json", "params.json"}) {
    CHECK(fs::exists(dir / "a/truth" / f));
  }
  CHECK(fs::exists(dir / "a/adj.mtx.manifest.json"));
  CHECK(slurp(dir / "a/adj.mtx").rfind("%%MatrixMarket matrix coordinate pattern general\n400 300 ", 0) == 0);
}

TEST_CASE("the generate manifest reproduces the run") {
  const auto dir = testing::scratch_dir("cli_manifest");
  REQUIRE(invoke({"generate", "--builtin", "experiment-3", "--seed", "3",
                  "--out-adjacency", (dir / "adj.tsv").string(), "--out-truth",
                  (dir / "truth").string()}).code == 0);
  CHECK(fs::exists(dir / "truth/theta_c.csv"));
  const RunManifest m = RunManifest::from_json(json::parse(slurp(dir / "truth/manifest.json")));
  CHECK(m.seed == 3);
  CHECK(m.subcommand == "generate");
  CHECK(RunManifest::from_json(m.to_json()) == m);

  // Re-run the recorded command line into a second location.
  std::vector<std::string> args(m.command.begin() + 1, m.command.end());
  for (auto& a : args) {
    if (a == (dir / "adj.tsv").string()) a = (dir / "again.tsv").string();
    if (a == (dir / "truth").string()) a = (dir / "truth2").string();
  }
  REQUIRE(invoke(args).code == 0);
  CHECK(slurp(dir / "adj.tsv") == slurp(dir / "again.tsv"));
  CHECK(slurp(dir / "truth/pi_r.csv") == slurp(dir / "truth2/pi_r.csv"));
}

TEST_CASE("manifest JSON round trip") {
  RunManifest m;
  m.subcommand = "fit";
  m.parameters = {{"method", "ona"}, {"k_r", 3}, {"nested", {{"x", 0.1}}}};
  m.seed = 18446744073709551615ULL;
  m.inputs = {{"adjacency", "a.mtx"}};
  m.outputs = {{"pi_r", "out/pi_r.csv"}};
  m.command = {"dinet", "fit", "--seed", "18446744073709551615"};
  m.version = "1.2.3";
  CHECK(RunManifest::from_json(json::parse(m.to_json().dump())) == m);
}

TEST_CASE("validation failures name the violated condition") {
  const auto dir = testing::scratch_dir("cli_validate");
  write_json(dir / "i2.json", {{"model", "onm"},
                               {"p_tilde", {{1.0, 0.2}, {0.3, 0.9}}},
                               {"rho", 0.5},
                               {"pi_r", {{1, 0}, {0.5, 0.5}, {0.3, 0.7}}},
                               {"labels", {1, 2, 2}}});
  Outcome o = invoke({"generate", "--params", (dir / "i2.json").string(),
                      "--out-adjacency", (dir / "a.mtx").string(), "--out-truth",
                      (dir / "t").string()});
  CHECK(o.code != 0);
  CHECK(o.err.find("(I2)") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "a.mtx"));

  write_json(dir / "ii1.json", {{"model", "dconm"},
                                {"p", {{0.9, 0.2}, {0.2, 1.0}}},
                                {"pi_r", {{1, 0}, {0, 1}, {0.5, 0.5}}},
                                {"labels", {1, 2, 2, 1}},
                                {"theta_r", {1.0, 0.5, 0.8}}});
  o = invoke({"generate", "--params", (dir / "ii1.json").string(),
              "--out-adjacency", (dir / "b.mtx").string(), "--out-truth",
              (dir / "t2").string()});
  CHECK(o.code != 0);
  CHECK(o.err.find("(II1)") != std::string::npos);
}

TEST_CASE("partial outputs are removed when a write fails") {
  const auto dir = testing::scratch_dir("cli_guard");
  fs::create_directories(dir / "truth/labels.txt");  // blocks the label file
  const Outcome o = invoke({"generate", "--builtin", "experiment-1",
                            "--out-adjacency", (dir / "adj.mtx").string(),
                            "--out-truth", (dir / "truth").string()});
  CHECK(o.code != 0);
  CHECK_FALSE(fs::exists(dir / "adj.mtx"));
  CHECK_FALSE(fs::exists(dir / "truth/pi_r.csv"));
}

TEST_CASE("fit rejects K_r > K_c") {
  const auto dir = testing::scratch_dir("cli_fit_guard");
  io::save_adjacency(dir / "a.mtx", BiAdjacency(10, 10, {{0, 0}}));
  const Outcome o = invoke({"fit", "--method", "ona", "--adjacency",
                            (dir / "a.mtx").string(), "--k-r", "5", "--k-c", "3",
                            "--out-dir", (dir / "est").string()});
  CHECK(o.code != 0);
  CHECK(o.err.find("K_r ≤ K_c") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "est/pi_r.csv"));
  CHECK(invoke({"fit", "--adjacency", (dir / "missing.mtx").string(), "--k-r", "2",
                "--k-c", "2", "--out-dir", (dir / "est").string()}).code != 0);
}

TEST_CASE("generate, fit and evaluate pipeline") {
  const auto dir = testing::scratch_dir("cli_pipeline");
  REQUIRE(invoke({"generate", "--builtin", "experiment-1", "--seed", "5",
                  "--out-adjacency", (dir / "adj.mtx").string(), "--out-truth",
                  (dir / "truth").string()}).code == 0);
  for (const char* method : {"ona", "odcna"}) {
    REQUIRE(invoke({"fit", "--method", method, "--adjacency", (dir / "adj.mtx").string(),
                    "--k-r", "3", "--k-c", "4", "--seed", "9", "--out-dir",
                    (dir / method).string()}).code == 0);
  }
  CHECK(slurp(dir / "ona/pi_r.csv") == slurp(dir / "odcna/pi_r.csv"));
  const json diag = json::parse(slurp(dir / "ona/diagnostics.json"));
  CHECK(diag["singular_values"].size() == 3);
  CHECK(diag.contains("delta_c_hat"));
  CHECK(diag.contains("clipped_count"));
  CHECK(diag.contains("zero_rows"));
  CHECK(fs::exists(dir / "ona/manifest.json"));

  const Outcome o = invoke({"evaluate", "--truth", (dir / "truth").string(),
                            "--estimate", (dir / "ona").string(), "--out",
                            (dir / "metrics.json").string()});
  REQUIRE(o.code == 0);
  const json metrics = json::parse(o.out);
  CHECK(std::isfinite(metrics["mhamm"].get<double>()));
  CHECK(std::isfinite(metrics["hamm"].get<double>()));
  CHECK(std::isfinite(metrics["f_c"].get<double>()));
  CHECK(json::parse(slurp(dir / "metrics.json")) == metrics);
}

TEST_CASE("evaluate on exact and relabelled estimates") {
  const auto dir = testing::scratch_dir("cli_evaluate");
  const Matrix pi = (Matrix(3, 2) << 1, 0, 0, 1, 0.4, 0.6).finished();
  const Matrix swapped = (Matrix(3, 2) << 0, 1, 1, 0, 0.6, 0.4).finished();
  for (const char* d : {"truth", "same", "perm", "six_truth", "six_est"}) fs::create_directories(dir / d);
  io::save_csv(dir / "truth/pi_r.csv", pi);
  io::save_labels(dir / "truth/labels.txt", ColumnLabels({0, 1, 1, 2}, 3));
  io::save_csv(dir / "same/pi_r.csv", pi);
  io::save_labels(dir / "same/labels.txt", ColumnLabels({0, 1, 1, 2}, 3));
  io::save_csv(dir / "perm/pi_r.csv", swapped);
  io::save_labels(dir / "perm/labels.txt", ColumnLabels({2, 0, 0, 1}, 3));
  for (const char* est : {"same", "perm"}) {
    const json j = cmd_evaluate({dir / "truth", dir / est, {}});
    CHECK(j["mhamm"] == 0.0);
    CHECK(j["hamm"] == 0.0);
    CHECK(j["f_c"] == 0.0);
  }
  CHECK(cmd_evaluate({dir / "truth", dir / "perm", {}})["best_row_perm"] == json{2, 1});

  const Matrix one = Matrix::Identity(2, 2);
  io::save_csv(dir / "six_truth/pi_r.csv", one);
  io::save_csv(dir / "six_est/pi_r.csv", one);
  io::save_labels(dir / "six_truth/labels.txt", ColumnLabels({0, 0, 0, 1, 1, 1}, 2));
  io::save_labels(dir / "six_est/labels.txt", ColumnLabels({0, 0, 1, 1, 1, 1}, 2));
  const json six = cmd_evaluate({dir / "six_truth", dir / "six_est", {}});
  CHECK(six["f_c"].get<double>() == doctest::Approx(1.0 / 3.0));

  io::save_csv(dir / "same/pi_r.csv", Matrix::Identity(3, 3));
  CHECK(invoke({"evaluate", "--truth", (dir / "truth").string(), "--estimate",
                (dir / "same").string()}).code != 0);
}

TEST_CASE("experiment subcommand") {
  const auto dir = testing::scratch_dir("cli_experiment");
  const Outcome bad = invoke({"experiment", "experiment-1", "--reps", "0", "--out",
                              (dir / "x.csv").string()});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("repetitions ≥ 1") != std::string::npos);
  CHECK(invoke({"experiment", "experiment-9", "--out", (dir / "x.csv").string()}).code != 0);

  // Small custom sweep through a config file, run twice.
  ExperimentConfig c = builtin_config("experiment-1");
  c.values = {40, 60};
  c.fixed.n_r = 60;
  c.fixed.pure_per_community = 10;
  write_json(dir / "small.json", config_to_json(c));
  for (const char* out : {"a.csv", "b.csv"}) {
    const Outcome o = invoke({"experiment", (dir / "small.json").string(), "--reps", "2",
                              "--seed", "1", "--out", (dir / out).string()});
    REQUIRE(o.code == 0);
    CHECK(o.out.find("total wall time") != std::string::npos);
  }
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(fs::exists(dir / "a.csv.manifest.json"));
  CHECK(config_from_json(config_to_json(c)).values == c.values);
}

TEST_CASE("built-in experiment produces one row per cell and method") {
  const auto dir = testing::scratch_dir("cli_builtin");
  REQUIRE(invoke({"experiment", "experiment-1", "--reps", "1", "--seed", "1", "--out",
                  (dir / "e1.csv").string()}).code == 0);
  std::istringstream is(slurp(dir / "e1.csv"));
  std::string line;
  int rows = -1;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 12);
}

TEST_CASE("params files are parsed into model instances") {
  const json params = {{"model", "odcnm"},
                       {"p_tilde", {{1.0, 0.3}, {0.2, 0.9}}},
                       {"rho", 0.4},
                       {"row_membership",
                        {{"n_r", 10}, {"pure_per_community", 3}, {"mixing", {0.5, 0.5}}}},
                       {"n_c", 12},
                       {"z_c", 2.0}};
  const ModelInstance m = model_from_params(params, std::nullopt, 42);
  CHECK(m.kind == ModelKind::kOdcnm);
  CHECK(m.pi_r.rows() == 10);
  CHECK(m.labels.size() == 12);
  REQUIRE(m.theta_c.has_value());
  CHECK(m.theta_c->theta().minCoeff() >= 0.5);
  CHECK_NOTHROW(validate_instance(m));
  CHECK(model_from_params(params, std::nullopt, 42).labels == m.labels);
  CHECK_THROWS(model_from_params(json{{"model", "onm"}}, std::nullopt, 1));
}

TEST_CASE("unknown subcommands and flags fail cleanly") {
  CHECK(invoke({"transmogrify"}).code != 0);
  CHECK(invoke({"fit", "--bogus"}).code != 0);
  CHECK(invoke({"--help"}).code == 0);
}

}  // namespace
}  // namespace dinet::cli
