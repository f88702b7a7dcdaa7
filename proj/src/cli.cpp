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

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dinet/errors.hpp"
#include "dinet/fit.hpp"
#include "dinet/io.hpp"
#include "dinet/metrics.hpp"
#include "dinet/random.hpp"

namespace dinet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Removes everything it tracked unless commit() is called.
class OutputGuard {
 public:
  OutputGuard() = default;
  OutputGuard(const OutputGuard&) = delete;
  OutputGuard& operator=(const OutputGuard&) = delete;
  ~OutputGuard() {
    if (committed_) return;
    std::error_code ec;
    for (auto it = files_.rbegin(); it != files_.rend(); ++it) fs::remove(*it, ec);
  }

  const fs::path& track(fs::path p) { return files_.emplace_back(std::move(p)); }
  void commit() { committed_ = true; }

 private:
  std::vector<fs::path> files_;
  bool committed_ = false;
};

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

fs::path sidecar_manifest(const fs::path& file) {
  return fs::path(file.string() + ".manifest.json");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ParameterError("'" + what + "' must be a non-empty list of rows");
  }
  const Index r = static_cast<Index>(j.size());
  const Index c = static_cast<Index>(j.front().size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != c) {
      throw ParameterError("'" + what + "' has ragged rows");
    }
    for (Index k = 0; k < c; ++k) m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
  }
  return m;
}

Vector vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParameterError("'" + what + "' must be a list");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
  return v;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json one_based(const std::vector<Index>& idx) {
  json a = json::array();
  for (Index i : idx) a.push_back(i + 1);
  return a;
}

json one_based(const Permutation& perm) {
  json a = json::array();
  for (int p : perm) a.push_back(p + 1);
  return a;
}

json load_json(const fs::path& p) {
  try {
    return json::parse(io::load_text(p));
  } catch (const json::exception& e) {
    throw IoError("cannot parse '" + p.string() + "': " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json builtin_params(const std::string& name) {
  const ExperimentConfig c = builtin_config(name);
  const ModelParams& p = c.fixed;
  json j;
  j["model"] = to_string(c.model);
  j["rho"] = p.rho;
  j["p_tilde"] = matrix_to_json(p.p_tilde);
  j["row_membership"] = {{"n_r", p.n_r},
                         {"pure_per_community", p.pure_per_community},
                         {"mixing", vector_to_json(p.mixing)}};
  j["n_c"] = p.n_c;
  if (c.model == ModelKind::kOdcnm) j["z_c"] = p.z_c;
  return j;
}

}  // namespace

json RunManifest::to_json() const {
  return json{{"subcommand", subcommand}, {"parameters", parameters},
              {"seed", seed},             {"inputs", inputs},
              {"outputs", outputs},       {"command", command},
              {"version", version}};
}

RunManifest RunManifest::from_json(const json& j) {
  RunManifest m;
  m.subcommand = j.at("subcommand").get<std::string>();
  m.parameters = j.at("parameters");
  m.seed = j.at("seed").get<std::uint64_t>();
  m.inputs = j.at("inputs");
  m.outputs = j.at("outputs");
  m.command = j.at("command").get<std::vector<std::string>>();
  m.version = j.at("version").get<std::string>();
  return m;
}

ModelInstance model_from_params(const json& params,
                                std::optional<ModelKind> kind_override,
                                std::uint64_t seed) {
  if (!params.is_object()) throw ParameterError("params must be a JSON object");
  ModelInstance m;
  m.kind = kind_override ? *kind_override
                         : parse_model_kind(params.value("model", "onm"));

  if (params.contains("p_tilde")) {
    m.p = ConnectivityMatrix(matrix_from_json(params["p_tilde"], "p_tilde"),
                             params.value("rho", 1.0));
  } else if (params.contains("p")) {
    const Matrix p = matrix_from_json(params["p"], "p");
    const double rho = p.maxCoeff();
    if (!(rho > 0.0)) throw ParameterError("'p' must have a positive entry");
    m.p = ConnectivityMatrix(p / rho, rho);
  } else {
    throw ParameterError("params need 'p_tilde' (with 'rho') or 'p'");
  }
  const Index k_r = m.p.row_communities();
  const auto k_c = static_cast<int>(m.p.column_communities());

  if (params.contains("pi_r")) {
    m.pi_r = RowMembership(matrix_from_json(params["pi_r"], "pi_r"));
  } else if (params.contains("row_membership")) {
    const json& rm = params["row_membership"];
    const Vector mixing = vector_from_json(rm.at("mixing"), "mixing");
    if (mixing.size() != k_r) {
      throw DimensionError("mixing vector must have K_r = " +
                           std::to_string(k_r) + " entries");
    }
    const Index pure = rm.at("pure_per_community").get<Index>();
    const Index n_r = rm.at("n_r").get<Index>();
    if (n_r < pure * k_r) {
      throw ParameterError("n_r is smaller than K_r x pure_per_community");
    }
    m.pi_r = make_row_membership(pure, n_r - pure * k_r, mixing);
  } else {
    throw ParameterError("params need 'pi_r' or 'row_membership'");
  }

  if (params.contains("labels")) {
    const auto raw = params["labels"].get<std::vector<int>>();
    m.labels = ColumnLabels::from_one_based(raw, k_c);
  } else if (params.contains("n_c")) {
    m.labels = sample_uniform_labels(
        params["n_c"].get<Index>(), k_c,
        derive_seed(seed, SeedPurpose::kColumnLabels));
  } else {
    throw ParameterError("params need 'labels' or 'n_c'");
  }

  if (m.kind == ModelKind::kOdcnm) {
    if (params.contains("theta_c")) {
      m.theta_c = DegreeVector(vector_from_json(params["theta_c"], "theta_c"),
                               DegreeRole::kColumn);
    } else if (params.contains("z_c")) {
      m.theta_c = sample_column_degrees(
          m.labels.size(), params["z_c"].get<double>(),
          derive_seed(seed, SeedPurpose::kColumnDegrees));
    } else {
      throw ParameterError("odcnm needs 'theta_c' or 'z_c'");
    }
  }
  if (m.kind == ModelKind::kDconm) {
    if (params.contains("theta_r")) {
      m.theta_r = DegreeVector(vector_from_json(params["theta_r"], "theta_r"),
                               DegreeRole::kRow);
    } else if (params.contains("z_r")) {
      m.theta_r = sample_degrees(m.pi_r.rows(), params["z_r"].get<double>(),
                                 DegreeRole::kRow,
                                 derive_seed(seed, SeedPurpose::kRowDegrees));
    } else {
      throw ParameterError("dconm needs 'theta_r' or 'z_r'");
    }
  }
  return m;
}

void validate_instance(const ModelInstance& m) {
  if (m.kind == ModelKind::kDconm) {
    validate_dconm_params(m.pi_r, m.labels, m.p).require();
  } else {
    validate_onm_params(m.pi_r, m.labels, m.p).require();
  }
}

json config_to_json(const ExperimentConfig& c) {
  const ModelParams& p = c.fixed;
  json values = json::array();
  for (double v : c.values) values.push_back(v);
  return json{
      {"name", c.name},
      {"model", to_string(c.model)},
      {"sweep", {{"variable", to_string(c.sweep)}, {"values", values}}},
      {"fixed",
       {{"n_r", p.n_r},
        {"n_c", p.n_c},
        {"k_r", p.k_r},
        {"k_c", p.k_c},
        {"rho", p.rho},
        {"z_c", p.z_c},
        {"p_tilde", matrix_to_json(p.p_tilde)},
        {"mixing", vector_to_json(p.mixing)},
        {"pure_per_community", p.pure_per_community}}},
      {"repetitions", c.repetitions},
      {"master_seed", c.master_seed}};
}

ExperimentConfig config_from_json(const json& j) {
  try {
    ExperimentConfig c;
    c.name = j.value("name", std::string("custom"));
    c.model = parse_model_kind(j.at("model").get<std::string>());
    c.sweep = parse_sweep_variable(j.at("sweep").at("variable").get<std::string>());
    c.values = j.at("sweep").at("values").get<std::vector<double>>();
    const json& f = j.at("fixed");
    ModelParams& p = c.fixed;
    p.n_r = f.at("n_r").get<Index>();
    p.n_c = f.at("n_c").get<Index>();
    p.k_r = f.at("k_r").get<int>();
    p.k_c = f.at("k_c").get<int>();
    p.rho = f.at("rho").get<double>();
    p.z_c = f.value("z_c", 1.0);
    p.p_tilde = matrix_from_json(f.at("p_tilde"), "p_tilde");
    p.mixing = vector_from_json(f.at("mixing"), "mixing");
    p.pure_per_community = f.at("pure_per_community").get<Index>();
    c.repetitions = j.value("repetitions", 50);
    c.master_seed = j.value("master_seed", kDefaultSeed);
    return c;
  } catch (const json::exception& e) {
    throw ParameterError(std::string("invalid experiment config: ") + e.what());
  }
}

void cmd_generate(const GenerateOptions& opts) {
  if (opts.out_adjacency.empty() || opts.out_truth.empty()) {
    throw ParameterError("generate needs --out-adjacency and --out-truth");
  }
  json params;
  if (!opts.builtin.empty()) {
    params = builtin_params(opts.builtin);
  } else if (!opts.params_file.empty()) {
    params = load_json(opts.params_file);
  } else {
    throw ParameterError("generate needs --params or --builtin");
  }
  std::optional<ModelKind> kind;
  if (!opts.model.empty()) kind = parse_model_kind(opts.model);
  params["model"] = to_string(kind ? *kind : parse_model_kind(params.value("model", "onm")));

  const ModelInstance m = model_from_params(params, kind, opts.seed);
  validate_instance(m);
  const PopulationMatrix omega =
      build_omega(m.pi_r, m.labels, m.p, m.theta_c, m.theta_r);
  const BiAdjacency a =
      sample_adjacency(omega, derive_seed(opts.seed, SeedPurpose::kAdjacency));

  OutputGuard guard;
  ensure_parent(opts.out_adjacency);
  fs::create_directories(opts.out_truth);

  RunManifest manifest;
  manifest.subcommand = "generate";
  manifest.parameters = params;
  manifest.seed = opts.seed;
  manifest.command = {"dinet", "generate", "--params",
                      (opts.out_truth / "params.json").string(), "--seed",
                      std::to_string(opts.seed), "--out-adjacency",
                      opts.out_adjacency.string(), "--out-truth",
                      opts.out_truth.string()};
  json outputs = {{"adjacency", opts.out_adjacency.string()},
                  {"pi_r", (opts.out_truth / "pi_r.csv").string()},
                  {"labels", (opts.out_truth / "labels.txt").string()},
                  {"params", (opts.out_truth / "params.json").string()}};

  io::save_adjacency(guard.track(opts.out_adjacency), a);
  io::save_csv(guard.track(opts.out_truth / "pi_r.csv"), m.pi_r.matrix());
  io::save_labels(guard.track(opts.out_truth / "labels.txt"), m.labels);
  io::save_text(guard.track(opts.out_truth / "params.json"), dump(params));
  if (m.theta_c) {
    const auto path = opts.out_truth / "theta_c.csv";
    io::save_csv(guard.track(path), m.theta_c->theta());
    outputs["theta_c"] = path.string();
  }
  if (m.theta_r) {
    const auto path = opts.out_truth / "theta_r.csv";
    io::save_csv(guard.track(path), m.theta_r->theta());
    outputs["theta_r"] = path.string();
  }
  manifest.outputs = outputs;
  const std::string text = dump(manifest.to_json());
  io::save_text(guard.track(opts.out_truth / "manifest.json"), text);
  io::save_text(guard.track(sidecar_manifest(opts.out_adjacency)), text);
  guard.commit();
}

void cmd_fit(const FitCommandOptions& opts) {
  if (opts.k_r > opts.k_c) {
    throw ParameterError("K_r ≤ K_c is required for identifiability (got K_r = " +
                         std::to_string(opts.k_r) + ", K_c = " +
                         std::to_string(opts.k_c) + ")");
  }
  if (opts.out_dir.empty()) throw ParameterError("fit needs --out-dir");
  const Method method = parse_method(opts.method);
  const BiAdjacency a = io::load_adjacency(opts.adjacency);
  const FitResult r = fit(a, method, opts.k_r, opts.k_c, opts.seed);

  json diag;
  diag["method"] = to_string(method);
  diag["singular_values"] = vector_to_json(r.diagnostics.sigma);
  diag["delta_c_hat"] = std::isfinite(r.diagnostics.delta_c_hat)
                            ? json(r.diagnostics.delta_c_hat)
                            : json(nullptr);
  diag["clipped_count"] = r.diagnostics.clipped_count;
  diag["zero_rows"] = {{"membership", one_based(r.diagnostics.zero_membership_rows)},
                       {"column", one_based(r.diagnostics.zero_column_rows)}};
  diag["corners"] = one_based(r.corners.indices);
  diag["kmeans_cost"] = r.diagnostics.kmeans_cost;
  diag["kmeans_restarts"] = r.diagnostics.kmeans_restarts;

  OutputGuard guard;
  fs::create_directories(opts.out_dir);
  RunManifest manifest;
  manifest.subcommand = "fit";
  manifest.parameters = {{"method", to_string(method)},
                         {"k_r", opts.k_r},
                         {"k_c", opts.k_c}};
  manifest.seed = opts.seed;
  manifest.inputs = {{"adjacency", opts.adjacency.string()}};
  manifest.outputs = {{"pi_r", (opts.out_dir / "pi_r.csv").string()},
                      {"labels", (opts.out_dir / "labels.txt").string()},
                      {"diagnostics", (opts.out_dir / "diagnostics.json").string()}};
  manifest.command = {"dinet", "fit", "--method", to_string(method),
                      "--adjacency", opts.adjacency.string(), "--k-r",
                      std::to_string(opts.k_r), "--k-c", std::to_string(opts.k_c),
                      "--seed", std::to_string(opts.seed), "--out-dir",
                      opts.out_dir.string()};

  io::save_csv(guard.track(opts.out_dir / "pi_r.csv"), r.pi_r_hat.matrix());
  io::save_labels(guard.track(opts.out_dir / "labels.txt"), r.labels_hat);
  io::save_text(guard.track(opts.out_dir / "diagnostics.json"), dump(diag));
  io::save_text(guard.track(opts.out_dir / "manifest.json"),
                dump(manifest.to_json()));
  guard.commit();
}

json cmd_evaluate(const EvaluateOptions& opts) {
  const Matrix pi_true = io::load_csv(opts.truth_dir / "pi_r.csv");
  const Matrix pi_hat = io::load_csv(opts.estimate_dir / "pi_r.csv");
  const auto labels_true = io::load_labels(opts.truth_dir / "labels.txt");
  const auto labels_hat = io::load_labels(opts.estimate_dir / "labels.txt");
  if (pi_true.rows() != pi_hat.rows() || pi_true.cols() != pi_hat.cols()) {
    throw DimensionError("row memberships differ in shape: truth " +
                         std::to_string(pi_true.rows()) + "x" +
                         std::to_string(pi_true.cols()) + ", estimate " +
                         std::to_string(pi_hat.rows()) + "x" +
                         std::to_string(pi_hat.cols()));
  }
  if (labels_true.size() != labels_hat.size()) {
    throw DimensionError("label files differ in length: truth " +
                         std::to_string(labels_true.size()) + ", estimate " +
                         std::to_string(labels_hat.size()));
  }
  int k_c = 1;
  for (int l : labels_true) k_c = std::max(k_c, l);
  for (int l : labels_hat) k_c = std::max(k_c, l);
  const ColumnLabels truth = ColumnLabels::from_one_based(labels_true, k_c);
  const ColumnLabels estimate = ColumnLabels::from_one_based(labels_hat, k_c);

  const auto [mh, row_perm] = mhamm(RowMembership(pi_hat), RowMembership(pi_true));
  const auto [hm, col_perm] = hamm(estimate, truth, k_c);
  json result{{"mhamm", mh},
              {"hamm", hm},
              {"best_row_perm", one_based(row_perm)},
              {"best_col_perm", one_based(col_perm)}};
  if (k_c <= kMaxFcCommunities && truth.all_communities_nonempty()) {
    const auto [fc, fc_perm] = f_c_error(estimate, truth, k_c);
    result["f_c"] = fc;
    result["best_f_c_perm"] = one_based(fc_perm);
  } else {
    result["f_c"] = nullptr;
    result["best_f_c_perm"] = nullptr;
  }
  if (!opts.out.empty()) {
    OutputGuard guard;
    ensure_parent(opts.out);
    RunManifest manifest;
    manifest.subcommand = "evaluate";
    manifest.inputs = {{"truth_dir", opts.truth_dir.string()},
                       {"estimate_dir", opts.estimate_dir.string()}};
    manifest.outputs = {{"metrics", opts.out.string()}};
    manifest.command = {"dinet", "evaluate", "--truth", opts.truth_dir.string(),
                        "--estimate", opts.estimate_dir.string(), "--out",
                        opts.out.string()};
    io::save_text(guard.track(opts.out), dump(result));
    io::save_text(guard.track(sidecar_manifest(opts.out)),
                  dump(manifest.to_json()));
    guard.commit();
  }
  return result;
}

SweepResults cmd_experiment(const ExperimentOptions& opts, std::ostream& log) {
  if (opts.out_csv.empty()) throw ParameterError("experiment needs --out");
  ExperimentConfig config;
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), opts.name_or_config) != names.end()) {
    config = builtin_config(opts.name_or_config, opts.seed);
  } else if (fs::exists(opts.name_or_config)) {
    config = config_from_json(load_json(opts.name_or_config));
    config.master_seed = opts.seed;
  } else {
    throw ParameterError("unknown experiment '" + opts.name_or_config +
                         "' (expected experiment-1 .. experiment-4 or a "
                         "config file)");
  }
  if (opts.reps) config.repetitions = *opts.reps;
  validate(config);

  const auto start = std::chrono::steady_clock::now();
  SweepResults results = run_experiment(config, opts.threads);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();

  std::ostringstream csv;
  write_results_csv(csv, results, opts.timing);

  OutputGuard guard;
  ensure_parent(opts.out_csv);
  RunManifest manifest;
  manifest.subcommand = "experiment";
  manifest.parameters = config_to_json(config);
  manifest.seed = opts.seed;
  manifest.inputs = {{"experiment", opts.name_or_config}};
  manifest.outputs = {{"results", opts.out_csv.string()}};
  manifest.command = {"dinet", "experiment", opts.name_or_config, "--reps",
                      std::to_string(config.repetitions), "--seed",
                      std::to_string(opts.seed), "--out", opts.out_csv.string()};
  if (opts.timing) manifest.command.push_back("--timing");
  io::save_text(guard.track(opts.out_csv), csv.str());
  io::save_text(guard.track(sidecar_manifest(opts.out_csv)),
                dump(manifest.to_json()));
  guard.commit();

  log << "experiment " << config.name << ": " << config.values.size()
      << " sweep values x " << config.repetitions << " repetitions, total wall "
      << "time " << io::format_g6(seconds) << " s\n";
  return results;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Spectral estimation for directed networks with overlapping "
               "row and non-overlapping column communities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(DINET_VERSION));

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Sample a network from a model");
  generate->add_option("--model", gen.model, "onm | odcnm | dconm");
  generate->add_option("--params", gen.params_file, "JSON parameter file");
  generate->add_option("--builtin", gen.builtin,
                       "use the fixed parameters of a built-in experiment");
  generate->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  generate->add_option("--out-adjacency", gen.out_adjacency,
                       "adjacency output (.mtx, .tsv or .csv)")->required();
  generate->add_option("--out-truth", gen.out_truth,
                       "directory for Pi_r, labels and manifest")->required();

  FitCommandOptions fopts;
  auto* fit_cmd = app.add_subcommand("fit", "Estimate memberships from an adjacency matrix");
  fit_cmd->add_option("--method", fopts.method, "ona | odcna")->capture_default_str();
  fit_cmd->add_option("--adjacency", fopts.adjacency, "adjacency file")->required();
  fit_cmd->add_option("--k-r", fopts.k_r, "number of row communities")->required();
  fit_cmd->add_option("--k-c", fopts.k_c, "number of column communities")->required();
  fit_cmd->add_option("--seed", fopts.seed, "random seed")->capture_default_str();
  fit_cmd->add_option("--out-dir", fopts.out_dir, "output directory")->required();

  EvaluateOptions eopts;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score an estimate against the truth");
  eval_cmd->add_option("--truth", eopts.truth_dir, "truth directory")->required();
  eval_cmd->add_option("--estimate", eopts.estimate_dir, "estimate directory")->required();
  eval_cmd->add_option("--out", eopts.out, "also write the metrics JSON here");

  ExperimentOptions xopts;
  int reps = 0;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a simulation sweep");
  exp_cmd->add_option("experiment", xopts.name_or_config,
                      "experiment-1 .. experiment-4 or a JSON config")->required();
  auto* reps_opt = exp_cmd->add_option("--reps", reps, "repetitions per sweep value");
  exp_cmd->add_option("--seed", xopts.seed, "master seed")->capture_default_str();
  exp_cmd->add_option("--out", xopts.out_csv, "results CSV")->required();
  exp_cmd->add_option("--threads", xopts.threads,
                      "worker threads (0: DINET_THREADS or all cores)");
  exp_cmd->add_flag("--timing", xopts.timing, "write measured wall_ms values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (generate->parsed()) {
      out << "seed " << gen.seed << '\n';
      cmd_generate(gen);
    } else if (fit_cmd->parsed()) {
      out << "seed " << fopts.seed << '\n';
      cmd_fit(fopts);
    } else if (eval_cmd->parsed()) {
      out << cmd_evaluate(eopts).dump(2) << '\n';
    } else if (exp_cmd->parsed()) {
      if (reps_opt->count() > 0) xopts.reps = reps;
      out << "seed " << xopts.seed << '\n';
      cmd_experiment(xopts, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dinet::cli
