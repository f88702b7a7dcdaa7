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

#pragma once

// Command-line front end: generate, fit, evaluate, experiment.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dinet/experiments.hpp"
#include "dinet/model.hpp"

namespace dinet::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Record written next to every output; enough to re-run the command.
struct RunManifest {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = kDefaultSeed;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  std::vector<std::string> command;
  std::string version = DINET_VERSION;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// Model parameters resolved from a params file or a built-in experiment.
struct ModelInstance {
  ModelKind kind = ModelKind::kOnm;
  RowMembership pi_r{Matrix::Identity(1, 1)};
  ColumnLabels labels{{0}, 1};
  ConnectivityMatrix p{Matrix::Ones(1, 1), 1.0};
  std::optional<DegreeVector> theta_c;
  std::optional<DegreeVector> theta_r;
};

/// Builds a model from the JSON params schema (see README). Random parts
/// (labels, degrees) are drawn from streams derived from `seed`.
ModelInstance model_from_params(const nlohmann::json& params,
                                std::optional<ModelKind> kind_override,
                                std::uint64_t seed);

/// Runs the identifiability checks for the instance's model; throws
/// IdentifiabilityError naming the failing condition.
void validate_instance(const ModelInstance& m);

nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct GenerateOptions {
  std::string model;  // empty: take it from the params file
  std::filesystem::path params_file;
  std::string builtin;  // alternative to params_file
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out_adjacency;
  std::filesystem::path out_truth;
};

struct FitCommandOptions {
  std::string method = "ona";
  std::filesystem::path adjacency;
  int k_r = 0;
  int k_c = 0;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out_dir;
};

struct EvaluateOptions {
  std::filesystem::path truth_dir;
  std::filesystem::path estimate_dir;
  std::filesystem::path out;  // optional metrics JSON file
};

struct ExperimentOptions {
  std::string name_or_config;
  std::optional<int> reps;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out_csv;
  bool timing = false;
  int threads = 0;  // 0: DINET_THREADS or hardware concurrency
};

void cmd_generate(const GenerateOptions& opts);
void cmd_fit(const FitCommandOptions& opts);
nlohmann::json cmd_evaluate(const EvaluateOptions& opts);
SweepResults cmd_experiment(const ExperimentOptions& opts, std::ostream& log);

/// Parses argv and dispatches. Returns the process exit code; errors are
/// written to `err`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace dinet::cli
