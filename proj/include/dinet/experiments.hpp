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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dinet/fit.hpp"
#include "dinet/model.hpp"

namespace dinet {

enum class SweepVariable { kNc, kRho, kZc };

std::string to_string(SweepVariable v);
SweepVariable parse_sweep_variable(const std::string& name);

/// Parameters of one simulated network. Row memberships are
/// `pure_per_community` pure nodes per row community followed by
/// n_r - K_r * pure_per_community nodes with membership `mixing`.
struct ModelParams {
  Index n_r = 400;
  Index n_c = 300;
  int k_r = 3;
  int k_c = 4;
  double rho = 0.5;
  /// Degree spread for ODCNM: 1/theta_c ~ U[1, z_c]. Ignored under ONM.
  double z_c = 1.0;
  Matrix p_tilde;
  Vector mixing;
  Index pure_per_community = 100;
};

struct ExperimentConfig {
  std::string name;
  ModelKind model = ModelKind::kOnm;
  SweepVariable sweep = SweepVariable::kNc;
  std::vector<double> values;
  ModelParams fixed;
  int repetitions = 50;
  std::uint64_t master_seed = 42;
};

/// Throws ParameterError describing the first problem found.
void validate(const ExperimentConfig& config);

/// The fixed parameters with the sweep variable set to `value`.
ModelParams params_at(const ExperimentConfig& config, double value);

/// experiment-1 .. experiment-4 with the published settings.
ExperimentConfig builtin_config(const std::string& name,
                                std::uint64_t master_seed = 42);
std::vector<std::string> builtin_names();

struct RepetitionRecord {
  double mhamm = 0.0;
  double hamm = 0.0;
  bool failed = false;
  std::string error;
};

struct MethodSummary {
  Method method = Method::kOna;
  double mean_mhamm = 0.0;
  double sd_mhamm = 0.0;
  double mean_hamm = 0.0;
  double sd_hamm = 0.0;
  int failures = 0;
  /// Total fitting time over the repetitions of the cell.
  double wall_ms = 0.0;
  std::vector<RepetitionRecord> repetitions;
};

struct SweepCell {
  double value = 0.0;
  std::array<MethodSummary, 2> methods;  // ONA, ODCNA
  /// Column label draws repeated because a community came out empty.
  int label_resamples = 0;
};

struct SweepResults {
  std::string name;
  SweepVariable sweep = SweepVariable::kNc;
  std::vector<SweepCell> cells;
};

/// Number of worker threads: `requested` if positive, else DINET_THREADS if
/// set to a positive value, else the hardware concurrency.
int resolve_threads(int requested = 0);

/// Runs every (sweep value, repetition) pair: draw labels (and theta_c under
/// ODCNM), build Omega, sample A, fit ONA and ODCNA, score against the truth.
/// Per-repetition streams come from (master seed, cell, repetition), so the
/// result does not depend on `threads`. Failed fits are counted per cell and
/// left out of the means.
SweepResults run_experiment(const ExperimentConfig& config, int threads = 0);

/// CSV with header
/// sweep_value,method,mean_mhamm,sd_mhamm,mean_hamm,sd_hamm,failures,wall_ms.
/// wall_ms is written as 0 unless include_timing is set, so that reruns are
/// byte-identical.
void write_results_csv(std::ostream& os, const SweepResults& results,
                       bool include_timing = false);

}  // namespace dinet
