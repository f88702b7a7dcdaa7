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

#include "dinet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include "dinet/errors.hpp"
#include "dinet/io.hpp"
#include "dinet/metrics.hpp"
#include "dinet/random.hpp"

namespace dinet {

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kNc:
      return "n_c";
    case SweepVariable::kRho:
      return "rho";
    case SweepVariable::kZc:
      return "z_c";
  }
  return "unknown";
}

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "n_c") return SweepVariable::kNc;
  if (name == "rho") return SweepVariable::kRho;
  if (name == "z_c") return SweepVariable::kZc;
  throw ParameterError("unknown sweep variable '" + name +
                       "' (expected n_c, rho or z_c)");
}

ModelParams params_at(const ExperimentConfig& config, double value) {
  ModelParams p = config.fixed;
  switch (config.sweep) {
    case SweepVariable::kNc:
      p.n_c = static_cast<Index>(std::llround(value));
      break;
    case SweepVariable::kRho:
      p.rho = value;
      break;
    case SweepVariable::kZc:
      p.z_c = value;
      break;
  }
  return p;
}

void validate(const ExperimentConfig& config) {
  if (config.repetitions < 1) {
    throw ParameterError("repetitions ≥ 1 is required, got " +
                         std::to_string(config.repetitions));
  }
  if (config.values.empty()) throw ParameterError("sweep has no values");
  if (config.model == ModelKind::kDconm) {
    throw ParameterError("experiments support the onm and odcnm models only");
  }
  for (double value : config.values) {
    if (config.sweep == SweepVariable::kNc &&
        (value != std::round(value) || value < 1.0)) {
      throw ParameterError("n_c sweep values must be positive integers");
    }
    const ModelParams p = params_at(config, value);
    if (p.k_r < 1 || p.k_r > p.k_c) {
      throw ParameterError("K_r ≤ K_c is required for identifiability");
    }
    if (p.p_tilde.rows() != p.k_r || p.p_tilde.cols() != p.k_c) {
      throw ParameterError("P_tilde must be K_r x K_c");
    }
    ConnectivityMatrix(p.p_tilde, p.rho);
    if (p.mixing.size() != p.k_r) {
      throw ParameterError("mixing vector must have K_r entries");
    }
    if (p.pure_per_community < 1) {
      throw IdentifiabilityError("(I2)",
                                 "at least one pure row node per community");
    }
    if (p.n_r < p.pure_per_community * p.k_r) {
      throw ParameterError("n_r is smaller than K_r x pure_per_community");
    }
    if (p.n_c < p.k_c) throw ParameterError("n_c must be >= K_c");
    if (config.model == ModelKind::kOdcnm && !(p.z_c >= 1.0)) {
      throw ParameterError("z_c >= 1 is required");
    }
    // Mixing vector must be a valid membership row.
    RowMembership(Matrix(p.mixing.transpose()));
  }
}

namespace {

Matrix published_p_tilde() {
  Matrix p(3, 4);
  p << 1.0, 0.3, 0.2, 0.3,  //
      0.2, 0.9, 0.1, 0.2,   //
      0.3, 0.2, 0.8, 0.3;
  return p;
}

ModelParams published_params() {
  ModelParams p;
  p.n_r = 400;
  p.n_c = 300;
  p.k_r = 3;
  p.k_c = 4;
  p.rho = 0.5;
  p.z_c = 1.0;
  p.p_tilde = published_p_tilde();
  p.mixing = Vector(3);
  p.mixing << 0.6, 0.3, 0.1;
  p.pure_per_community = 100;
  return p;
}

std::vector<double> rho_grid() {
  std::vector<double> v;
  for (int i = 1; i <= 10; ++i) v.push_back(i / 10.0);
  return v;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"experiment-1", "experiment-2", "experiment-3", "experiment-4"};
}

ExperimentConfig builtin_config(const std::string& name,
                                std::uint64_t master_seed) {
  ExperimentConfig c;
  c.name = name;
  c.fixed = published_params();
  c.repetitions = 50;
  c.master_seed = master_seed;
  if (name == "experiment-1") {
    c.model = ModelKind::kOnm;
    c.sweep = SweepVariable::kNc;
    c.values = {50, 100, 150, 200, 250, 300};
  } else if (name == "experiment-2") {
    c.model = ModelKind::kOnm;
    c.sweep = SweepVariable::kRho;
    c.values = rho_grid();
  } else if (name == "experiment-3") {
    c.model = ModelKind::kOdcnm;
    c.sweep = SweepVariable::kZc;
    c.values = {1, 2, 3, 4, 5, 6, 7, 8};
  } else if (name == "experiment-4") {
    c.model = ModelKind::kOdcnm;
    c.sweep = SweepVariable::kRho;
    c.fixed.z_c = 3.0;
    c.values = rho_grid();
  } else {
    throw ParameterError("unknown experiment '" + name +
                         "' (expected experiment-1 .. experiment-4)");
  }
  return c;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DINET_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct TaskOutput {
  std::array<RepetitionRecord, 2> records;
  std::array<double, 2> wall_ms{};
  int label_resamples = 0;
};

TaskOutput run_repetition(const ExperimentConfig& config, std::size_t cell,
                          std::size_t rep) {
  const ModelParams p = params_at(config, config.values[cell]);
  const std::uint64_t master = config.master_seed;

  TaskOutput out;
  const RowMembership pi_r = make_row_membership(
      p.pure_per_community, p.n_r - p.pure_per_community * p.k_r, p.mixing);
  const ColumnLabels labels = sample_uniform_labels(
      p.n_c, p.k_c, derive_seed(master, SeedPurpose::kColumnLabels, cell, rep),
      &out.label_resamples);
  const ConnectivityMatrix conn(p.p_tilde, p.rho);
  std::optional<DegreeVector> theta_c;
  if (config.model == ModelKind::kOdcnm) {
    theta_c = sample_column_degrees(
        p.n_c, p.z_c,
        derive_seed(master, SeedPurpose::kColumnDegrees, cell, rep));
  }
  const PopulationMatrix omega = build_omega(pi_r, labels, conn, theta_c);
  const BiAdjacency a = sample_adjacency(
      omega, derive_seed(master, SeedPurpose::kAdjacency, cell, rep));
  const std::uint64_t fit_seed =
      derive_seed(master, SeedPurpose::kFit, cell, rep);

  const std::array<Method, 2> methods{Method::kOna, Method::kOdcna};
  for (std::size_t m = 0; m < methods.size(); ++m) {
    RepetitionRecord& rec = out.records[m];
    const auto start = std::chrono::steady_clock::now();
    try {
      const FitResult fitted = fit(a, methods[m], p.k_r, p.k_c, fit_seed);
      rec.mhamm = mhamm(fitted.pi_r_hat, pi_r).first;
      rec.hamm = hamm(fitted.labels_hat, labels, p.k_c).first;
    } catch (const NumericalError& e) {
      rec.failed = true;
      rec.error = e.what();
    }
    out.wall_ms[m] = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return out;
}

void summarize(MethodSummary& s) {
  double sum_m = 0.0, sum_h = 0.0;
  int count = 0;
  for (const auto& r : s.repetitions) {
    if (r.failed) {
      ++s.failures;
      continue;
    }
    sum_m += r.mhamm;
    sum_h += r.hamm;
    ++count;
  }
  if (count == 0) {
    s.mean_mhamm = s.mean_hamm = std::numeric_limits<double>::quiet_NaN();
    s.sd_mhamm = s.sd_hamm = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  s.mean_mhamm = sum_m / count;
  s.mean_hamm = sum_h / count;
  double ss_m = 0.0, ss_h = 0.0;
  for (const auto& r : s.repetitions) {
    if (r.failed) continue;
    ss_m += (r.mhamm - s.mean_mhamm) * (r.mhamm - s.mean_mhamm);
    ss_h += (r.hamm - s.mean_hamm) * (r.hamm - s.mean_hamm);
  }
  s.sd_mhamm = count > 1 ? std::sqrt(ss_m / (count - 1)) : 0.0;
  s.sd_hamm = count > 1 ? std::sqrt(ss_h / (count - 1)) : 0.0;
}

}  // namespace

SweepResults run_experiment(const ExperimentConfig& config, int threads) {
  validate(config);
  const std::size_t cells = config.values.size();
  const auto reps = static_cast<std::size_t>(config.repetitions);
  const std::size_t total = cells * reps;

  std::vector<TaskOutput> outputs(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      try {
        outputs[t] = run_repetition(config, t / reps, t % reps);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const int n_threads =
      std::max(1, std::min(resolve_threads(threads), static_cast<int>(total)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Aggregate in (cell, repetition) order.
  SweepResults results{config.name, config.sweep, {}};
  for (std::size_t c = 0; c < cells; ++c) {
    SweepCell cell;
    cell.value = config.values[c];
    cell.methods[0].method = Method::kOna;
    cell.methods[1].method = Method::kOdcna;
    for (std::size_t r = 0; r < reps; ++r) {
      const TaskOutput& o = outputs[c * reps + r];
      cell.label_resamples += o.label_resamples;
      for (std::size_t m = 0; m < 2; ++m) {
        cell.methods[m].repetitions.push_back(o.records[m]);
        cell.methods[m].wall_ms += o.wall_ms[m];
      }
    }
    for (auto& s : cell.methods) summarize(s);
    results.cells.push_back(std::move(cell));
  }
  return results;
}

void write_results_csv(std::ostream& os, const SweepResults& results,
                       bool include_timing) {
  os << "sweep_value,method,mean_mhamm,sd_mhamm,mean_hamm,sd_hamm,failures,"
        "wall_ms\n";
  for (const auto& cell : results.cells) {
    for (const auto& s : cell.methods) {
      os << io::format_g6(cell.value) << ','
         << (s.method == Method::kOna ? "ONA" : "ODCNA") << ','
         << io::format_g6(s.mean_mhamm) << ',' << io::format_g6(s.sd_mhamm)
         << ',' << io::format_g6(s.mean_hamm) << ','
         << io::format_g6(s.sd_hamm) << ',' << s.failures << ','
         << io::format_g6(include_timing ? s.wall_ms : 0.0) << '\n';
    }
  }
}

}  // namespace dinet
