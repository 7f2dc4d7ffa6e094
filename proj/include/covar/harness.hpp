// Copyright 2026 The covar Authors
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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "covar/adiabatic.hpp"
#include "covar/baselines.hpp"
#include "covar/covariance.hpp"
#include "covar/exact.hpp"
#include "covar/models.hpp"

namespace covar {

/// Model preset plus overrides. The per-run seed replaces the `seed`
/// fields of the random presets.
struct ModelConfig {
  std::string preset = "spin_ring";  // spin_ring | schwinger | maxcut
  SpinRingSpec spin_ring;
  SchwingerSpec schwinger;
  MaxCutSpec maxcut;
  /// Overrides the preset's natural schedule kind when set.
  std::optional<MorphKind> schedule_kind;

  int num_qubits() const;
};

struct VqeBaselineConfig {
  bool enabled = false;
  VqeConfig vqe;
  int iterations_per_step = 50;
  std::optional<int> final_iterations;
  /// Plain VQE budget; defaults to the adiabatic arm's total.
  std::optional<int> total_iterations;
};

struct ExperimentConfig {
  ModelConfig model;
  int num_layers = 10;
  Entangler entangler = Entangler::Ring;
  std::vector<double> dts{0.1};
  std::vector<int> levels{0};
  LMConfig lm;
  std::optional<int> final_max_iterations;
  double jitter_std = 0.0;
  VqeBaselineConfig vqe;
  bool oracle = true;
  /// Grid for the g_min scan recorded in the metadata.
  int gap_grid_points = 51;
  std::vector<std::uint64_t> seeds{0};
  std::string output_dir = "covar_out";
};

void validate(const ExperimentConfig& config);

/// Strict JSON mapping: unknown keys and wrong types are parse errors that
/// name the offending field.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Output directory after applying the COVAR_OUTPUT_ROOT override.
std::filesystem::path resolve_output_dir(const ExperimentConfig& config);

/// Model instance for one seed and time step.
ModelInstance build_model(const ModelConfig& model, std::uint64_t seed, double delta_t);

/// File name for one (seed, dt, level) run, e.g. "seed3_dt0.05_level0.csv".
std::string run_file_name(std::uint64_t seed, double delta_t, int level);

struct RunSummary {
  std::uint64_t seed = 0;
  double delta_t = 0.0;
  int level = 0;
  std::string file;
  std::string status = "ok";  // ok | aborted | error
  std::string error;
  std::int64_t shot_budget = 0;
  std::optional<GapReport> gap;
  int total_iterations = 0;
  double final_energy = 0.0;
  std::optional<double> final_delta_e;
  /// |E_final - E_level| of the final Hamiltonian, when the oracle is on.
  std::optional<double> final_target_error;
  double wall_time_s = 0.0;
};

struct ExperimentResult {
  std::filesystem::path output_dir;
  std::vector<RunSummary> runs;
  bool all_ok() const;
};

/// Runs one (seed, dt, level) combination and writes its CSV (every
/// enabled method's rows in one file) into `dir`.
RunSummary run_single(const ExperimentConfig& config, std::uint64_t seed, double delta_t,
                      int level, const std::filesystem::path& dir);

/// Runs the full grid and writes metadata.json after all runs finish.
/// Failures are recorded per run; siblings still run.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct LinesearchAttempt {
  double delta_t = 0.0;
  std::optional<double> final_error;
  std::string file;
  std::string status;
};

struct LinesearchResult {
  std::optional<double> accepted_dt;  // empty when every candidate failed
  double best_error = 0.0;
  std::vector<LinesearchAttempt> attempts;
};

/// Tries candidates (descending) until the final |E - E_level| <= target.
LinesearchResult dt_linesearch(const ExperimentConfig& config, double target_error,
                               const std::vector<double>& dt_candidates, std::uint64_t seed,
                               int level = 0);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

/// Least squares of 1/dt = slope * ln(g_min) + intercept.
ScalingFit fit_inverse_dt_vs_loggap(const std::vector<std::pair<double, double>>& points);

/// Reads g_min,dt rows (header required, any column order).
std::vector<std::pair<double, double>> read_scaling_csv(const std::filesystem::path& path);

nlohmann::json to_json(const RunSummary& run);
nlohmann::json to_json(const LinesearchResult& result);

}  // namespace covar
