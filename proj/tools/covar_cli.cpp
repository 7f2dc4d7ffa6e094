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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covar/exact.hpp"
#include "covar/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int report_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return 2;
}

int cmd_run(const std::string& config_path) {
  const auto config = covar::load_config(config_path);
  const auto result = covar::run_experiment(config);
  json runs = json::array();
  for (const auto& r : result.runs) runs.push_back(covar::to_json(r));
  std::cout << json{{"output_dir", result.output_dir.string()}, {"runs", runs}}.dump(2) << '\n';
  if (!result.all_ok()) {
    std::cerr << json{{"error", "run_failed"},
                      {"message", "one or more runs failed; see metadata.json"}}
                     .dump()
              << '\n';
    return 1;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, double target, std::vector<double> candidates,
              const std::vector<std::uint64_t>& seeds_override, int level) {
  auto config = covar::load_config(config_path);
  const auto seeds = seeds_override.empty() ? config.seeds : seeds_override;
  const fs::path dir = covar::resolve_output_dir(config);
  fs::create_directories(dir);

  json out = json::array();
  std::ofstream points(dir / "linesearch_points.csv");
  points << "seed,g_min,dt\n";
  bool all_accepted = true;
  for (std::uint64_t seed : seeds) {
    const auto inst = covar::build_model(config.model, seed, candidates.front());
    const auto gap = covar::gap_and_epsilon(inst.schedule, config.gap_grid_points);
    const auto result = covar::dt_linesearch(config, target, candidates, seed, level);
    json entry = covar::to_json(result);
    entry["seed"] = seed;
    entry["g_min"] = gap.g_min;
    out.push_back(entry);
    if (result.accepted_dt) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", gap.g_min, *result.accepted_dt);
      points << seed << ',' << buf << '\n';
    } else {
      all_accepted = false;
    }
  }
  std::cout << out.dump(2) << '\n';
  if (!all_accepted) {
    std::cerr << json{{"error", "linesearch_exhausted"},
                      {"message", "no candidate reached the target for at least one seed"}}
                     .dump()
              << '\n';
    return 1;
  }
  return 0;
}

int cmd_spectrum(const std::string& config_path, int grid) {
  const auto config = covar::load_config(config_path);
  const fs::path dir = covar::resolve_output_dir(config);
  fs::create_directories(dir);
  json out = json::array();
  for (std::uint64_t seed : config.seeds) {
    const auto inst = covar::build_model(config.model, seed, config.dts.front());
    const auto scan = covar::spectrum_scan(inst.schedule, grid);
    const std::string name = "spectrum_seed" + std::to_string(seed) + ".csv";
    std::ofstream csv(dir / name);
    covar::write_spectrum_csv(csv, scan);
    const auto gap = covar::gap_and_epsilon(inst.schedule, grid);
    out.push_back({{"seed", seed},
                   {"file", name},
                   {"g_min", gap.g_min},
                   {"s_at_min", gap.s_at_min},
                   {"epsilon_transition", gap.epsilon_transition},
                   {"degenerate", gap.degenerate}});
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_fit(const std::string& csv_path) {
  const auto points = covar::read_scaling_csv(csv_path);
  const auto fit = covar::fit_inverse_dt_vs_loggap(points);
  std::cout << json{{"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"residual_rms", fit.residual_rms},
                    {"num_points", points.size()}}
                   .dump(2)
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic covariance root finding experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run every (seed, dt, level) combination");
  run->add_option("config", config_path, "JSON config")->required();

  double target = 0.0015;
  std::vector<double> candidates;
  std::vector<std::uint64_t> seeds;
  int level = 0;
  auto* sweep = app.add_subcommand("sweep-dt", "Largest dt reaching the target error");
  sweep->add_option("config", config_path, "JSON config")->required();
  sweep->add_option("--target-error", target, "Final |E - E_level| target");
  sweep->add_option("--candidates", candidates, "Descending dt candidates")
      ->required()
      ->delimiter(',');
  sweep->add_option("--seeds", seeds, "Seeds (default: config seeds)")->delimiter(',');
  sweep->add_option("--level", level, "Targeted level");

  int grid = 101;
  auto* spectrum = app.add_subcommand("spectrum", "Export the exact spectrum along the schedule");
  spectrum->add_option("config", config_path, "JSON config")->required();
  spectrum->add_option("--grid", grid, "Number of s points");

  std::string csv_path;
  auto* fit = app.add_subcommand("fit-scaling", "Fit 1/dt against ln(g_min)");
  fit->add_option("csv", csv_path, "CSV with g_min and dt columns")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what());
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*sweep) return cmd_sweep(config_path, target, candidates, seeds, level);
    if (*spectrum) return cmd_spectrum(config_path, grid);
    if (*fit) return cmd_fit(csv_path);
  } catch (const covar::Error& e) {
    return report_error(std::string(covar::to_string(e.kind())), e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
  return 0;
}
