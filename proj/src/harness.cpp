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
#include "covar/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/QR>

namespace covar {

using nlohmann::json;
namespace fs = std::filesystem;

int ModelConfig::num_qubits() const {
  if (preset == "spin_ring") return spin_ring.num_qubits;
  if (preset == "schwinger") return schwinger.num_sites;
  if (preset == "maxcut") return maxcut.num_qubits;
  throw Error(ErrorKind::Parse, "field 'model.preset': unknown preset '" + preset + "'");
}

namespace {

// Reads one JSON object, tracking which keys were consumed.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw Error(ErrorKind::Parse, "field '" + name() + "': expected object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  template <typename T>
  std::optional<T> get(const std::string& key) {
    if (!j_.contains(key)) return std::nullopt;
    used_.insert(key);
    const json& v = j_.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(key, "expected boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) fail(key, "expected integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
          fail(key, "expected nonnegative integer");
        }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) fail(key, "expected number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(key, "expected string");
    }
    try {
      return v.get<T>();
    } catch (const json::exception& e) {
      fail(key, e.what());
    }
  }

  template <typename T>
  void read(const std::string& key, T& target) {
    if (auto v = get<T>(key)) target = std::move(*v);
  }

  template <typename T>
  void read_list(const std::string& key, std::vector<T>& target, bool allow_scalar = false) {
    if (!j_.contains(key)) return;
    used_.insert(key);
    const json& v = j_.at(key);
    json items = v;
    if (!v.is_array()) {
      if (!allow_scalar) fail(key, "expected array");
      items = json::array({v});
    }
    std::vector<T> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const json& item = items[i];
      const bool ok = std::is_integral_v<T> ? item.is_number_integer() : item.is_number();
      if (!ok) fail(key + "[" + std::to_string(i) + "]", "expected number");
      if constexpr (std::is_unsigned_v<T>) {
        if (!item.is_number_unsigned()) fail(key + "[" + std::to_string(i) + "]", "expected nonnegative integer");
      }
      out.push_back(item.get<T>());
    }
    target = std::move(out);
  }

  Reader child(const std::string& key) {
    used_.insert(key);
    return Reader(j_.at(key), path(key));
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!used_.count(item.key())) fail(item.key(), "unknown key");
    }
  }

  std::string path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw Error(ErrorKind::Parse, "field '" + path(key) + "': " + what);
  }

 private:
  std::string name() const { return path_.empty() ? "<root>" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void read_model(Reader r, ModelConfig& m) {
  r.read("preset", m.preset);
  if (auto kind = r.get<std::string>("schedule_kind")) {
    try {
      m.schedule_kind = morph_kind_from_string(*kind);
    } catch (const Error&) {
      r.fail("schedule_kind", "expected 'mixing' or 'perturbative'");
    }
  }
  if (m.preset == "spin_ring") {
    auto& s = m.spin_ring;
    r.read("num_qubits", s.num_qubits);
    r.read("coupling", s.coupling);
    r.read_list("fields", s.fields);
    r.read("field_scale", s.field_scale);
  } else if (m.preset == "schwinger") {
    auto& s = m.schwinger;
    r.read("num_qubits", s.num_sites);
    r.read("coupling", s.coupling);
    r.read("hopping", s.hopping);
    r.read("mass", s.mass);
    r.read("theta", s.theta_angle);
  } else if (m.preset == "maxcut") {
    auto& s = m.maxcut;
    r.read("num_qubits", s.num_qubits);
    r.read_list("node_weights", s.node_weights);
    r.read_list("pair_weights", s.pair_weights);
    r.read("distinct_pair_weights", s.distinct_pair_weights);
  } else {
    r.fail("preset", "unknown preset '" + m.preset + "'");
  }
  r.finish();
}

json model_to_json(const ModelConfig& m) {
  json j;
  j["preset"] = m.preset;
  if (m.schedule_kind) j["schedule_kind"] = std::string(to_string(*m.schedule_kind));
  if (m.preset == "spin_ring") {
    const auto& s = m.spin_ring;
    j["num_qubits"] = s.num_qubits;
    j["coupling"] = s.coupling;
    if (!s.fields.empty()) j["fields"] = s.fields;
    j["field_scale"] = s.field_scale;
  } else if (m.preset == "schwinger") {
    const auto& s = m.schwinger;
    j["num_qubits"] = s.num_sites;
    j["coupling"] = s.coupling;
    j["hopping"] = s.hopping;
    j["mass"] = s.mass;
    j["theta"] = s.theta_angle;
  } else {
    const auto& s = m.maxcut;
    j["num_qubits"] = s.num_qubits;
    if (!s.node_weights.empty()) j["node_weights"] = s.node_weights;
    if (!s.pair_weights.empty()) j["pair_weights"] = s.pair_weights;
    j["distinct_pair_weights"] = s.distinct_pair_weights;
  }
  return j;
}

void read_lm(Reader r, LMConfig& lm) {
  r.read("damping", lm.damping);
  r.read("pool_size", lm.pool_size);
  r.read("locality", lm.locality);
  r.read("max_iterations", lm.max_iterations);
  r.read("covariance_norm_tol", lm.covariance_norm_tol);
  r.read("resample_pool", lm.resample_pool);
  if (r.has("shots")) {
    if (auto s = r.get<std::int64_t>("shots")) lm.shots = *s;
  }
  r.finish();
}

void read_vqe(Reader r, VqeBaselineConfig& v) {
  r.read("enabled", v.enabled);
  r.read("learning_rate", v.vqe.learning_rate);
  r.read("gradient_tol", v.vqe.gradient_tol);
  r.read("jitter_std", v.vqe.jitter_std);
  r.read("iterations_per_step", v.iterations_per_step);
  if (auto f = r.get<int>("final_iterations")) v.final_iterations = *f;
  if (auto t = r.get<int>("total_iterations")) v.total_iterations = *t;
  r.finish();
}

}  // namespace

void validate(const ExperimentConfig& c) {
  auto bad = [](const std::string& field, const std::string& what) {
    throw Error(ErrorKind::Parse, "field '" + field + "': " + what);
  };
  // Section validators start their messages with the offending key.
  auto bad_in = [&bad](const std::string& section, const Error& e) {
    const std::string what = e.what();
    bad(section + "." + what.substr(0, what.find(' ')), what);
  };
  const int n = c.model.num_qubits();
  if (n < 1 || n > 20) bad("model.num_qubits", "must lie in 1..20");
  if (c.num_layers < 1) bad("circuit.num_layers", "must be >= 1");
  if (c.dts.empty()) bad("schedule.dt", "needs at least one value");
  for (double dt : c.dts) {
    if (!(dt > 0 && dt <= 1)) bad("schedule.dt", "values must lie in (0, 1]");
  }
  if (c.levels.empty()) bad("levels", "needs at least one value");
  for (int l : c.levels) {
    if (l < 0 || (n < 31 && l >= (1 << n))) bad("levels", "level out of range");
  }
  if (c.seeds.empty()) bad("seeds", "needs at least one seed");
  if (c.final_max_iterations && *c.final_max_iterations < 1) {
    bad("final_max_iterations", "must be >= 1");
  }
  if (!(c.jitter_std >= 0)) bad("jitter_std", "must be >= 0");
  if (c.gap_grid_points < 2) bad("gap_grid_points", "must be >= 2");
  if (c.output_dir.empty()) bad("output_dir", "must not be empty");
  try {
    validate(c.lm);
  } catch (const Error& e) {
    bad_in("lm", e);
  }
  if (c.vqe.enabled) {
    try {
      validate(c.vqe.vqe);
    } catch (const Error& e) {
      bad_in("vqe", e);
    }
    if (c.vqe.iterations_per_step < 1) bad("vqe.iterations_per_step", "must be >= 1");
  }
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  Reader root(j, "");
  if (!root.has("model")) root.fail("model", "missing");
  read_model(root.child("model"), c.model);

  if (root.has("circuit")) {
    Reader r = root.child("circuit");
    if (auto n = r.get<int>("num_qubits"); n && *n != c.model.num_qubits()) {
      r.fail("num_qubits", "does not match the model");
    }
    r.read("num_layers", c.num_layers);
    if (auto e = r.get<std::string>("entangler")) {
      try {
        c.entangler = entangler_from_string(*e);
      } catch (const Error&) {
        r.fail("entangler", "expected 'ring' or 'chain'");
      }
    }
    r.finish();
  }
  if (root.has("schedule")) {
    Reader r = root.child("schedule");
    r.read_list("dt", c.dts, true);
    r.finish();
  }
  root.read_list("levels", c.levels, true);
  if (root.has("lm")) read_lm(root.child("lm"), c.lm);
  if (auto f = root.get<int>("final_max_iterations")) c.final_max_iterations = *f;
  root.read("jitter_std", c.jitter_std);
  if (root.has("vqe")) read_vqe(root.child("vqe"), c.vqe);
  root.read("oracle", c.oracle);
  root.read("gap_grid_points", c.gap_grid_points);
  root.read_list("seeds", c.seeds, true);
  root.read("output_dir", c.output_dir);
  root.finish();
  validate(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["model"] = model_to_json(c.model);
  j["circuit"] = {{"num_qubits", c.model.num_qubits()},
                  {"num_layers", c.num_layers},
                  {"entangler", std::string(to_string(c.entangler))}};
  j["schedule"] = {{"dt", c.dts}};
  j["levels"] = c.levels;
  json lm = {{"damping", c.lm.damping},
             {"pool_size", c.lm.pool_size},
             {"locality", c.lm.locality},
             {"max_iterations", c.lm.max_iterations},
             {"covariance_norm_tol", c.lm.covariance_norm_tol},
             {"resample_pool", c.lm.resample_pool}};
  if (c.lm.shots) lm["shots"] = *c.lm.shots;
  j["lm"] = lm;
  if (c.final_max_iterations) j["final_max_iterations"] = *c.final_max_iterations;
  j["jitter_std"] = c.jitter_std;
  json vqe = {{"enabled", c.vqe.enabled},
              {"learning_rate", c.vqe.vqe.learning_rate},
              {"gradient_tol", c.vqe.vqe.gradient_tol},
              {"jitter_std", c.vqe.vqe.jitter_std},
              {"iterations_per_step", c.vqe.iterations_per_step}};
  if (c.vqe.final_iterations) vqe["final_iterations"] = *c.vqe.final_iterations;
  if (c.vqe.total_iterations) vqe["total_iterations"] = *c.vqe.total_iterations;
  j["vqe"] = vqe;
  j["oracle"] = c.oracle;
  j["gap_grid_points"] = c.gap_grid_points;
  j["seeds"] = c.seeds;
  j["output_dir"] = c.output_dir;
  return j;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "config '" + path.string() + "': " + e.what());
  }
  return config_from_json(j);
}

fs::path resolve_output_dir(const ExperimentConfig& config) {
  if (const char* root = std::getenv("COVAR_OUTPUT_ROOT"); root != nullptr && *root != '\0') {
    return fs::path(root);
  }
  return fs::path(config.output_dir);
}

ModelInstance build_model(const ModelConfig& model, std::uint64_t seed, double delta_t) {
  ModelInstance inst;
  if (model.preset == "spin_ring") {
    SpinRingSpec s = model.spin_ring;
    s.seed = seed;
    inst = build_spin_ring(s, delta_t);
  } else if (model.preset == "schwinger") {
    inst = build_schwinger(model.schwinger, delta_t);
  } else if (model.preset == "maxcut") {
    MaxCutSpec s = model.maxcut;
    s.seed = seed;
    inst = build_maxcut(s, delta_t);
  } else {
    throw Error(ErrorKind::Parse, "field 'model.preset': unknown preset '" + model.preset + "'");
  }
  if (model.schedule_kind) inst.schedule.kind = *model.schedule_kind;
  return inst;
}

std::string run_file_name(std::uint64_t seed, double delta_t, int level) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "seed%llu_dt%g_level%d.csv",
                static_cast<unsigned long long>(seed), delta_t, level);
  return buf;
}

bool ExperimentResult::all_ok() const {
  return std::all_of(runs.begin(), runs.end(), [](const RunSummary& r) { return r.status == "ok"; });
}

RunSummary run_single(const ExperimentConfig& config, std::uint64_t seed, double delta_t,
                      int level, const fs::path& dir) {
  const auto start = std::chrono::steady_clock::now();
  RunSummary sum;
  sum.seed = seed;
  sum.delta_t = delta_t;
  sum.level = level;
  sum.file = run_file_name(seed, delta_t, level);

  std::vector<Trajectory> trajectories;
  try {
    const ModelInstance inst = build_model(config.model, seed, delta_t);
    const AnsatzCircuit circuit(config.model.num_qubits(), config.num_layers, config.entangler);
    const auto pool = static_cast<std::int64_t>(resolved_pool_size(config.lm, circuit));
    sum.shot_budget = shot_budget(circuit.parameter_count(), std::max<std::int64_t>(pool, 1),
                                  config.lm.covariance_norm_tol);

    AdiabaticOptions options;
    options.lm = config.lm;
    options.lm.rng_seed = seed;
    options.final_max_iterations = config.final_max_iterations;
    options.jitter_std = config.jitter_std;
    options.oracle = config.oracle;

    if (config.oracle) sum.gap = gap_and_epsilon(inst.schedule, config.gap_grid_points);
    trajectories.push_back(adiabatic_covar_run(inst.schedule, circuit, level, options));

    const Trajectory& covar = trajectories.front();
    sum.total_iterations = covar.total_iterations();
    sum.final_energy = covar.records.back().energy;
    sum.final_delta_e = covar.records.back().delta_e;
    if (config.oracle) {
      const Spectrum target = diagonalize(target_hamiltonian(inst.schedule));
      sum.final_target_error = std::abs(sum.final_energy - target.eigenvalues(level));
    }

    if (config.vqe.enabled) {
      VqeConfig vqe = config.vqe.vqe;
      vqe.rng_seed = seed;
      trajectories.push_back(adiabatic_vqe_run(inst.schedule, circuit, level, vqe,
                                               config.vqe.iterations_per_step,
                                               config.vqe.final_iterations, config.oracle));
      const int budget = config.vqe.total_iterations.value_or(
          trajectories.back().total_iterations());
      vqe.max_iterations = budget;
      trajectories.push_back(vqe_run(inst.schedule, circuit, level, vqe, config.oracle));
    }
  } catch (const TrajectoryAbort& e) {
    trajectories.push_back(e.partial());
    sum.status = "aborted";
    sum.error = e.what();
  } catch (const Error& e) {
    sum.status = "error";
    sum.error = std::string(to_string(e.kind())) + ": " + e.what();
  }

  if (!trajectories.empty()) {
    fs::create_directories(dir);
    std::ofstream out(dir / sum.file);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + (dir / sum.file).string() + "'");
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      write_trajectory_csv(out, trajectories[i], i == 0);
    }
    fs::create_directories(dir / "traces");
    std::ofstream trace(dir / "traces" / sum.file);
    write_trace_csv(trace, trajectories.front());
  } else {
    sum.file.clear();
  }
  sum.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sum;
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const RunSummary& r) {
  json j = {{"seed", r.seed},
            {"dt", r.delta_t},
            {"level", r.level},
            {"file", r.file},
            {"status", r.status},
            {"shot_budget", r.shot_budget},
            {"total_iterations", r.total_iterations},
            {"final_energy", r.final_energy},
            {"final_delta_e", optional_number(r.final_delta_e)},
            {"final_target_error", optional_number(r.final_target_error)},
            {"wall_time_s", r.wall_time_s}};
  if (!r.error.empty()) j["error"] = r.error;
  if (r.gap) {
    j["g_min"] = r.gap->g_min;
    j["s_at_min"] = r.gap->s_at_min;
    j["epsilon_transition"] = r.gap->epsilon_transition;
    j["T_bound"] = finite_or_null(r.gap->T_bound);
    j["degenerate"] = r.gap->degenerate;
  }
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  result.output_dir = resolve_output_dir(config);
  fs::create_directories(result.output_dir);
  for (std::uint64_t seed : config.seeds) {
    for (double dt : config.dts) {
      for (int level : config.levels) {
        result.runs.push_back(run_single(config, seed, dt, level, result.output_dir));
      }
    }
  }
  json meta;
  meta["config"] = config_to_json(config);
  meta["runs"] = json::array();
  for (const auto& r : result.runs) meta["runs"].push_back(to_json(r));
  std::ofstream out(result.output_dir / "metadata.json");
  if (!out) throw Error(ErrorKind::Io, "cannot write metadata.json");
  out << meta.dump(2) << '\n';
  return result;
}

LinesearchResult dt_linesearch(const ExperimentConfig& config, double target_error,
                               const std::vector<double>& dt_candidates, std::uint64_t seed,
                               int level) {
  require(target_error > 0, ErrorKind::InvalidArgument, "target_error must be positive");
  require(!dt_candidates.empty(), ErrorKind::InvalidArgument, "no dt candidates");
  require(std::is_sorted(dt_candidates.rbegin(), dt_candidates.rend()), ErrorKind::InvalidArgument,
          "dt candidates must be sorted in descending order");
  require(config.oracle, ErrorKind::InvalidArgument, "dt_linesearch needs the oracle enabled");
  ExperimentConfig cfg = config;
  cfg.vqe.enabled = false;
  cfg.dts = dt_candidates;
  validate(cfg);

  const fs::path dir = resolve_output_dir(cfg) / "linesearch";
  LinesearchResult result;
  result.best_error = std::numeric_limits<double>::infinity();
  for (double dt : dt_candidates) {
    const RunSummary run = run_single(cfg, seed, dt, level, dir);
    result.attempts.push_back({dt, run.final_target_error, run.file, run.status});
    if (run.status != "ok" || !run.final_target_error) continue;
    result.best_error = std::min(result.best_error, *run.final_target_error);
    if (*run.final_target_error <= target_error) {
      result.accepted_dt = dt;
      break;
    }
  }
  return result;
}

json to_json(const LinesearchResult& r) {
  json attempts = json::array();
  for (const auto& a : r.attempts) {
    attempts.push_back({{"dt", a.delta_t},
                        {"final_error", optional_number(a.final_error)},
                        {"file", a.file},
                        {"status", a.status}});
  }
  return {{"accepted_dt", optional_number(r.accepted_dt)},
          {"best_error", finite_or_null(r.best_error)},
          {"attempts", attempts}};
}

ScalingFit fit_inverse_dt_vs_loggap(const std::vector<std::pair<double, double>>& points) {
  require(points.size() >= 2, ErrorKind::InvalidArgument, "scaling fit needs at least 2 points");
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto [g, dt] = points[static_cast<std::size_t>(i)];
    require(g > 0 && dt > 0 && std::isfinite(g) && std::isfinite(dt), ErrorKind::InvalidArgument,
            "scaling fit needs positive g_min and dt");
    a(i, 0) = std::log(g);
    a(i, 1) = 1.0;
    y(i) = 1.0 / dt;
  }
  require(a.col(0).maxCoeff() > a.col(0).minCoeff(), ErrorKind::InvalidArgument,
          "scaling fit needs at least two distinct g_min values");
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
  ScalingFit fit;
  fit.slope = coef(0);
  fit.intercept = coef(1);
  // Two distinct points are interpolated exactly.
  fit.residual_rms =
      m == 2 ? 0.0 : std::sqrt((a * coef - y).squaredNorm() / static_cast<double>(m));
  return fit;
}

std::vector<std::pair<double, double>> read_scaling_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "empty scaling CSV");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  const auto find = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorKind::Parse, "scaling CSV lacks a '" + name + "' column");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t g_col = find("g_min");
  const std::size_t dt_col = find("dt");

  std::vector<std::pair<double, double>> points;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() <= std::max(g_col, dt_col)) {
      throw Error(ErrorKind::Parse, "scaling CSV row " + std::to_string(row) + " is too short");
    }
    try {
      points.emplace_back(std::stod(cells[g_col]), std::stod(cells[dt_col]));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "scaling CSV row " + std::to_string(row) + " is not numeric");
    }
  }
  return points;
}

}  // namespace covar
