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
#include "covar/adiabatic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "covar/exact.hpp"

namespace covar {

std::string_view to_string(MorphKind kind) {
  return kind == MorphKind::Mixing ? "mixing" : "perturbative";
}

MorphKind morph_kind_from_string(std::string_view name) {
  if (name == "mixing") return MorphKind::Mixing;
  if (name == "perturbative") return MorphKind::Perturbative;
  throw Error(ErrorKind::Parse, "unknown schedule kind '" + std::string(name) + "'");
}

void validate(const MorphSchedule& schedule) {
  require(schedule.delta_t > 0 && schedule.delta_t <= 1, ErrorKind::InvalidArgument,
          "delta_t must lie in (0, 1]");
  require(schedule.h0.num_qubits() >= 1, ErrorKind::InvalidArgument,
          "schedule h0 has no qubits");
  require(schedule.h0.num_qubits() == schedule.h1.num_qubits(), ErrorKind::Dimension,
          "schedule h0 and h1 act on different qubit counts");
}

std::vector<double> time_grid(const MorphSchedule& schedule) {
  validate(schedule);
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double t = k * schedule.delta_t;
    if (t >= 1.0 - 1e-9) break;
    grid.push_back(t);
  }
  grid.push_back(1.0);
  return grid;
}

PauliSum morph_hamiltonian(const MorphSchedule& schedule, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "morph time " + std::to_string(t) + " outside [0, 1]");
  }
  if (schedule.kind == MorphKind::Mixing) {
    return (1.0 - t) * schedule.h0 + t * schedule.h1;
  }
  return schedule.h0 + t * schedule.h1;
}

PauliSum morph_derivative(const MorphSchedule& schedule) {
  if (schedule.kind == MorphKind::Mixing) return schedule.h1 - schedule.h0;
  return schedule.h1;
}

PauliSum target_hamiltonian(const MorphSchedule& schedule) {
  return morph_hamiltonian(schedule, 1.0);
}

namespace {

/// Returns c when h == c * sum_i X_i over all qubits, otherwise nullopt.
std::optional<double> uniform_mixer_strength(const PauliSum& h) {
  const int n = h.num_qubits();
  if (h.size() != static_cast<std::size_t>(n)) return std::nullopt;
  std::uint64_t covered = 0;
  const double c = h.terms().front().coefficient.real();
  for (const auto& t : h.terms()) {
    const auto& p = t.string;
    if (p.z_mask() != 0 || std::popcount(p.x_mask()) != 1) return std::nullopt;
    if (t.coefficient.real() != c) return std::nullopt;
    covered |= p.x_mask();
  }
  if (covered != (std::uint64_t{1} << n) - 1 || c == 0.0) return std::nullopt;
  return c;
}

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// <h> on a product of X eigenstates; bit q of `plus` set means |+> on q.
double product_x_expectation(const PauliSum& h, std::uint64_t plus) {
  double acc = 0.0;
  for (const auto& t : h.terms()) {
    if (t.string.z_mask() != 0) continue;
    const int minus_count = std::popcount(t.string.x_mask() & ~plus);
    acc += (minus_count & 1) ? -t.coefficient.real() : t.coefficient.real();
  }
  return acc;
}

}  // namespace

InitialState init_eigenstate_params(const MorphSchedule& schedule,
                                    const AnsatzCircuit& circuit, int level,
                                    const PauliSum* tie_break) {
  const PauliSum& h0 = schedule.h0;
  const int n = h0.num_qubits();
  require(circuit.num_qubits() == n, ErrorKind::Dimension,
          "circuit and schedule act on different qubit counts");
  require(n <= 20, ErrorKind::Capacity, "eigenstate initialization limited to 20 qubits");
  require(level >= 0 && level < (1 << n), ErrorKind::InvalidArgument,
          "level " + std::to_string(level) + " out of range");
  require_hermitian(h0, "initial Hamiltonian");

  InitialState out;
  out.theta = Eigen::VectorXd::Zero(circuit.parameter_count());

  if (h0.is_diagonal()) {
    const Eigen::VectorXd energies = diagonal_energies(h0);
    std::vector<std::uint64_t> order(static_cast<std::size_t>(energies.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
      return energies(static_cast<Eigen::Index>(a)) < energies(static_cast<Eigen::Index>(b));
    });
    out.initial_bits = order[static_cast<std::size_t>(level)];
    out.energy = energies(static_cast<Eigen::Index>(out.initial_bits));
    return out;
  }

  const auto strength = uniform_mixer_strength(h0);
  if (!strength) {
    throw Error(ErrorKind::NotSolvable,
                "initial Hamiltonian is neither diagonal nor a uniform X mixer");
  }
  const double c = *strength;
  // Flipping a qubit to its single-qubit excited X eigenstate costs 2|c|.
  // Find the manifold (number of excited qubits) holding `level`.
  int excited = 0;
  std::int64_t below = 0;
  while (below + binomial(n, excited) <= level) below += binomial(n, excited++);

  std::vector<std::uint64_t> manifold;
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
    if (std::popcount(p) == excited) manifold.push_back(p);
  }
  // Excited qubits sit in |+> when c > 0 and in |-> when c < 0.
  auto plus_mask = [&](std::uint64_t pattern) {
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    return c > 0 ? pattern : (~pattern & all);
  };
  if (tie_break != nullptr) {
    require(tie_break->num_qubits() == n, ErrorKind::Dimension,
            "tie-break Hamiltonian has the wrong qubit count");
    std::stable_sort(manifold.begin(), manifold.end(), [&](std::uint64_t a, std::uint64_t b) {
      return product_x_expectation(*tie_break, plus_mask(a)) <
             product_x_expectation(*tie_break, plus_mask(b));
    });
  }
  const std::uint64_t pattern = manifold[static_cast<std::size_t>(level - below)];
  const std::uint64_t plus = plus_mask(pattern);
  // CZ layers square to the identity, so rotating in layer L mod 2 leaves
  // an even number of CZ layers after the product state.
  const int layers = circuit.num_layers();
  const bool has_pairs = !circuit.entangler_pairs().empty();
  if (has_pairs && layers == 1) {
    throw Error(ErrorKind::NotSolvable,
                "a single entangling layer cannot prepare an X product state");
  }
  const int prep_layer = has_pairs ? layers % 2 : 0;
  for (int q = 0; q < n; ++q) {
    const bool is_plus = (plus >> q) & 1;
    out.theta(circuit.ry_parameter(prep_layer, q)) =
        is_plus ? std::numbers::pi / 2 : -std::numbers::pi / 2;
  }
  out.energy = -std::abs(c) * n + 2 * std::abs(c) * excited;
  return out;
}

int Trajectory::total_iterations() const {
  int total = 0;
  for (const auto& r : records) total += r.covar_iters;
  return total;
}

Trajectory adiabatic_run(const MorphSchedule& schedule, const AnsatzCircuit& circuit,
                         int level, const InnerSolver& solver, std::string method,
                         const AdiabaticOptions& options) {
  validate(schedule);
  validate(options.lm);
  require(options.jitter_std >= 0, ErrorKind::InvalidArgument, "jitter_std must be >= 0");
  const auto grid = time_grid(schedule);
  const int n = schedule.num_qubits();

  // First-order energies at the first solved step resolve degenerate
  // starting manifolds.
  const PauliSum first_step = morph_hamiltonian(schedule, grid.size() > 1 ? grid[1] : 1.0);
  const InitialState init = init_eigenstate_params(schedule, circuit, level, &first_step);

  Rng rng(options.lm.rng_seed);
  std::normal_distribution<double> jitter(0.0, options.jitter_std > 0 ? options.jitter_std : 1.0);
  const bool use_oracle = options.oracle;
  const OperatorPool report_pool = full_operator_pool(n, options.lm.locality);

  Trajectory traj;
  traj.method = std::move(method);
  traj.num_qubits = n;
  traj.num_layers = circuit.num_layers();
  traj.num_params = circuit.parameter_count();
  traj.initial_bits = init.initial_bits;

  Eigen::VectorXd theta = init.theta;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double t = grid[idx];
    const PauliSum h_t = morph_hamiltonian(schedule, t);
    TrajectoryRecord rec;
    rec.t = t;
    rec.step_index = static_cast<int>(idx);

    if (idx == 0) {
      rec.theta_start = theta;
      rec.f_norm = covariance_norm(covariance_vector(
          report_pool, h_t, build_ansatz_state(circuit, theta, init.initial_bits)));
    } else {
      if (idx == 1 && options.jitter_std > 0) {
        for (Eigen::Index l = 0; l < theta.size(); ++l) theta(l) += jitter(rng);
      }
      rec.theta_start = theta;
      try {
        InnerResult inner =
            solver(h_t, theta, init.initial_bits, idx + 1 == grid.size(), rng);
        theta = std::move(inner.theta);
        rec.covar_iters = inner.iterations;
        rec.f_norm = inner.f_norm;
        rec.trace = std::move(inner.trace);
      } catch (const DivergenceError& e) {
        throw TrajectoryAbort(std::string(e.what()) + " at t = " + std::to_string(t), t,
                              std::move(traj));
      }
    }
    rec.theta = theta;
    const StateVector state = build_ansatz_state(circuit, theta, init.initial_bits);
    rec.energy = expectation(h_t, state).real();
    if (use_oracle) {
      const Spectrum spec = diagonalize(h_t);
      const int k = level_index(rec.energy, spec);
      rec.level_index = k;
      rec.delta_e = std::abs(rec.energy - spec.eigenvalues(k));
      rec.ground_energy = spec.eigenvalues(0);
    }
    traj.records.push_back(std::move(rec));
  }
  return traj;
}

Trajectory adiabatic_covar_run(const MorphSchedule& schedule, const AnsatzCircuit& circuit,
                               int level, const AdiabaticOptions& options) {
  InnerSolver solver = [&](const PauliSum& h_t, const Eigen::VectorXd& theta_start,
                           BasisBits bits, bool final_step, Rng& rng) {
    LMConfig cfg = options.lm;
    if (final_step && options.final_max_iterations) {
      cfg.max_iterations = *options.final_max_iterations;
    }
    CovarResult r = covar_solve(h_t, circuit, theta_start, cfg, rng, bits);
    return InnerResult{std::move(r.theta), r.iterations, r.trace.back().f_norm,
                       std::move(r.trace)};
  };
  return adiabatic_run(schedule, circuit, level, solver, "covar", options);
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, bool header) {
  if (header) out << "t,step_index,covar_iters,energy,f_norm,delta_e,level_index,method,theta\n";
  for (const auto& r : trajectory.records) {
    out << fmt_double(r.t) << ',' << r.step_index << ',' << r.covar_iters << ','
        << fmt_double(r.energy) << ',' << fmt_double(r.f_norm) << ',';
    if (r.delta_e) out << fmt_double(*r.delta_e);
    out << ',';
    if (r.level_index) out << *r.level_index;
    out << ',' << trajectory.method << ',';
    for (Eigen::Index l = 0; l < r.theta.size(); ++l) {
      if (l) out << ' ';
      out << fmt_double(r.theta(l));
    }
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "step_index,t,iteration,f_norm,energy\n";
  for (const auto& r : trajectory.records) {
    for (const auto& row : r.trace) {
      out << r.step_index << ',' << fmt_double(r.t) << ',' << row.iteration << ','
          << fmt_double(row.f_norm) << ',' << fmt_double(row.energy) << '\n';
    }
  }
}

}  // namespace covar
