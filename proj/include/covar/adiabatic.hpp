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

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "covar/circuit.hpp"
#include "covar/covariance.hpp"
#include "covar/pauli.hpp"

namespace covar {

enum class MorphKind { Mixing, Perturbative };

std::string_view to_string(MorphKind kind);
MorphKind morph_kind_from_string(std::string_view name);

/// Discrete path from h0 to the target.
///   mixing:       H(t) = (1 - t) h0 + t h1
///   perturbative: H(t) = h0 + t h1
struct MorphSchedule {
  MorphKind kind = MorphKind::Mixing;
  PauliSum h0;
  PauliSum h1;
  double delta_t = 0.1;

  int num_qubits() const noexcept { return h0.num_qubits(); }
};

void validate(const MorphSchedule& schedule);

/// {0, dt, 2 dt, ...} with the last point pinned to exactly 1; when 1/dt is
/// not an integer the final step is shorter.
std::vector<double> time_grid(const MorphSchedule& schedule);

PauliSum morph_hamiltonian(const MorphSchedule& schedule, double t);

/// dH/dt along the schedule.
PauliSum morph_derivative(const MorphSchedule& schedule);

/// Hamiltonian reached at t = 1.
PauliSum target_hamiltonian(const MorphSchedule& schedule);

struct InitialState {
  Eigen::VectorXd theta;
  BasisBits initial_bits = 0;
  double energy = 0.0;  // eigenvalue of h0
};

/// Parameters preparing the `level`-th eigenstate of h0 (0 = ground).
///
/// Diagonal h0: the basis state with the (level+1)-th smallest diagonal
/// energy (ties by basis index), theta = 0.
///
/// Uniform mixer h0 = c * sum_i X_i: a product of X eigenstates prepared by
/// Ry(-pi/2) (|->) or Ry(+pi/2) (|+>) in layer L mod 2, everything else
/// zero. The remaining CZ layers pair up and cancel; a one-layer circuit
/// with entanglers cannot prepare the state. Patterns are ranked by mixer energy; within a
/// degenerate manifold they are ranked by <tie_break> on the product state
/// and then by pattern index.
///
/// Anything else is a not-solvable error.
InitialState init_eigenstate_params(const MorphSchedule& schedule,
                                    const AnsatzCircuit& circuit, int level,
                                    const PauliSum* tie_break = nullptr);

struct TrajectoryRecord {
  double t = 0.0;
  int step_index = 0;
  int covar_iters = 0;
  double energy = 0.0;
  double f_norm = 0.0;
  std::optional<double> delta_e;
  std::optional<int> level_index;
  std::optional<double> ground_energy;
  Eigen::VectorXd theta_start;
  Eigen::VectorXd theta;
  std::vector<CovarTraceRow> trace;
};

struct Trajectory {
  std::string method = "covar";
  int num_qubits = 0;
  int num_layers = 0;
  int num_params = 0;
  BasisBits initial_bits = 0;
  std::vector<TrajectoryRecord> records;

  int total_iterations() const;
};

/// Thrown when a step fails; carries everything recorded before it.
class TrajectoryAbort : public Error {
 public:
  TrajectoryAbort(const std::string& what, double failed_t, Trajectory partial)
      : Error(ErrorKind::Divergence, what), failed_t_(failed_t), partial_(std::move(partial)) {}

  double failed_t() const noexcept { return failed_t_; }
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  double failed_t_;
  Trajectory partial_;
};

struct AdiabaticOptions {
  LMConfig lm;
  /// Inner iteration cap at t = 1; defaults to lm.max_iterations.
  std::optional<int> final_max_iterations;
  /// Std of Gaussian jitter added once to the initial parameters before the
  /// first solved step. Symmetric starting points (a basis state under a
  /// number-conserving Hamiltonian) give J^T f = 0 and need it to move.
  double jitter_std = 0.0;
  /// Diagonalize H(t) at every step to record level index and delta E.
  bool oracle = true;
};

/// One inner solve at fixed t.
struct InnerResult {
  Eigen::VectorXd theta;
  int iterations = 0;
  double f_norm = 0.0;
  std::vector<CovarTraceRow> trace;
};

using InnerSolver =
    std::function<InnerResult(const PauliSum& h_t, const Eigen::VectorXd& theta_start,
                              BasisBits initial_bits, bool final_step, Rng& rng)>;

/// Shared outer loop: exact initialization at t = 0, then one inner solve
/// per grid point, each starting from the previous final parameters.
Trajectory adiabatic_run(const MorphSchedule& schedule, const AnsatzCircuit& circuit,
                         int level, const InnerSolver& solver, std::string method,
                         const AdiabaticOptions& options);

Trajectory adiabatic_covar_run(const MorphSchedule& schedule, const AnsatzCircuit& circuit,
                               int level, const AdiabaticOptions& options);

/// Columns: t,step_index,covar_iters,energy,f_norm,delta_e,level_index,method,theta
/// where theta is space-separated. Missing oracle values are empty.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, bool header = true);

/// Inner-solver traces: step_index,t,iteration,f_norm,energy
void write_trace_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace covar
