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
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "covar/circuit.hpp"
#include "covar/pauli.hpp"

namespace covar {

using Rng = std::mt19937_64;

/// Local Pauli observables whose covariances with H form the root target.
struct OperatorPool {
  std::vector<PauliString> operators;
  int locality = 2;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return operators.size(); }
};

/// Every non-identity string of weight <= locality supported on a single
/// qubit (weight 1) or on a nearest-neighbour ring edge (weight 2), in a
/// fixed order: all weight-1 strings first, then edge strings. Only
/// localities 1 and 2 are supported.
std::vector<PauliString> enumerate_local_strings(int num_qubits, int locality);

/// Uniform sample of `pool_size` strings without replacement from
/// enumerate_local_strings. Throws an enumeration error when the pool is
/// larger than the available set.
OperatorPool sample_operator_pool(int num_qubits, int locality,
                                  std::size_t pool_size, Rng& rng);

/// The whole enumerable pool, unshuffled.
OperatorPool full_operator_pool(int num_qubits, int locality = 2);

/// <o h> - <o><h> on `state`, with <o h> obtained by expanding o*h into a
/// Pauli sum term by term.
Complex covariance(const PauliString& o, const PauliSum& h, const StateVector& state);

/// Covariances of every pool operator with h, evaluated as
/// <s|o (h|s>)> - <o><h>. Equal to `covariance` per entry.
Eigen::VectorXcd covariance_vector(const OperatorPool& pool, const PauliSum& h,
                                   const StateVector& state);

/// f and its Jacobian at one parameter point.
struct CovarianceSystem {
  Eigen::VectorXcd f;  // N_c
  Eigen::MatrixXcd J;  // N_c x nu
  Eigen::VectorXd theta;
  double energy = 0.0;  // noiseless <h> at theta
};

/// Root-mean-square covariance magnitude ||f||_2 / sqrt(N_c).
double covariance_norm(const Eigen::VectorXcd& f);

/// f_k = <O_k, h> and J_kl = d f_k / d theta_l. Each J column uses the
/// shift rule on the three factors of the covariance:
/// d<O_k h> - d<O_k> <h> - <O_k> d<h>.
CovarianceSystem assemble_system(const OperatorPool& pool, const PauliSum& h,
                                 const AnsatzCircuit& circuit,
                                 const Eigen::Ref<const Eigen::VectorXd>& theta,
                                 BasisBits initial_bits = 0);

/// Damped Gauss-Newton step on the real-stacked system
/// f~ = [Re f; Im f], J~ = [Re J; Im J]:
///   theta - (J~^T J~ + damping I)^{-1} J~^T f~.
/// Solved by Cholesky; a failed factorization falls back to an SVD
/// pseudoinverse when damping > 0 and is an ill-conditioned error when
/// damping == 0.
Eigen::VectorXd lm_update(const Eigen::Ref<const Eigen::VectorXd>& theta,
                          const CovarianceSystem& system, double damping);

/// Adds independent N(0, 1/shots) noise to the real and imaginary part of
/// every f entry and then every J entry (row-major), in that order.
/// Absent `shots` leaves the system unchanged.
CovarianceSystem inject_shot_noise(CovarianceSystem system,
                                   std::optional<std::int64_t> shots, Rng& rng);

/// Local-Pauli classical-shadow estimates of each observable from `shots`
/// simulated random-basis measurements of `state`.
std::vector<double> shadow_estimate_expectations(
    const StateVector& state, const std::vector<PauliString>& observables,
    std::int64_t shots, Rng& rng);

/// ceil(nu * ln(N_c) / precision^2), at least 1. Advisory shot budget.
std::int64_t shot_budget(std::int64_t num_params, std::int64_t num_covariances,
                         double precision);

struct LMConfig {
  double damping = 1e-3;
  /// 0 selects min(4 * nu, size of the full local pool).
  std::size_t pool_size = 0;
  int locality = 2;
  int max_iterations = 50;
  double covariance_norm_tol = 2e-3;
  bool resample_pool = true;
  std::uint64_t rng_seed = 0;
  std::optional<std::int64_t> shots;
};

void validate(const LMConfig& config);

/// Pool size used for a circuit under `config`.
std::size_t resolved_pool_size(const LMConfig& config, const AnsatzCircuit& circuit);

struct CovarTraceRow {
  int iteration;
  double f_norm;
  double energy;
};

struct CovarResult {
  Eigen::VectorXd theta;
  int iterations = 0;  // parameter updates performed
  bool converged = false;
  std::vector<CovarTraceRow> trace;
};

/// Stochastic Levenberg-Marquardt root search. Each iteration assembles
/// the system (with a fresh pool when configured), optionally adds shot
/// noise, records the covariance norm, and stops once it is within
/// tolerance or after `max_iterations` updates. All randomness comes from
/// `rng` in a fixed order.
CovarResult covar_solve(const PauliSum& h, const AnsatzCircuit& circuit,
                        const Eigen::Ref<const Eigen::VectorXd>& theta0,
                        const LMConfig& config, Rng& rng, BasisBits initial_bits = 0);

/// Same, seeding a fresh generator from config.rng_seed.
CovarResult covar_solve(const PauliSum& h, const AnsatzCircuit& circuit,
                        const Eigen::Ref<const Eigen::VectorXd>& theta0,
                        const LMConfig& config, BasisBits initial_bits = 0);

}  // namespace covar
