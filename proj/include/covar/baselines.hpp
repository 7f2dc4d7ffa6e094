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
#include <vector>

#include <Eigen/Core>

#include "covar/adiabatic.hpp"
#include "covar/circuit.hpp"
#include "covar/pauli.hpp"

namespace covar {

struct VqeConfig {
  double learning_rate = 0.05;
  int max_iterations = 1000;
  double gradient_tol = 1e-6;
  std::uint64_t rng_seed = 0;
  /// Std of the Gaussian jitter applied to the initial parameters by
  /// vqe_run and adiabatic_vqe_run.
  double jitter_std = 0.05;
};

void validate(const VqeConfig& config);

struct VqeResult {
  Eigen::VectorXd theta;
  std::vector<double> energy_trace;  // energy before each update, plus final
  int iterations = 0;                // updates performed
  bool converged = false;            // gradient tolerance reached
};

/// Fixed-step gradient descent on <H> with parameter-shift gradients.
VqeResult vqe_minimize(const PauliSum& h, const AnsatzCircuit& circuit,
                       const Eigen::Ref<const Eigen::VectorXd>& theta0,
                       const VqeConfig& config, BasisBits initial_bits = 0);

/// <H> + sum_i beta_i |<psi(theta_k)|psi(theta_i)>|^2.
double vqd_cost(const PauliSum& h, const AnsatzCircuit& circuit,
                const Eigen::Ref<const Eigen::VectorXd>& theta_k,
                const std::vector<Eigen::VectorXd>& prior_thetas,
                const std::vector<double>& betas, BasisBits initial_bits = 0);

/// Gradient descent on vqd_cost; the overlap terms are differentiated with
/// the shift rule as well (each rotation generator is a Pauli).
VqeResult vqd_minimize(const PauliSum& h, const AnsatzCircuit& circuit,
                       const Eigen::Ref<const Eigen::VectorXd>& theta0,
                       const std::vector<Eigen::VectorXd>& prior_thetas,
                       const std::vector<double>& betas, const VqeConfig& config,
                       BasisBits initial_bits = 0);

/// Adiabatic loop with vqe_minimize as the inner solver, capped at
/// `iterations_per_step` updates (final_iterations at t = 1 when given).
Trajectory adiabatic_vqe_run(const MorphSchedule& schedule, const AnsatzCircuit& circuit,
                             int level, const VqeConfig& config, int iterations_per_step,
                             std::optional<int> final_iterations = std::nullopt,
                             bool oracle = true);

/// Plain VQE on the target Hamiltonian from the jittered initial eigenstate
/// parameters of h0; a single t = 1 record with method "vqe".
Trajectory vqe_run(const MorphSchedule& schedule, const AnsatzCircuit& circuit, int level,
                   const VqeConfig& config, bool oracle = true);

}  // namespace covar
