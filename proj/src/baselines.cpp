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
#include "covar/baselines.hpp"

#include <cmath>
#include <random>

#include "covar/covariance.hpp"
#include "covar/exact.hpp"

namespace covar {

void validate(const VqeConfig& config) {
  require(config.learning_rate > 0 && std::isfinite(config.learning_rate),
          ErrorKind::InvalidArgument, "learning_rate must be positive");
  require(config.max_iterations >= 0, ErrorKind::InvalidArgument,
          "max_iterations must be >= 0");
  require(config.gradient_tol >= 0, ErrorKind::InvalidArgument, "gradient_tol must be >= 0");
  require(config.jitter_std >= 0, ErrorKind::InvalidArgument, "jitter_std must be >= 0");
}

namespace {

// Cost and shift-rule gradient for a generic cost evaluated on a state.
template <typename Cost>
VqeResult descend(const AnsatzCircuit& circuit, const Eigen::Ref<const Eigen::VectorXd>& theta0,
                  const VqeConfig& config, BasisBits bits, const Cost& cost) {
  validate(config);
  require(theta0.size() == circuit.parameter_count(), ErrorKind::Dimension,
          "theta0 length does not match the circuit");
  VqeResult out;
  out.theta = theta0;
  Eigen::VectorXd grad(circuit.parameter_count());
  for (int it = 0;; ++it) {
    const double value = cost(build_ansatz_state(circuit, out.theta, bits));
    if (!std::isfinite(value)) {
      throw DivergenceError("VQE cost became non-finite at iteration " + std::to_string(it),
                            out.theta);
    }
    out.energy_trace.push_back(value);
    for_each_shifted_pair(circuit, out.theta, bits,
                          [&](int l, const StateVector& plus, const StateVector& minus) {
                            grad(l) = 0.5 * (cost(plus) - cost(minus));
                          });
    if (grad.size() == 0 || grad.lpNorm<Eigen::Infinity>() <= config.gradient_tol) {
      out.converged = true;
      break;
    }
    if (it == config.max_iterations) break;
    out.theta -= config.learning_rate * grad;
    ++out.iterations;
  }
  return out;
}

}  // namespace

VqeResult vqe_minimize(const PauliSum& h, const AnsatzCircuit& circuit,
                       const Eigen::Ref<const Eigen::VectorXd>& theta0,
                       const VqeConfig& config, BasisBits initial_bits) {
  require_hermitian(h, "VQE Hamiltonian");
  require(h.num_qubits() == circuit.num_qubits(), ErrorKind::Dimension,
          "Hamiltonian and circuit act on different qubit counts");
  return descend(circuit, theta0, config, initial_bits,
                 [&](const StateVector& s) { return expectation(h, s).real(); });
}

namespace {

std::vector<StateVector> prior_states(const AnsatzCircuit& circuit,
                                      const std::vector<Eigen::VectorXd>& prior_thetas,
                                      const std::vector<double>& betas, BasisBits bits) {
  require(prior_thetas.size() == betas.size(), ErrorKind::Dimension,
          "one beta per prior state is required");
  std::vector<StateVector> states;
  for (const auto& p : prior_thetas) {
    require(p.size() == circuit.parameter_count(), ErrorKind::Dimension,
            "prior theta length does not match the circuit");
    states.push_back(build_ansatz_state(circuit, p, bits));
  }
  return states;
}

double penalized(const PauliSum& h, const StateVector& s, const std::vector<StateVector>& priors,
                 const std::vector<double>& betas) {
  double value = expectation(h, s).real();
  for (std::size_t i = 0; i < priors.size(); ++i) {
    value += betas[i] * std::norm(s.dot(priors[i]));
  }
  return value;
}

}  // namespace

double vqd_cost(const PauliSum& h, const AnsatzCircuit& circuit,
                const Eigen::Ref<const Eigen::VectorXd>& theta_k,
                const std::vector<Eigen::VectorXd>& prior_thetas,
                const std::vector<double>& betas, BasisBits initial_bits) {
  require(theta_k.size() == circuit.parameter_count(), ErrorKind::Dimension,
          "theta length does not match the circuit");
  const auto priors = prior_states(circuit, prior_thetas, betas, initial_bits);
  return penalized(h, build_ansatz_state(circuit, theta_k, initial_bits), priors, betas);
}

VqeResult vqd_minimize(const PauliSum& h, const AnsatzCircuit& circuit,
                       const Eigen::Ref<const Eigen::VectorXd>& theta0,
                       const std::vector<Eigen::VectorXd>& prior_thetas,
                       const std::vector<double>& betas, const VqeConfig& config,
                       BasisBits initial_bits) {
  require_hermitian(h, "VQD Hamiltonian");
  const auto priors = prior_states(circuit, prior_thetas, betas, initial_bits);
  return descend(circuit, theta0, config, initial_bits, [&](const StateVector& s) {
    return penalized(h, s, priors, betas);
  });
}

Trajectory adiabatic_vqe_run(const MorphSchedule& schedule, const AnsatzCircuit& circuit,
                             int level, const VqeConfig& config, int iterations_per_step,
                             std::optional<int> final_iterations, bool oracle) {
  validate(config);
  require(iterations_per_step >= 1, ErrorKind::InvalidArgument,
          "iterations_per_step must be >= 1");
  const OperatorPool pool = full_operator_pool(schedule.num_qubits(), 2);
  InnerSolver solver = [&](const PauliSum& h_t, const Eigen::VectorXd& theta_start,
                           BasisBits bits, bool final_step, Rng&) {
    VqeConfig step = config;
    step.max_iterations =
        final_step && final_iterations ? *final_iterations : iterations_per_step;
    VqeResult r = vqe_minimize(h_t, circuit, theta_start, step, bits);
    const double f_norm =
        covariance_norm(covariance_vector(pool, h_t, build_ansatz_state(circuit, r.theta, bits)));
    return InnerResult{std::move(r.theta), r.iterations, f_norm, {}};
  };
  AdiabaticOptions options;
  options.lm.rng_seed = config.rng_seed;
  options.jitter_std = config.jitter_std;
  options.oracle = oracle;
  return adiabatic_run(schedule, circuit, level, solver, "adiabatic_vqe", options);
}

Trajectory vqe_run(const MorphSchedule& schedule, const AnsatzCircuit& circuit, int level,
                   const VqeConfig& config, bool oracle) {
  validate(config);
  const InitialState init = init_eigenstate_params(schedule, circuit, level);
  Eigen::VectorXd theta = init.theta;
  if (config.jitter_std > 0) {
    Rng rng(config.rng_seed);
    std::normal_distribution<double> jitter(0.0, config.jitter_std);
    for (Eigen::Index l = 0; l < theta.size(); ++l) theta(l) += jitter(rng);
  }
  const PauliSum h = target_hamiltonian(schedule);
  VqeResult r = vqe_minimize(h, circuit, theta, config, init.initial_bits);

  Trajectory traj;
  traj.method = "vqe";
  traj.num_qubits = circuit.num_qubits();
  traj.num_layers = circuit.num_layers();
  traj.num_params = circuit.parameter_count();
  traj.initial_bits = init.initial_bits;

  TrajectoryRecord rec;
  rec.t = 1.0;
  rec.covar_iters = r.iterations;
  rec.theta_start = theta;
  rec.theta = r.theta;
  const StateVector state = build_ansatz_state(circuit, r.theta, init.initial_bits);
  rec.energy = expectation(h, state).real();
  rec.f_norm = covariance_norm(
      covariance_vector(full_operator_pool(circuit.num_qubits(), 2), h, state));
  if (oracle) {
    const Spectrum spec = diagonalize(h);
    const int k = level_index(rec.energy, spec);
    rec.level_index = k;
    rec.delta_e = std::abs(rec.energy - spec.eigenvalues(k));
    rec.ground_energy = spec.eigenvalues(0);
  }
  traj.records.push_back(std::move(rec));
  return traj;
}

}  // namespace covar
