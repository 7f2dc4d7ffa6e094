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
#include "covar/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

namespace covar {

std::vector<PauliString> enumerate_local_strings(int num_qubits, int locality) {
  require(locality == 1 || locality == 2, ErrorKind::InvalidArgument,
          "pool locality must be 1 or 2");
  require(num_qubits >= 1, ErrorKind::InvalidArgument, "pool needs at least one qubit");
  static constexpr char kLetters[] = {'X', 'Y', 'Z'};
  std::vector<PauliString> out;
  for (int q = 0; q < num_qubits; ++q) {
    for (char a : kLetters) out.push_back(PauliString::single(num_qubits, q, a));
  }
  if (locality >= 2) {
    // Same edge set as the ring entangler.
    const AnsatzCircuit ring(num_qubits, 1, Entangler::Ring);
    for (auto [i, j] : ring.entangler_pairs()) {
      for (char a : kLetters) {
        for (char b : kLetters) {
          PauliString p(num_qubits);
          p.set_letter(i, a);
          p.set_letter(j, b);
          out.push_back(p);
        }
      }
    }
  }
  return out;
}

OperatorPool sample_operator_pool(int num_qubits, int locality,
                                  std::size_t pool_size, Rng& rng) {
  auto all = enumerate_local_strings(num_qubits, locality);
  if (pool_size == 0 || pool_size > all.size()) {
    throw Error(ErrorKind::Enumeration,
                "pool size " + std::to_string(pool_size) + " not in 1.." +
                    std::to_string(all.size()) + " for " + std::to_string(num_qubits) +
                    " qubits at locality " + std::to_string(locality));
  }
  // Partial Fisher-Yates: the first pool_size entries are a uniform sample.
  for (std::size_t i = 0; i < pool_size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(pool_size);
  return {std::move(all), locality, 0};
}

OperatorPool full_operator_pool(int num_qubits, int locality) {
  return {enumerate_local_strings(num_qubits, locality), locality, 0};
}

Complex covariance(const PauliString& o, const PauliSum& h, const StateVector& state) {
  const PauliSum product = multiply(o, h);
  return expectation(product, state) - expectation(o, state) * expectation(h, state);
}

Eigen::VectorXcd covariance_vector(const OperatorPool& pool, const PauliSum& h,
                                   const StateVector& state) {
  const StateVector h_state = apply_pauli_sum(h, state);
  const Complex energy = state.dot(h_state);
  Eigen::VectorXcd f(static_cast<Eigen::Index>(pool.size()));
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const auto& o = pool.operators[k];
    f(static_cast<Eigen::Index>(k)) =
        matrix_element(state, o, h_state) - expectation(o, state) * energy;
  }
  return f;
}

double covariance_norm(const Eigen::VectorXcd& f) {
  if (f.size() == 0) return 0.0;
  return f.norm() / std::sqrt(static_cast<double>(f.size()));
}

namespace {

/// The three expectation factors of every covariance at one state.
struct Factors {
  Eigen::VectorXcd product;  // <O_k h>
  Eigen::VectorXd single;    // <O_k>
  double energy;             // <h>
};

Factors evaluate_factors(const OperatorPool& pool, const PauliSum& h,
                         const StateVector& state) {
  const StateVector h_state = apply_pauli_sum(h, state);
  Factors out;
  out.energy = state.dot(h_state).real();
  out.product.resize(static_cast<Eigen::Index>(pool.size()));
  out.single.resize(static_cast<Eigen::Index>(pool.size()));
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    out.product(i) = matrix_element(state, pool.operators[k], h_state);
    out.single(i) = expectation(pool.operators[k], state).real();
  }
  return out;
}

void check_pool(const OperatorPool& pool, const PauliSum& h, const AnsatzCircuit& circuit) {
  require(!pool.operators.empty(), ErrorKind::InvalidArgument, "operator pool is empty");
  require(h.num_qubits() == circuit.num_qubits(), ErrorKind::Dimension,
          "Hamiltonian and circuit act on different qubit counts");
  for (const auto& o : pool.operators) {
    require(o.num_qubits() == circuit.num_qubits(), ErrorKind::Dimension,
            "pool operator " + o.word() + " has the wrong length");
  }
}

/// f only; J left empty.
CovarianceSystem assemble_covariances(const OperatorPool& pool, const PauliSum& h,
                                      const AnsatzCircuit& circuit,
                                      const Eigen::Ref<const Eigen::VectorXd>& theta,
                                      BasisBits initial_bits, Factors& at_theta) {
  check_pool(pool, h, circuit);
  const StateVector state = build_ansatz_state(circuit, theta, initial_bits);
  at_theta = evaluate_factors(pool, h, state);
  CovarianceSystem sys;
  sys.theta = theta;
  sys.energy = at_theta.energy;
  sys.f = at_theta.product - at_theta.single.cast<Complex>() * at_theta.energy;
  return sys;
}

void assemble_jacobian(CovarianceSystem& sys, const OperatorPool& pool, const PauliSum& h,
                       const AnsatzCircuit& circuit, BasisBits initial_bits,
                       const Factors& at_theta) {
  const auto rows = static_cast<Eigen::Index>(pool.size());
  sys.J.resize(rows, circuit.parameter_count());
  for_each_shifted_pair(
      circuit, sys.theta, initial_bits,
      [&](int l, const StateVector& plus, const StateVector& minus) {
        const Factors up = evaluate_factors(pool, h, plus);
        const Factors down = evaluate_factors(pool, h, minus);
        const Eigen::VectorXcd d_product = 0.5 * (up.product - down.product);
        const Eigen::VectorXd d_single = 0.5 * (up.single - down.single);
        const double d_energy = 0.5 * (up.energy - down.energy);
        sys.J.col(l) = d_product - (d_single * at_theta.energy).cast<Complex>() -
                       (at_theta.single * d_energy).cast<Complex>();
      });
}

}  // namespace

CovarianceSystem assemble_system(const OperatorPool& pool, const PauliSum& h,
                                 const AnsatzCircuit& circuit,
                                 const Eigen::Ref<const Eigen::VectorXd>& theta,
                                 BasisBits initial_bits) {
  Factors at_theta;
  auto sys = assemble_covariances(pool, h, circuit, theta, initial_bits, at_theta);
  assemble_jacobian(sys, pool, h, circuit, initial_bits, at_theta);
  return sys;
}

Eigen::VectorXd lm_update(const Eigen::Ref<const Eigen::VectorXd>& theta,
                          const CovarianceSystem& system, double damping) {
  require(damping >= 0 && std::isfinite(damping), ErrorKind::InvalidArgument,
          "damping must be finite and nonnegative");
  const Eigen::Index rows = system.f.size();
  const Eigen::Index nu = theta.size();
  require(system.J.rows() == rows && system.J.cols() == nu, ErrorKind::Dimension,
          "Jacobian shape does not match f and theta");

  Eigen::MatrixXd jr(2 * rows, nu);
  jr.topRows(rows) = system.J.real();
  jr.bottomRows(rows) = system.J.imag();
  Eigen::VectorXd fr(2 * rows);
  fr.head(rows) = system.f.real();
  fr.tail(rows) = system.f.imag();

  Eigen::MatrixXd normal = jr.transpose() * jr;
  normal.diagonal().array() += damping;
  const Eigen::VectorXd rhs = jr.transpose() * fr;

  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  const bool factored = llt.info() == Eigen::Success;
  if (damping == 0.0 && (!factored || llt.rcond() < 1e-13)) {
    throw Error(ErrorKind::IllConditioned,
                "normal matrix is singular without damping; use damping > 0");
  }
  if (factored) return theta - llt.solve(rhs);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(normal, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return theta - svd.solve(rhs);
}

namespace {

template <typename Derived>
void add_gaussian_noise(Eigen::MatrixBase<Derived>& m, std::normal_distribution<double>& noise,
                        Rng& rng) {
  // Row-major draw order, real part before imaginary part.
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    for (Eigen::Index l = 0; l < m.cols(); ++l) {
      const double re = noise(rng);
      const double im = noise(rng);
      m(k, l) += Complex(re, im);
    }
  }
}

std::normal_distribution<double> shot_noise(std::int64_t shots) {
  return std::normal_distribution<double>(0.0, 1.0 / std::sqrt(static_cast<double>(shots)));
}

}  // namespace

CovarianceSystem inject_shot_noise(CovarianceSystem system,
                                   std::optional<std::int64_t> shots, Rng& rng) {
  if (!shots) return system;
  require(*shots >= 1, ErrorKind::InvalidArgument, "shot count must be at least 1");
  auto noise = shot_noise(*shots);
  add_gaussian_noise(system.f, noise, rng);
  add_gaussian_noise(system.J, noise, rng);
  return system;
}

std::vector<double> shadow_estimate_expectations(
    const StateVector& state, const std::vector<PauliString>& observables,
    std::int64_t shots, Rng& rng) {
  require(shots >= 1, ErrorKind::InvalidArgument, "shot count must be at least 1");
  const int n = qubits_for_dimension(state.size());
  for (const auto& o : observables) {
    require(o.num_qubits() == n, ErrorKind::Dimension, "observable " + o.word() +
                                                           " has the wrong length");
  }

  // Basis per qubit: 0 = X, 1 = Y, 2 = Z. Draw every shot's bases first,
  // then outcomes pattern by pattern in ascending order.
  std::uniform_int_distribution<int> basis_pick(0, 2);
  std::map<std::vector<std::uint8_t>, std::int64_t> pattern_counts;
  std::vector<std::uint8_t> pattern(static_cast<std::size_t>(n));
  for (std::int64_t s = 0; s < shots; ++s) {
    for (auto& b : pattern) b = static_cast<std::uint8_t>(basis_pick(rng));
    ++pattern_counts[pattern];
  }

  const double r = 1.0 / std::sqrt(2.0);
  std::vector<double> sums(observables.size(), 0.0);
  for (const auto& [bases, count] : pattern_counts) {
    StateVector rotated = state;
    for (int q = 0; q < n; ++q) {
      const auto basis = bases[static_cast<std::size_t>(q)];
      if (basis == 2) continue;
      // X: Hadamard. Y: Hadamard after S^dagger. Outcome 0 is eigenvalue +1.
      const Complex u00(r, 0), u10(r, 0);
      const Complex u01 = basis == 0 ? Complex(r, 0) : Complex(0, -r);
      const Complex u11 = basis == 0 ? Complex(-r, 0) : Complex(0, r);
      const Eigen::Index stride = Eigen::Index{1} << q;
      for (Eigen::Index block = 0; block < rotated.size(); block += 2 * stride) {
        for (Eigen::Index i = block; i < block + stride; ++i) {
          const Complex a0 = rotated(i);
          const Complex a1 = rotated(i + stride);
          rotated(i) = u00 * a0 + u01 * a1;
          rotated(i + stride) = u10 * a0 + u11 * a1;
        }
      }
    }
    std::vector<double> probs(static_cast<std::size_t>(rotated.size()));
    for (Eigen::Index i = 0; i < rotated.size(); ++i) probs[static_cast<std::size_t>(i)] = std::norm(rotated(i));
    std::discrete_distribution<std::uint64_t> outcome(probs.begin(), probs.end());

    // Observables that can see this pattern: every non-identity letter
    // must match the measured basis on its qubit.
    std::vector<std::size_t> visible;
    std::vector<std::uint64_t> support(observables.size());
    for (std::size_t o = 0; o < observables.size(); ++o) {
      const auto& p = observables[o];
      bool match = true;
      for (int q = 0; q < n && match; ++q) {
        const char letter = p.letter(q);
        if (letter == 'I') continue;
        const int want = letter == 'X' ? 0 : (letter == 'Y' ? 1 : 2);
        match = want == bases[static_cast<std::size_t>(q)];
      }
      support[o] = p.x_mask() | p.z_mask();
      if (match) visible.push_back(o);
    }
    for (std::int64_t s = 0; s < count; ++s) {
      const std::uint64_t b = outcome(rng);
      for (std::size_t o : visible) {
        const double scale = std::pow(3.0, std::popcount(support[o]));
        sums[o] += (std::popcount(b & support[o]) & 1) ? -scale : scale;
      }
    }
  }
  for (auto& s : sums) s /= static_cast<double>(shots);
  return sums;
}

std::int64_t shot_budget(std::int64_t num_params, std::int64_t num_covariances,
                         double precision) {
  require(num_params > 0 && num_covariances > 0 && precision > 0, ErrorKind::InvalidArgument,
          "shot budget arguments must be positive");
  const double raw = static_cast<double>(num_params) *
                     std::log(static_cast<double>(num_covariances)) / (precision * precision);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw)));
}

void validate(const LMConfig& config) {
  require(config.damping >= 0 && std::isfinite(config.damping), ErrorKind::InvalidArgument,
          "damping must be nonnegative");
  require(config.max_iterations >= 1, ErrorKind::InvalidArgument,
          "max_iterations must be at least 1");
  require(config.locality == 1 || config.locality == 2, ErrorKind::InvalidArgument,
          "locality must be 1 or 2");
  require(config.covariance_norm_tol > 0, ErrorKind::InvalidArgument,
          "covariance_norm_tol must be positive");
  require(!config.shots || *config.shots >= 1, ErrorKind::InvalidArgument,
          "shots must be at least 1");
}

std::size_t resolved_pool_size(const LMConfig& config, const AnsatzCircuit& circuit) {
  const std::size_t available =
      enumerate_local_strings(circuit.num_qubits(), config.locality).size();
  if (config.pool_size != 0) return config.pool_size;
  return std::min<std::size_t>(4 * static_cast<std::size_t>(circuit.parameter_count()),
                               available);
}

CovarResult covar_solve(const PauliSum& h, const AnsatzCircuit& circuit,
                        const Eigen::Ref<const Eigen::VectorXd>& theta0,
                        const LMConfig& config, Rng& rng, BasisBits initial_bits) {
  validate(config);
  require(theta0.size() == circuit.parameter_count(), ErrorKind::Dimension,
          "theta0 has " + std::to_string(theta0.size()) + " entries, circuit expects " +
              std::to_string(circuit.parameter_count()));
  require_hermitian(h, "covar_solve Hamiltonian");
  const std::size_t pool_size = resolved_pool_size(config, circuit);

  CovarResult result;
  result.theta = theta0;
  OperatorPool pool;
  for (int it = 0;; ++it) {
    if (it == 0 || config.resample_pool) {
      pool = sample_operator_pool(circuit.num_qubits(), config.locality, pool_size, rng);
    }
    // f noise is drawn before the Jacobian is assembled, so a converged
    // iteration never pays for J.
    Factors at_theta;
    CovarianceSystem sys =
        assemble_covariances(pool, h, circuit, result.theta, initial_bits, at_theta);
    if (config.shots) {
      auto noise = shot_noise(*config.shots);
      add_gaussian_noise(sys.f, noise, rng);
    }
    const double norm = covariance_norm(sys.f);
    result.trace.push_back({it, norm, sys.energy});
    if (norm <= config.covariance_norm_tol) {
      result.converged = true;
      break;
    }
    if (it == config.max_iterations) break;

    assemble_jacobian(sys, pool, h, circuit, initial_bits, at_theta);
    if (config.shots) {
      auto noise = shot_noise(*config.shots);
      add_gaussian_noise(sys.J, noise, rng);
    }
    Eigen::VectorXd next = lm_update(result.theta, sys, config.damping);
    if (!next.allFinite()) {
      throw DivergenceError("non-finite parameters after update " + std::to_string(it + 1),
                            result.theta);
    }
    result.theta = std::move(next);
    result.iterations = it + 1;
  }
  return result;
}

CovarResult covar_solve(const PauliSum& h, const AnsatzCircuit& circuit,
                        const Eigen::Ref<const Eigen::VectorXd>& theta0,
                        const LMConfig& config, BasisBits initial_bits) {
  Rng rng(config.rng_seed);
  return covar_solve(h, circuit, theta0, config, rng, initial_bits);
}

}  // namespace covar
