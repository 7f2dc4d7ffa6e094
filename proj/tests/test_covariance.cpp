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
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "covar/covariance.hpp"
#include "oracles.hpp"

using covar::AnsatzCircuit;
using covar::Complex;
using covar::PauliString;
using covar::PauliSum;

namespace {

PauliSum random_hamiltonian(int n, int terms, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  PauliSum h(n);
  for (int k = 0; k < terms; ++k) {
    h += PauliSum(PauliString::from_word(oracle::random_word(n, rng)), g(rng));
  }
  return h;
}

Eigen::VectorXd random_theta(int size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Eigen::VectorXd t(size);
  for (auto& x : t) x = u(rng);
  return t;
}

covar::CovarianceSystem scalar_system(double f, double j) {
  covar::CovarianceSystem s;
  s.f = Eigen::VectorXcd::Constant(1, f);
  s.J = Eigen::MatrixXcd::Constant(1, 1, j);
  return s;
}

}  // namespace

TEST_CASE("pool enumeration counts") {
  CHECK(covar::enumerate_local_strings(3, 1).size() == 9);
  CHECK(covar::enumerate_local_strings(3, 2).size() == 36);
  CHECK(covar::enumerate_local_strings(1, 2).size() == 3);
  CHECK(covar::enumerate_local_strings(2, 2).size() == 15);
  for (const auto& p : covar::enumerate_local_strings(5, 2)) {
    CHECK(p.weight() >= 1);
    CHECK(p.weight() <= 2);
  }
  CHECK_THROWS_AS(covar::enumerate_local_strings(3, 3), covar::Error);
}

TEST_CASE("pool sampling is seeded and bounded") {
  covar::Rng a(5), b(5);
  const auto pa = covar::sample_operator_pool(4, 2, 20, a);
  const auto pb = covar::sample_operator_pool(4, 2, 20, b);
  CHECK(pa.operators == pb.operators);
  std::vector<PauliString> sorted = pa.operators;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  covar::Rng c(0);
  try {
    (void)covar::sample_operator_pool(3, 2, 37, c);
    FAIL("expected an enumeration error");
  } catch (const covar::Error& e) {
    CHECK(e.kind() == covar::ErrorKind::Enumeration);
  }
}

TEST_CASE("single-qubit covariance closed form") {
  const AnsatzCircuit c(1, 1);
  const auto x = PauliString::from_word("X");
  const PauliSum z(PauliString::from_word("Z"));
  for (double th : {0.0, 0.3, std::numbers::pi / 4, 1.9}) {
    Eigen::VectorXd theta(2);
    theta << th, 0.0;
    const auto psi = covar::build_ansatz_state(c, theta);
    const Complex f = covar::covariance(x, z, psi);
    CHECK(std::abs(f - Complex(-std::sin(th) * std::cos(th))) < 1e-14);
  }
  Eigen::VectorXd quarter(2);
  quarter << std::numbers::pi / 4, 0.0;
  CHECK(std::abs(covar::covariance(x, z, covar::build_ansatz_state(c, quarter)) - Complex(-0.5)) <
        1e-14);
}

TEST_CASE("covariance routes agree with dense oracle") {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 4; ++n) {
    const auto h = random_hamiltonian(n, 7, rng);
    const AnsatzCircuit c(n, 2);
    const auto psi = covar::build_ansatz_state(c, random_theta(c.parameter_count(), rng));
    const auto pool = covar::full_operator_pool(n);
    const auto fv = covar::covariance_vector(pool, h, psi);
    const oracle::Mat hm = covar::to_dense(h);
    const Complex eh = psi.dot(hm * psi);
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const oracle::Mat om = oracle::word_matrix(pool.operators[k].word());
      const Complex want = psi.dot(om * hm * psi) - psi.dot(om * psi) * eh;
      CHECK(std::abs(fv(static_cast<Eigen::Index>(k)) - want) < 1e-10);
      CHECK(std::abs(covar::covariance(pool.operators[k], h, psi) - want) < 1e-10);
    }
  }
}

TEST_CASE("assembled Jacobian matches central differences") {
  std::mt19937_64 rng(32);
  for (int rep = 0; rep < 5; ++rep) {
    const int n = 2 + rep % 3;
    const auto h = random_hamiltonian(n, 6, rng);
    const AnsatzCircuit c(n, 2);
    const auto theta = random_theta(c.parameter_count(), rng);
    const auto pool = covar::full_operator_pool(n);
    const auto sys = covar::assemble_system(pool, h, c, theta);
    CHECK(sys.J.rows() == static_cast<Eigen::Index>(pool.size()));
    CHECK(sys.J.cols() == c.parameter_count());
    CHECK(std::abs(sys.energy - covar::expectation(h, covar::build_ansatz_state(c, theta)).real()) <
          1e-12);
    for (int l = 0; l < c.parameter_count(); ++l) {
      Eigen::VectorXd tp = theta, tm = theta;
      tp(l) += 1e-5;
      tm(l) -= 1e-5;
      const auto fp = covar::covariance_vector(pool, h, covar::build_ansatz_state(c, tp));
      const auto fm = covar::covariance_vector(pool, h, covar::build_ansatz_state(c, tm));
      CHECK((sys.J.col(l) - (fp - fm) / 2e-5).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("lm update on scalar systems") {
  Eigen::VectorXd theta(1);
  theta << 0.7;
  CHECK(std::abs(covar::lm_update(theta, scalar_system(0.7, 1.0), 0.0)(0)) < 1e-15);
  theta << 1.0;
  CHECK(std::abs(covar::lm_update(theta, scalar_system(1.0, 1.0), 1.0)(0) - 0.5) < 1e-15);
  try {
    (void)covar::lm_update(theta, scalar_system(1.0, 0.0), 0.0);
    FAIL("expected an ill-conditioned error");
  } catch (const covar::Error& e) {
    CHECK(e.kind() == covar::ErrorKind::IllConditioned);
  }
  // Positive damping keeps a singular system solvable and the step is zero.
  CHECK(covar::lm_update(theta, scalar_system(1.0, 0.0), 1e-3)(0) == doctest::Approx(1.0));
}

TEST_CASE("lm update stacks real and imaginary parts") {
  covar::CovarianceSystem s;
  s.f = Eigen::VectorXcd::Constant(1, Complex(1.0, 2.0));
  s.J = Eigen::MatrixXcd::Constant(1, 1, Complex(1.0, 1.0));
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(1);
  // (1*1 + 1*1)^{-1} (1*1 + 1*2) = 1.5
  CHECK(covar::lm_update(theta, s, 0.0)(0) == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("shot noise is seeded and has the requested scale") {
  covar::CovarianceSystem s;
  s.f = Eigen::VectorXcd::Zero(2000);
  s.J = Eigen::MatrixXcd::Zero(2000, 3);
  covar::Rng a(3), b(3);
  const auto na = covar::inject_shot_noise(s, 10000, a);
  const auto nb = covar::inject_shot_noise(s, 10000, b);
  CHECK(na.f == nb.f);
  CHECK(na.J == nb.J);
  const double rms = std::sqrt(na.f.real().squaredNorm() / 2000.0);
  CHECK(rms == doctest::Approx(0.01).epsilon(0.1));
  covar::Rng c(3);
  const auto clean = covar::inject_shot_noise(s, std::nullopt, c);
  CHECK(clean.f == s.f);
}

TEST_CASE("classical shadows are unbiased") {
  std::mt19937_64 rng(33);
  const AnsatzCircuit c(2, 2);
  const auto psi = covar::build_ansatz_state(c, random_theta(c.parameter_count(), rng));
  const auto obs = covar::enumerate_local_strings(2, 2);
  covar::Rng shots_rng(4);
  const std::int64_t shots = 200000;
  const auto est = covar::shadow_estimate_expectations(psi, obs, shots, shots_rng);
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const double exact = covar::expectation(obs[k], psi).real();
    const double sigma = std::sqrt(std::pow(3.0, obs[k].weight()) / shots);
    CHECK(std::abs(est[k] - exact) < 5 * sigma);
  }
}

TEST_CASE("shot budget") {
  CHECK(covar::shot_budget(10, 100, 0.01) == 460518);
  CHECK(covar::shot_budget(1, 1, 1.0) == 1);
  CHECK(covar::shot_budget(1, 3, 1.0) == 2);
}

TEST_CASE("single-qubit covar solve reaches a Z eigenstate") {
  const AnsatzCircuit c(1, 1);
  const PauliSum z(PauliString::from_word("Z"));
  Eigen::VectorXd theta0(2);
  theta0 << 0.3, 0.0;
  covar::LMConfig cfg;
  cfg.covariance_norm_tol = 1e-10;
  cfg.max_iterations = 200;
  const auto r = covar::covar_solve(z, c, theta0, cfg);
  CHECK(r.converged);
  const double ez = covar::expectation(z, covar::build_ansatz_state(c, r.theta)).real();
  CHECK(std::abs(std::abs(ez) - 1.0) < 1e-9);
  CHECK(r.trace.front().f_norm > r.trace.back().f_norm);
}

TEST_CASE("single-qubit covar solve with default damping") {
  const AnsatzCircuit c(1, 1);
  const PauliSum z(PauliString::from_word("Z"));
  covar::LMConfig cfg;
  cfg.damping = 1e-3;
  cfg.covariance_norm_tol = 2e-3;
  cfg.max_iterations = 100;
  const auto r = covar::covar_solve(z, c, Eigen::Vector2d(0.3, 0.0), cfg);
  CHECK(r.converged);
  CHECK(r.trace.back().f_norm <= 2e-3);
  const double ez = covar::expectation(z, covar::build_ansatz_state(c, r.theta)).real();
  CHECK(std::abs(std::abs(ez) - 1.0) < 1e-3);
}

TEST_CASE("covar solve is deterministic per seed") {
  std::mt19937_64 rng(34);
  const auto h = random_hamiltonian(3, 8, rng);
  const AnsatzCircuit c(3, 2);
  const auto theta0 = random_theta(c.parameter_count(), rng);
  covar::LMConfig cfg;
  cfg.pool_size = 10;
  cfg.rng_seed = 9;
  cfg.max_iterations = 20;
  cfg.shots = 100000;
  const auto a = covar::covar_solve(h, c, theta0, cfg);
  const auto b = covar::covar_solve(h, c, theta0, cfg);
  CHECK(a.theta == b.theta);
  CHECK(a.iterations == b.iterations);
}
