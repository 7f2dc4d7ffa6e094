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
#include <cstring>
#include <numbers>
#include <sstream>
#include <string>

#include <doctest.h>

#include "covar/adiabatic.hpp"
#include "covar/exact.hpp"

using covar::AnsatzCircuit;
using covar::MorphKind;
using covar::MorphSchedule;
using covar::PauliString;
using covar::PauliSum;

namespace {

MorphSchedule schedule(MorphKind kind, PauliSum h0, PauliSum h1, double dt) {
  MorphSchedule s;
  s.kind = kind;
  s.h0 = std::move(h0);
  s.h1 = std::move(h1);
  s.delta_t = dt;
  return s;
}

PauliSum word(const char* w, double c = 1.0) { return PauliSum(PauliString::from_word(w), c); }

MorphSchedule x_to_z(double dt) {
  return schedule(MorphKind::Mixing, word("X"), word("Z"), dt);
}

}  // namespace

TEST_CASE("time grid pins the last point to one") {
  const auto g = covar::time_grid(x_to_z(0.25));
  REQUIRE(g.size() == 5);
  CHECK(g[2] == 0.5);
  CHECK(g.back() == 1.0);
  const auto h = covar::time_grid(x_to_z(0.3));
  REQUIRE(h.size() == 5);
  CHECK(h[3] == doctest::Approx(0.9));
  CHECK(h.back() == 1.0);
  CHECK(covar::time_grid(x_to_z(1.0)).size() == 2);
  CHECK_THROWS_AS(covar::time_grid(x_to_z(0.0)), covar::Error);
}

TEST_CASE("mixing endpoints reproduce h0 and h1 term for term") {
  const PauliSum h0 = word("XI") + word("IX");
  const PauliSum h1 = word("ZZ", 0.7) + word("ZI", -0.3) + word("XX", 0.2);
  const auto s = schedule(MorphKind::Mixing, h0, h1, 0.1);
  CHECK(covar::morph_hamiltonian(s, 0.0) == h0);
  CHECK(covar::morph_hamiltonian(s, 1.0) == h1);
  CHECK(covar::target_hamiltonian(s) == h1);
  CHECK(covar::morph_derivative(s) == h1 - h0);
  const PauliSum mid = covar::morph_hamiltonian(s, 0.25);
  CHECK(mid.coefficient(PauliString::from_word("XI")) == covar::Complex(0.75));
  CHECK(mid.coefficient(PauliString::from_word("ZZ")) == covar::Complex(0.25 * 0.7));
  CHECK_THROWS_AS(covar::morph_hamiltonian(s, 1.5), covar::Error);
}

TEST_CASE("perturbative midpoint scales the coupling exactly") {
  const PauliSum h0 = word("ZI", 0.4) + word("IZ", -0.9);
  const PauliSum h1 = word("XX", 1.3) + word("YY", 1.3) + word("ZZ", 1.3);
  const auto s = schedule(MorphKind::Perturbative, h0, h1, 0.1);
  CHECK(covar::morph_hamiltonian(s, 0.0) == h0);
  CHECK(covar::morph_hamiltonian(s, 1.0) == h0 + h1);
  const PauliSum mid = covar::morph_hamiltonian(s, 0.5);
  for (const auto& t : h1.terms()) CHECK(mid.coefficient(t.string) == 0.5 * t.coefficient);
  for (const auto& t : h0.terms()) CHECK(mid.coefficient(t.string) == t.coefficient);
  CHECK(covar::morph_derivative(s) == h1);
}

TEST_CASE("diagonal initial eigenstates") {
  const PauliSum h0 = word("ZI") + word("IZ", 2.0);
  const auto s = schedule(MorphKind::Perturbative, h0, word("XX"), 0.1);
  const AnsatzCircuit c(2, 2);
  const auto ground = covar::init_eigenstate_params(s, c, 0);
  CHECK(ground.initial_bits == 3);
  CHECK(ground.energy == -3.0);
  CHECK(ground.theta.isZero());
  const auto first = covar::init_eigenstate_params(s, c, 1);
  CHECK(first.initial_bits == 2);
  CHECK(first.energy == -1.0);
  CHECK_THROWS_AS(covar::init_eigenstate_params(s, c, 4), covar::Error);
}

TEST_CASE("mixer initial eigenstates survive the entangling layers") {
  const PauliSum mixer = word("XII") + word("IXI") + word("IIX");
  const auto s = schedule(MorphKind::Mixing, mixer, word("ZZI"), 0.1);
  for (int layers : {2, 3, 4}) {
    const AnsatzCircuit c(3, layers);
    for (int level : {0, 1, 4, 7}) {
      const auto init = covar::init_eigenstate_params(s, c, level);
      const auto psi = covar::build_ansatz_state(c, init.theta, init.initial_bits);
      CHECK(covar::energy_variance(mixer, psi) < 1e-12);
      CHECK(covar::expectation(mixer, psi).real() == doctest::Approx(init.energy));
    }
  }
  const auto spec = covar::diagonalize(mixer);
  const AnsatzCircuit c(3, 2);
  CHECK(covar::init_eigenstate_params(s, c, 0).energy == doctest::Approx(spec.eigenvalues(0)));
  CHECK(covar::init_eigenstate_params(s, c, 3).energy == doctest::Approx(spec.eigenvalues(3)));
}

TEST_CASE("negative mixer strength flips the prepared pattern") {
  const PauliSum mixer = -1.0 * (word("XI") + word("IX"));
  const auto s = schedule(MorphKind::Mixing, mixer, word("ZZ"), 0.1);
  const AnsatzCircuit c(2, 2);
  const auto init = covar::init_eigenstate_params(s, c, 0);
  const auto psi = covar::build_ansatz_state(c, init.theta, init.initial_bits);
  CHECK(covar::expectation(mixer, psi).real() == doctest::Approx(-2.0));
}

TEST_CASE("degenerate mixer manifold is ordered by the tie-break") {
  const PauliSum mixer = word("XI") + word("IX");
  const auto s = schedule(MorphKind::Mixing, mixer, word("ZZ"), 0.1);
  const AnsatzCircuit c(2, 2);
  const PauliSum favour_qubit1 = word("IX", 1.0);
  const auto init = covar::init_eigenstate_params(s, c, 1, &favour_qubit1);
  const auto psi = covar::build_ansatz_state(c, init.theta, init.initial_bits);
  CHECK(covar::expectation(favour_qubit1, psi).real() == doctest::Approx(-1.0));
  CHECK(covar::expectation(mixer, psi).real() == doctest::Approx(0.0));
  const PauliSum favour_qubit0 = word("XI", 1.0);
  const auto other = covar::init_eigenstate_params(s, c, 1, &favour_qubit0);
  const auto phi = covar::build_ansatz_state(c, other.theta, other.initial_bits);
  CHECK(covar::expectation(favour_qubit0, phi).real() == doctest::Approx(-1.0));
}

TEST_CASE("one entangled layer cannot prepare a mixer eigenstate") {
  const auto s = schedule(MorphKind::Mixing, word("XI") + word("IX"), word("ZZ"), 0.1);
  try {
    (void)covar::init_eigenstate_params(s, AnsatzCircuit(2, 1), 0);
    FAIL("expected a not-solvable error");
  } catch (const covar::Error& e) {
    CHECK(e.kind() == covar::ErrorKind::NotSolvable);
  }
  CHECK_NOTHROW(covar::init_eigenstate_params(x_to_z(0.1), AnsatzCircuit(1, 1), 0));
}

TEST_CASE("non-solvable starting Hamiltonian") {
  const auto s = schedule(MorphKind::Mixing, word("XZ") + word("ZX"), word("ZZ"), 0.1);
  CHECK_THROWS_AS(covar::init_eigenstate_params(s, AnsatzCircuit(2, 2), 0), covar::Error);
}

TEST_CASE("single qubit X to Z follows the ground state") {
  const AnsatzCircuit c(1, 1);
  covar::AdiabaticOptions opt;
  opt.lm.covariance_norm_tol = 1e-9;
  opt.lm.max_iterations = 100;
  const auto traj = covar::adiabatic_covar_run(x_to_z(0.1), c, 0, opt);
  REQUIRE(traj.records.size() == 11);
  CHECK(traj.method == "covar");
  for (const auto& r : traj.records) {
    CHECK(*r.level_index == 0);
    CHECK(*r.delta_e < 1e-8);
  }
  CHECK(traj.records.back().energy == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(traj.records.front().covar_iters == 0);
  CHECK(traj.total_iterations() > 0);
}

TEST_CASE("single qubit X to Z excited level") {
  const AnsatzCircuit c(1, 1);
  covar::AdiabaticOptions opt;
  opt.lm.covariance_norm_tol = 1e-9;
  opt.lm.max_iterations = 100;
  const auto traj = covar::adiabatic_covar_run(x_to_z(0.1), c, 1, opt);
  CHECK(traj.records.back().energy == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*traj.records.back().level_index == 1);
}

TEST_CASE("handoff, energies and csv layout") {
  const PauliSum h0 = word("ZII", 0.3) + word("IZI", -0.8) + word("IIZ", 0.5);
  const PauliSum h1 = word("XXI") + word("YYI") + word("ZZI") + word("IXX") + word("IYY") +
                      word("IZZ") + word("XIX") + word("YIY") + word("ZIZ");
  const auto s = schedule(MorphKind::Perturbative, h0, h1, 0.25);
  const AnsatzCircuit c(3, 2);
  covar::AdiabaticOptions opt;
  opt.lm.max_iterations = 5;
  opt.jitter_std = 0.05;
  opt.lm.rng_seed = 3;
  const auto traj = covar::adiabatic_covar_run(s, c, 0, opt);
  REQUIRE(traj.records.size() == 5);
  for (std::size_t k = 1; k + 1 < traj.records.size(); ++k) {
    const auto& a = traj.records[k].theta;
    const auto& b = traj.records[k + 1].theta_start;
    CHECK(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0);
  }
  for (const auto& r : traj.records) {
    const auto psi = covar::build_ansatz_state(c, r.theta, traj.initial_bits);
    const double e = covar::expectation(covar::morph_hamiltonian(s, r.t), psi).real();
    CHECK(std::abs(e - r.energy) < 1e-12);
    CHECK(r.covar_iters <= 5);
  }
  std::ostringstream out;
  covar::write_trajectory_csv(out, traj);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,step_index,covar_iters,energy,f_norm,delta_e,level_index,method,theta");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);

  const auto again = covar::adiabatic_covar_run(s, c, 0, opt);
  std::ostringstream out2;
  covar::write_trajectory_csv(out2, again);
  CHECK(out.str() == out2.str());
}

TEST_CASE("oracle off leaves level columns empty") {
  covar::AdiabaticOptions opt;
  opt.oracle = false;
  opt.lm.max_iterations = 3;
  const auto traj = covar::adiabatic_covar_run(x_to_z(0.5), AnsatzCircuit(1, 1), 0, opt);
  CHECK_FALSE(traj.records.back().delta_e.has_value());
  std::ostringstream out;
  covar::write_trajectory_csv(out, traj, false);
  CHECK(out.str().find(",,,covar,") != std::string::npos);
}

TEST_CASE("morph kind names") {
  CHECK(covar::to_string(MorphKind::Perturbative) == "perturbative");
  CHECK(covar::morph_kind_from_string("mixing") == MorphKind::Mixing);
  CHECK_THROWS_AS(covar::morph_kind_from_string("other"), covar::Error);
}
