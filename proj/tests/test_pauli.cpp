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
#include <random>
#include <string>

#include <doctest.h>

#include "covar/pauli.hpp"
#include "oracles.hpp"

using covar::Complex;
using covar::PauliString;
using covar::PauliSum;
using covar::PauliTerm;

namespace {

oracle::Vec random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  oracle::Vec v(Eigen::Index{1} << n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v.normalized();
}

PauliSum random_sum(int n, int terms, std::mt19937_64& rng, bool hermitian) {
  std::normal_distribution<double> g;
  std::vector<PauliTerm> out;
  for (int k = 0; k < terms; ++k) {
    const Complex c = hermitian ? Complex(g(rng), 0) : Complex(g(rng), g(rng));
    out.push_back({c, PauliString::from_word(oracle::random_word(n, rng))});
  }
  return PauliSum(n, out);
}

oracle::Mat dense_of(const PauliSum& h) {
  std::vector<std::pair<oracle::cd, std::string>> terms;
  for (const auto& t : h.terms()) terms.emplace_back(t.coefficient, t.string.word());
  return oracle::sum_matrix(terms, h.num_qubits());
}

}  // namespace

TEST_CASE("word round trip and letters") {
  const auto p = PauliString::from_word("IXYZ");
  CHECK(p.num_qubits() == 4);
  CHECK(p.word() == "IXYZ");
  CHECK(p.letter(0) == 'I');
  CHECK(p.letter(2) == 'Y');
  CHECK(p.weight() == 3);
  CHECK(p.num_y() == 1);
  CHECK(p.x_mask() == 0b0110);
  CHECK(p.z_mask() == 0b1100);
  CHECK_THROWS_AS(PauliString::from_word("XQ"), covar::Error);
}

TEST_CASE("string action matches kron oracle") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto word = oracle::random_word(n, rng);
      const auto p = PauliString::from_word(word);
      const oracle::Mat m = oracle::word_matrix(word);
      CHECK((covar::to_dense(p) - m).norm() < 1e-12);
      const auto psi = random_state(n, rng);
      const auto phi = random_state(n, rng);
      CHECK((covar::apply_pauli_string(p, psi) - m * psi).norm() < 1e-10);
      CHECK(std::abs(covar::expectation(p, psi) - psi.dot(m * psi)) < 1e-10);
      CHECK(std::abs(covar::matrix_element(phi, p, psi) - phi.dot(m * psi)) < 1e-10);
    }
  }
}

TEST_CASE("products and phases match dense multiplication") {
  std::mt19937_64 rng(12);
  for (int n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 30; ++rep) {
      const auto a = oracle::random_word(n, rng);
      const auto b = oracle::random_word(n, rng);
      const auto prod = covar::pauli_multiply(PauliString::from_word(a), PauliString::from_word(b));
      const oracle::Mat expect = oracle::word_matrix(a) * oracle::word_matrix(b);
      const oracle::Mat got = prod.phase * oracle::word_matrix(prod.string.word());
      CHECK((got - expect).norm() < 1e-12);
    }
  }
  const auto xy = covar::pauli_multiply(PauliString::from_word("X"), PauliString::from_word("Y"));
  CHECK(xy.string.word() == "Z");
  CHECK(std::abs(xy.phase - Complex(0, 1)) < 1e-15);
}

TEST_CASE("sum arithmetic, expectation and product match dense") {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 5; ++n) {
    const auto a = random_sum(n, 6, rng, false);
    const auto b = random_sum(n, 5, rng, false);
    const auto psi = random_state(n, rng);
    CHECK((covar::to_dense(a) - dense_of(a)).norm() < 1e-10);
    CHECK((covar::to_dense(a + b) - (dense_of(a) + dense_of(b))).norm() < 1e-10);
    CHECK((covar::to_dense(multiply(a, b)) - dense_of(a) * dense_of(b)).norm() < 1e-10);
    CHECK((covar::apply_pauli_sum(a, psi) - dense_of(a) * psi).norm() < 1e-10);
    CHECK(std::abs(covar::expectation(a, psi) - psi.dot(dense_of(a) * psi)) < 1e-10);
  }
}

TEST_CASE("canonicalization merges and drops terms") {
  const auto x = PauliString::from_word("XI");
  const auto z = PauliString::from_word("IZ");
  PauliSum h(2, {{1.0, x}, {2.0, z}, {0.5, x}, {-2.0, z}});
  CHECK(h.size() == 1);
  CHECK(h.coefficient(x) == Complex(1.5));
  CHECK(h.coefficient(z) == Complex(0.0));
  const PauliSum same(2, {{0.5, x}, {1.0, x}});
  CHECK(h == same);
  CHECK((h - h).empty());
}

TEST_CASE("hermiticity") {
  const auto p = PauliString::from_word("XY");
  CHECK(PauliSum(p, 2.0).is_hermitian());
  CHECK_FALSE(PauliSum(p, Complex(0, 1)).is_hermitian());
  CHECK_THROWS_AS(covar::require_hermitian(PauliSum(p, Complex(0, 1)), "h"), covar::Error);
}

TEST_CASE("text format round trips exactly") {
  std::mt19937_64 rng(14);
  const auto h = random_sum(4, 8, rng, false);
  CHECK(covar::parse_pauli_sum(covar::to_text(h)) == h);
  CHECK_THROWS_AS(covar::parse_pauli_sum("1.0 0.0 XZ\n1.0 0.0 X\n"), covar::Error);
  CHECK_THROWS_AS(covar::parse_pauli_sum("abc 0 X\n"), covar::Error);
  CHECK_THROWS_AS(covar::parse_pauli_sum(""), covar::Error);
}

TEST_CASE("dimension mismatch is reported") {
  const auto p = PauliString::from_word("XX");
  const covar::StateVector psi = covar::StateVector::Zero(8);
  try {
    (void)covar::expectation(p, psi);
    FAIL("expected a dimension error");
  } catch (const covar::Error& e) {
    CHECK(e.kind() == covar::ErrorKind::Dimension);
  }
}
