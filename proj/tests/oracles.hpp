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

// Dense reference implementations built from 2x2 matrices and Kronecker
// products. They share no code with the library kernels.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

/// Letter q of `word` acts on qubit q, and qubit q is bit q of the basis
/// index, so the Kronecker product runs from the last letter to the first.
inline Mat word_matrix(const std::string& word) {
  Mat m = Mat::Identity(1, 1);
  for (char c : word) m = Eigen::kroneckerProduct(pauli(c), m).eval();
  return m;
}

inline Mat sum_matrix(const std::vector<std::pair<cd, std::string>>& terms, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat m = Mat::Zero(dim, dim);
  for (const auto& [c, w] : terms) m += c * word_matrix(w);
  return m;
}

/// Single-qubit gate `u` on qubit q of an n-qubit register.
inline Mat embed(const Mat& u, int q, int n) {
  Mat m = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    m = Eigen::kroneckerProduct(k == q ? u : pauli('I'), m).eval();
  }
  return m;
}

inline Mat ry(double a) {
  Mat m(2, 2);
  m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
  return m;
}

inline Mat rz(double a) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = std::exp(cd(0, -a / 2));
  m(1, 1) = std::exp(cd(0, a / 2));
  return m;
}

inline Mat cz(int a, int b, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat m = Mat::Identity(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (((i >> a) & 1) && ((i >> b) & 1)) m(i, i) = -1;
  }
  return m;
}

/// Layer = Ry on all qubits, Rz on all qubits, CZ on nearest neighbours
/// (plus the closing edge for rings of three or more).
inline Vec ansatz_state(int n, int layers, bool ring, const Eigen::VectorXd& theta,
                        std::uint64_t bits = 0) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vec psi = Vec::Zero(dim);
  psi(static_cast<Eigen::Index>(bits)) = 1;
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n; ++q) psi = embed(ry(theta(2 * n * l + q)), q, n) * psi;
    for (int q = 0; q < n; ++q) psi = embed(rz(theta(2 * n * l + n + q)), q, n) * psi;
    for (int q = 0; q + 1 < n; ++q) psi = cz(q, q + 1, n) * psi;
    if (ring && n >= 3) psi = cz(n - 1, 0, n) * psi;
  }
  return psi;
}

inline std::string random_word(int n, std::mt19937_64& rng) {
  static const char letters[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string w(static_cast<std::size_t>(n), 'I');
  for (auto& c : w) c = letters[pick(rng)];
  return w;
}

/// Lattice Schwinger terms summed site by site over 1-based indices, with
/// the k = l self-pairs of the ZZ sum omitted. Keyed by word.
inline std::map<std::string, double> schwinger_terms(int n, double j, double w, double m,
                                                     double theta) {
  std::map<std::string, double> out;
  auto word_with = [n](std::initializer_list<std::pair<int, char>> letters) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (auto [site, c] : letters) s[static_cast<std::size_t>(site - 1)] = c;
    return s;
  };
  for (int site = 2; site <= n - 1; ++site) {
    for (int k = 1; k <= site; ++k) {
      for (int l = k + 1; l <= site; ++l) out[word_with({{k, 'Z'}, {l, 'Z'}})] += j / 2;
    }
  }
  for (int site = 1; site <= n - 1; ++site) {
    const double amp = j / 2 * (w - std::pow(-1.0, site) * m / 2 * std::sin(theta));
    out[word_with({{site, 'X'}, {site + 1, 'X'}})] += amp;
    out[word_with({{site, 'Y'}, {site + 1, 'Y'}})] += amp;
  }
  for (int site = 1; site <= n; ++site) {
    out[word_with({{site, 'Z'}})] += m * std::cos(theta) / 2 * std::pow(-1.0, site);
  }
  for (int site = 1; site <= n - 1; ++site) {
    for (int l = 1; l <= site; ++l) out[word_with({{l, 'Z'}})] -= j / 2 * (site % 2);
  }
  return out;
}

/// Dense random-field Heisenberg ring.
inline Mat spin_ring_matrix(const std::vector<double>& fields, double j) {
  const int n = static_cast<int>(fields.size());
  std::vector<std::pair<cd, std::string>> terms;
  for (int i = 0; i < n; ++i) {
    std::string z(static_cast<std::size_t>(n), 'I');
    z[static_cast<std::size_t>(i)] = 'Z';
    terms.emplace_back(fields[static_cast<std::size_t>(i)], z);
    for (char c : {'X', 'Y', 'Z'}) {
      std::string pair(static_cast<std::size_t>(n), 'I');
      pair[static_cast<std::size_t>(i)] = c;
      pair[static_cast<std::size_t>((i + 1) % n)] = c;
      terms.emplace_back(j, pair);
    }
  }
  return sum_matrix(terms, n);
}

}  // namespace oracle
