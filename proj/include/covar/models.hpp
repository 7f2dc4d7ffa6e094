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

#include "covar/adiabatic.hpp"
#include "covar/pauli.hpp"

namespace covar {

struct ModelInstance {
  PauliSum hamiltonian;
  MorphSchedule schedule;
};

/// sum_i X_i on every qubit.
PauliSum x_mixer(int num_qubits);

/// Random-field Heisenberg ring
///   H = sum_i c_i Z_i + J sum_i (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1})
/// with periodic boundary. Empty `fields` draws c_i ~ U[-1, 1] from `seed`;
/// `field_scale` multiplies the fields afterwards.
struct SpinRingSpec {
  int num_qubits = 10;
  double coupling = 1.0;
  std::vector<double> fields;
  double field_scale = 1.0;
  std::uint64_t seed = 0;
};

/// Perturbative schedule: h0 = sum c_i Z_i, h1 = the coupling terms.
ModelInstance build_spin_ring(const SpinRingSpec& spec, double delta_t = 0.1);

/// Fields used for `spec` (drawn when not given, then scaled).
std::vector<double> spin_ring_fields(const SpinRingSpec& spec);

/// Lattice Schwinger model after Gauss-law elimination and Jordan-Wigner,
/// with sites n = 1..N mapped to qubits 0..N-1:
///   H_ZZ = J/2 sum_{n=2}^{N-1} sum_{1<=k<l<=n} Z_k Z_l
///   H_pm = J/2 sum_{n=1}^{N-1} [w - (-1)^n m/2 sin(theta)] (X_n X_{n+1} + Y_n Y_{n+1})
///   H_Z  = m cos(theta)/2 sum_n (-1)^n Z_n - J/2 sum_{n=1}^{N-1} (n mod 2) sum_{l<=n} Z_l
/// The k = l self-pairs of H_ZZ are constants and are dropped.
struct SchwingerSpec {
  int num_sites = 5;
  double coupling = 1.0;   // J
  double hopping = 0.1;    // w
  double mass = 0.1;       // m
  double theta_angle = 0.0;
};

/// Mixing schedule from sum_i X_i.
ModelInstance build_schwinger(const SchwingerSpec& spec, double delta_t = 0.15);

/// Weighted max-cut, H = sum_i w_i Z_i + sum_{i<j} w_ij Z_i Z_j.
/// Empty weights are drawn from U[0, 1] with `seed`. When
/// `distinct_pair_weights` > 0 that many pair values are drawn and assigned
/// round-robin to the pairs in (i, j) lexicographic order.
struct MaxCutSpec {
  int num_qubits = 8;
  std::vector<double> node_weights;
  /// Upper-triangle weights in (0,1), (0,2), ..., (1,2), ... order.
  std::vector<double> pair_weights;
  int distinct_pair_weights = 14;
  std::uint64_t seed = 0;
};

/// Mixing schedule from sum_i X_i.
ModelInstance build_maxcut(const MaxCutSpec& spec, double delta_t = 0.15);

/// Resolved node and pair weights for `spec`.
struct MaxCutWeights {
  std::vector<double> node;
  std::vector<double> pair;
};
MaxCutWeights maxcut_weights(const MaxCutSpec& spec);

}  // namespace covar
