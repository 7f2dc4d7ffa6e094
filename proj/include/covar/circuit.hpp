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
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "covar/pauli.hpp"

namespace covar {

/// Computational basis state encoded as an integer; bit q is qubit q.
using BasisBits = std::uint64_t;

/// Renders bits qubit-0-first, e.g. qubit 0 set on two qubits gives "10".
std::string bits_to_string(BasisBits bits, int num_qubits);
BasisBits bits_from_string(std::string_view text);

StateVector basis_state(int num_qubits, BasisBits bits);

enum class Entangler { Ring, Chain };

std::string_view to_string(Entangler e);
Entangler entangler_from_string(std::string_view name);

enum class GateKind : std::uint8_t { RY, RZ, CZ };

struct Gate {
  GateKind kind;
  int qubit;
  int partner = -1;  // CZ only
  int param = -1;    // rotations only
};

/// Layered hardware-efficient ansatz. Every layer applies Ry on every
/// qubit, then Rz on every qubit, then CZ on each entangler pair; each
/// rotation owns one parameter, so the circuit has 2 * N * L parameters.
/// CZ is diagonal, so at theta = 0 the circuit maps every basis state to
/// itself up to sign.
class AnsatzCircuit {
 public:
  AnsatzCircuit(int num_qubits, int num_layers, Entangler entangler = Entangler::Ring);

  int num_qubits() const noexcept { return num_qubits_; }
  int num_layers() const noexcept { return num_layers_; }
  Entangler entangler() const noexcept { return entangler_; }
  int parameter_count() const noexcept { return 2 * num_qubits_ * num_layers_; }

  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::vector<std::pair<int, int>>& entangler_pairs() const noexcept {
    return pairs_;
  }

  int ry_parameter(int layer, int qubit) const;
  int rz_parameter(int layer, int qubit) const;

 private:
  int num_qubits_;
  int num_layers_;
  Entangler entangler_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<Gate> gates_;
};

// In-place gate kernels.
void apply_ry(StateVector& state, int qubit, double angle);
void apply_rz(StateVector& state, int qubit, double angle);
void apply_cz(StateVector& state, int a, int b);
void apply_x(StateVector& state, int qubit);

/// U(theta)|initial_bits>.
StateVector build_ansatz_state(const AnsatzCircuit& circuit,
                               const Eigen::Ref<const Eigen::VectorXd>& theta,
                               BasisBits initial_bits = 0);

/// Calls `visit(l, plus, minus)` for every parameter l with the states
/// prepared at theta_l + pi/2 and theta_l - pi/2. Prefix states are cached
/// so each pair only replays the gates after parameter l.
void for_each_shifted_pair(
    const AnsatzCircuit& circuit, const Eigen::Ref<const Eigen::VectorXd>& theta,
    BasisBits initial_bits,
    const std::function<void(int, const StateVector&, const StateVector&)>& visit);

/// d<p>/d theta_l by the two-term shift rule.
double param_shift_derivative(const AnsatzCircuit& circuit,
                              const Eigen::Ref<const Eigen::VectorXd>& theta,
                              int param, const PauliString& p,
                              BasisBits initial_bits = 0);

/// Gradient of <h> with respect to every parameter, by the shift rule.
Eigen::VectorXd energy_gradient(const AnsatzCircuit& circuit,
                                const Eigen::Ref<const Eigen::VectorXd>& theta,
                                const PauliSum& h, BasisBits initial_bits = 0);

}  // namespace covar
