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
#include "covar/circuit.hpp"

#include <cmath>
#include <numbers>

namespace covar {

std::string bits_to_string(BasisBits bits, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((bits >> q) & 1) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

BasisBits bits_from_string(std::string_view text) {
  if (text.size() > 63) throw Error(ErrorKind::Parse, "bitstring too long");
  BasisBits bits = 0;
  for (std::size_t q = 0; q < text.size(); ++q) {
    if (text[q] == '1')
      bits |= BasisBits{1} << q;
    else if (text[q] != '0')
      throw Error(ErrorKind::Parse, "bitstring may only contain 0 and 1");
  }
  return bits;
}

StateVector basis_state(int num_qubits, BasisBits bits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw Error(ErrorKind::Capacity,
                "statevector limited to 1..30 qubits, got " + std::to_string(num_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (bits >= static_cast<BasisBits>(dim)) {
    throw Error(ErrorKind::Dimension, "initial bits exceed qubit count");
  }
  StateVector s = StateVector::Zero(dim);
  s(static_cast<Eigen::Index>(bits)) = 1.0;
  return s;
}

std::string_view to_string(Entangler e) {
  return e == Entangler::Ring ? "ring" : "chain";
}

Entangler entangler_from_string(std::string_view name) {
  if (name == "ring") return Entangler::Ring;
  if (name == "chain") return Entangler::Chain;
  throw Error(ErrorKind::Parse, "unknown entangler '" + std::string(name) + "'");
}

AnsatzCircuit::AnsatzCircuit(int num_qubits, int num_layers, Entangler entangler)
    : num_qubits_(num_qubits), num_layers_(num_layers), entangler_(entangler) {
  require(num_qubits >= 1 && num_qubits <= 30, ErrorKind::InvalidArgument,
          "ansatz needs 1..30 qubits");
  require(num_layers >= 1, ErrorKind::InvalidArgument, "ansatz needs at least one layer");

  for (int q = 0; q + 1 < num_qubits; ++q) pairs_.emplace_back(q, q + 1);
  // A ring on two qubits would double the single edge.
  if (entangler == Entangler::Ring && num_qubits >= 3) pairs_.emplace_back(num_qubits - 1, 0);

  for (int layer = 0; layer < num_layers; ++layer) {
    for (int q = 0; q < num_qubits; ++q)
      gates_.push_back({GateKind::RY, q, -1, ry_parameter(layer, q)});
    for (int q = 0; q < num_qubits; ++q)
      gates_.push_back({GateKind::RZ, q, -1, rz_parameter(layer, q)});
    for (auto [a, b] : pairs_) gates_.push_back({GateKind::CZ, a, b, -1});
  }
}

int AnsatzCircuit::ry_parameter(int layer, int qubit) const {
  return 2 * num_qubits_ * layer + qubit;
}

int AnsatzCircuit::rz_parameter(int layer, int qubit) const {
  return 2 * num_qubits_ * layer + num_qubits_ + qubit;
}

void apply_ry(StateVector& state, int qubit, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const Eigen::Index stride = Eigen::Index{1} << qubit;
  const Eigen::Index dim = state.size();
  for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
    for (Eigen::Index i = block; i < block + stride; ++i) {
      const Complex a0 = state(i);
      const Complex a1 = state(i + stride);
      state(i) = c * a0 - s * a1;
      state(i + stride) = s * a0 + c * a1;
    }
  }
}

void apply_rz(StateVector& state, int qubit, double angle) {
  const Complex lo = std::polar(1.0, -angle / 2);
  const Complex hi = std::polar(1.0, angle / 2);
  const Eigen::Index stride = Eigen::Index{1} << qubit;
  const Eigen::Index dim = state.size();
  for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
    for (Eigen::Index i = block; i < block + stride; ++i) {
      state(i) *= lo;
      state(i + stride) *= hi;
    }
  }
}

void apply_cz(StateVector& state, int a, int b) {
  const auto mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  const auto dim = static_cast<std::uint64_t>(state.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & mask) == mask) state(static_cast<Eigen::Index>(i)) = -state(static_cast<Eigen::Index>(i));
  }
}

void apply_x(StateVector& state, int qubit) {
  const Eigen::Index stride = Eigen::Index{1} << qubit;
  for (Eigen::Index block = 0; block < state.size(); block += 2 * stride) {
    for (Eigen::Index i = block; i < block + stride; ++i) std::swap(state(i), state(i + stride));
  }
}

namespace {

void apply_gate(StateVector& state, const Gate& g, double angle) {
  switch (g.kind) {
    case GateKind::RY: apply_ry(state, g.qubit, angle); break;
    case GateKind::RZ: apply_rz(state, g.qubit, angle); break;
    case GateKind::CZ: apply_cz(state, g.qubit, g.partner); break;
  }
}

void check_theta(const AnsatzCircuit& circuit, Eigen::Index size) {
  if (size != circuit.parameter_count()) {
    throw Error(ErrorKind::Dimension,
                "expected " + std::to_string(circuit.parameter_count()) +
                    " parameters, got " + std::to_string(size));
  }
}

}  // namespace

StateVector build_ansatz_state(const AnsatzCircuit& circuit,
                               const Eigen::Ref<const Eigen::VectorXd>& theta,
                               BasisBits initial_bits) {
  check_theta(circuit, theta.size());
  StateVector state = basis_state(circuit.num_qubits(), initial_bits);
  for (const auto& g : circuit.gates()) {
    apply_gate(state, g, g.param >= 0 ? theta(g.param) : 0.0);
  }
  return state;
}

void for_each_shifted_pair(
    const AnsatzCircuit& circuit, const Eigen::Ref<const Eigen::VectorXd>& theta,
    BasisBits initial_bits,
    const std::function<void(int, const StateVector&, const StateVector&)>& visit) {
  check_theta(circuit, theta.size());
  const auto& gates = circuit.gates();

  // prefix[l] is the state right before the gate owning parameter l.
  std::vector<StateVector> prefix(static_cast<std::size_t>(circuit.parameter_count()));
  std::vector<std::size_t> position(prefix.size());
  StateVector state = basis_state(circuit.num_qubits(), initial_bits);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    if (g.param >= 0) {
      prefix[static_cast<std::size_t>(g.param)] = state;
      position[static_cast<std::size_t>(g.param)] = i;
    }
    apply_gate(state, g, g.param >= 0 ? theta(g.param) : 0.0);
  }

  constexpr double kShift = std::numbers::pi / 2;
  StateVector plus, minus;
  for (std::size_t l = 0; l < prefix.size(); ++l) {
    const auto start = position[l];
    plus = prefix[l];
    minus = prefix[l];
    apply_gate(plus, gates[start], theta(static_cast<Eigen::Index>(l)) + kShift);
    apply_gate(minus, gates[start], theta(static_cast<Eigen::Index>(l)) - kShift);
    for (std::size_t i = start + 1; i < gates.size(); ++i) {
      const double angle = gates[i].param >= 0 ? theta(gates[i].param) : 0.0;
      apply_gate(plus, gates[i], angle);
      apply_gate(minus, gates[i], angle);
    }
    visit(static_cast<int>(l), plus, minus);
  }
}

double param_shift_derivative(const AnsatzCircuit& circuit,
                              const Eigen::Ref<const Eigen::VectorXd>& theta,
                              int param, const PauliString& p,
                              BasisBits initial_bits) {
  check_theta(circuit, theta.size());
  if (param < 0 || param >= circuit.parameter_count()) {
    throw Error(ErrorKind::InvalidArgument,
                "parameter index " + std::to_string(param) + " out of range");
  }
  Eigen::VectorXd shifted = theta;
  shifted(param) = theta(param) + std::numbers::pi / 2;
  const double up = expectation(p, build_ansatz_state(circuit, shifted, initial_bits)).real();
  shifted(param) = theta(param) - std::numbers::pi / 2;
  const double down = expectation(p, build_ansatz_state(circuit, shifted, initial_bits)).real();
  return 0.5 * (up - down);
}

Eigen::VectorXd energy_gradient(const AnsatzCircuit& circuit,
                                const Eigen::Ref<const Eigen::VectorXd>& theta,
                                const PauliSum& h, BasisBits initial_bits) {
  Eigen::VectorXd grad(circuit.parameter_count());
  for_each_shifted_pair(circuit, theta, initial_bits,
                        [&](int l, const StateVector& plus, const StateVector& minus) {
                          grad(l) = 0.5 * (expectation(h, plus).real() -
                                           expectation(h, minus).real());
                        });
  return grad;
}

}  // namespace covar
