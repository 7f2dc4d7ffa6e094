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

#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Core>

#include "covar/pauli.hpp"

namespace covar {

struct MorphSchedule;

/// Dense diagonalization is limited to this many qubits.
inline constexpr int kMaxDenseQubits = 14;

struct Spectrum {
  Eigen::VectorXd eigenvalues;                 // ascending
  std::optional<Eigen::MatrixXcd> eigenvectors;  // column k pairs with eigenvalue k

  Eigen::Index size() const noexcept { return eigenvalues.size(); }
};

/// Full real spectrum of a Hermitian Pauli sum. Diagonal inputs are sorted
/// directly (stable, so equal energies keep basis-index order).
Spectrum diagonalize(const PauliSum& h, bool with_vectors = false);

/// <b|h|b> for every basis state b of a diagonal Hamiltonian.
Eigen::VectorXd diagonal_energies(const PauliSum& h);

struct GapReport {
  double g_min = 0.0;
  double s_at_min = 0.0;
  /// max over s of |<psi_1(s)| dH/ds |psi_0(s)>|
  double epsilon_transition = 0.0;
  /// epsilon_transition / g_min^2; +inf when the ground state is degenerate.
  double T_bound = 0.0;
  bool degenerate = false;
};

/// Scans s over `grid_points` uniform points of [0, 1].
GapReport gap_and_epsilon(const MorphSchedule& schedule, int grid_points = 201);

/// Full spectrum at each grid point, for plotting.
struct SpectrumScan {
  std::vector<double> s;
  std::vector<Eigen::VectorXd> eigenvalues;
};

SpectrumScan spectrum_scan(const MorphSchedule& schedule, int grid_points = 201);
void write_spectrum_csv(std::ostream& out, const SpectrumScan& scan);

/// Index of the eigenvalue closest to `energy`; the lower index wins ties.
int level_index(double energy, const Spectrum& spectrum);

/// <H^2> - <H>^2 via two matrix-free applications, clipped at zero.
double energy_variance(const PauliSum& h, const StateVector& state);

}  // namespace covar
