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
#include "covar/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Eigenvalues>

#include "covar/adiabatic.hpp"

namespace covar {

Eigen::VectorXd diagonal_energies(const PauliSum& h) {
  require(h.is_diagonal(), ErrorKind::InvalidArgument, "Hamiltonian is not diagonal");
  require(h.num_qubits() >= 1 && h.num_qubits() <= 30, ErrorKind::Capacity,
          "diagonal enumeration limited to 30 qubits");
  const std::uint64_t dim = std::uint64_t{1} << h.num_qubits();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms()) {
    const double c = t.coefficient.real();
    const std::uint64_t z = t.string.z_mask();
    for (std::uint64_t b = 0; b < dim; ++b) {
      out(static_cast<Eigen::Index>(b)) += (std::popcount(b & z) & 1) ? -c : c;
    }
  }
  return out;
}

Spectrum diagonalize(const PauliSum& h, bool with_vectors) {
  if (h.num_qubits() > kMaxDenseQubits) {
    throw Error(ErrorKind::Capacity, "dense diagonalization limited to " +
                                         std::to_string(kMaxDenseQubits) + " qubits, got " +
                                         std::to_string(h.num_qubits()));
  }
  require(h.num_qubits() >= 1, ErrorKind::InvalidArgument, "Hamiltonian has no qubits");
  require_hermitian(h, "diagonalized Hamiltonian");

  Spectrum out;
  if (h.is_diagonal()) {
    // Diagonal Hamiltonians skip the dense solver.
    const Eigen::VectorXd diag = diagonal_energies(h);
    const Eigen::Index dim = diag.size();
    std::vector<std::pair<double, Eigen::Index>> entries(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) entries[static_cast<std::size_t>(i)] = {diag(i), i};
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    out.eigenvalues.resize(dim);
    Eigen::MatrixXcd vectors;
    if (with_vectors) vectors = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      out.eigenvalues(k) = entries[static_cast<std::size_t>(k)].first;
      if (with_vectors) vectors(entries[static_cast<std::size_t>(k)].second, k) = 1.0;
    }
    if (with_vectors) out.eigenvectors = std::move(vectors);
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      to_dense(h), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::IllConditioned, "dense eigensolver did not converge");
  }
  out.eigenvalues = solver.eigenvalues();
  if (with_vectors) out.eigenvectors = solver.eigenvectors();
  return out;
}

namespace {

std::vector<double> uniform_grid(int grid_points) {
  require(grid_points >= 2, ErrorKind::InvalidArgument, "gap scan needs at least 2 points");
  std::vector<double> s(static_cast<std::size_t>(grid_points));
  for (int j = 0; j < grid_points; ++j) {
    s[static_cast<std::size_t>(j)] = static_cast<double>(j) / (grid_points - 1);
  }
  return s;
}

}  // namespace

GapReport gap_and_epsilon(const MorphSchedule& schedule, int grid_points) {
  const auto grid = uniform_grid(grid_points);
  const PauliSum derivative = morph_derivative(schedule);
  require(schedule.num_qubits() >= 1, ErrorKind::InvalidArgument, "empty schedule");

  GapReport report;
  report.g_min = std::numeric_limits<double>::infinity();
  for (double s : grid) {
    const Spectrum spec = diagonalize(morph_hamiltonian(schedule, s), true);
    const double gap = spec.eigenvalues(1) - spec.eigenvalues(0);
    const StateVector ground = spec.eigenvectors->col(0);
    const StateVector first = spec.eigenvectors->col(1);
    const double amplitude = std::abs(first.dot(apply_pauli_sum(derivative, ground)));
    report.epsilon_transition = std::max(report.epsilon_transition, amplitude);
    if (gap < report.g_min) {
      report.g_min = gap;
      report.s_at_min = s;
    }
  }
  if (report.g_min < 1e-12) {
    report.g_min = 0.0;
    report.degenerate = true;
    report.T_bound = std::numeric_limits<double>::infinity();
  } else {
    report.T_bound = report.epsilon_transition / (report.g_min * report.g_min);
  }
  return report;
}

SpectrumScan spectrum_scan(const MorphSchedule& schedule, int grid_points) {
  SpectrumScan scan;
  scan.s = uniform_grid(grid_points);
  for (double s : scan.s) {
    scan.eigenvalues.push_back(diagonalize(morph_hamiltonian(schedule, s)).eigenvalues);
  }
  return scan;
}

void write_spectrum_csv(std::ostream& out, const SpectrumScan& scan) {
  const Eigen::Index levels = scan.eigenvalues.empty() ? 0 : scan.eigenvalues.front().size();
  out << "s";
  for (Eigen::Index k = 0; k < levels; ++k) out << ",E_" << k;
  out << '\n';
  char buf[32];
  for (std::size_t j = 0; j < scan.s.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", scan.s[j]);
    out << buf;
    for (Eigen::Index k = 0; k < levels; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", scan.eigenvalues[j](k));
      out << ',' << buf;
    }
    out << '\n';
  }
}

int level_index(double energy, const Spectrum& spectrum) {
  require(spectrum.size() > 0, ErrorKind::InvalidArgument, "empty spectrum");
  Eigen::Index best = 0;
  double best_distance = std::abs(spectrum.eigenvalues(0) - energy);
  for (Eigen::Index k = 1; k < spectrum.size(); ++k) {
    const double d = std::abs(spectrum.eigenvalues(k) - energy);
    if (d < best_distance) {
      best = k;
      best_distance = d;
    }
  }
  return static_cast<int>(best);
}

double energy_variance(const PauliSum& h, const StateVector& state) {
  const StateVector h_state = apply_pauli_sum(h, state);
  const double mean = state.dot(h_state).real();
  return std::max(0.0, h_state.squaredNorm() - mean * mean);
}

}  // namespace covar
