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
#include "covar/models.hpp"

#include <cmath>
#include <random>

namespace covar {

namespace {

PauliString pair_string(int n, int a, int b, char la, char lb) {
  PauliString p(n);
  p.set_letter(a, la);
  p.set_letter(b, lb);
  return p;
}

}  // namespace

PauliSum x_mixer(int num_qubits) {
  std::vector<PauliTerm> terms;
  for (int q = 0; q < num_qubits; ++q) {
    terms.push_back({1.0, PauliString::single(num_qubits, q, 'X')});
  }
  return PauliSum(num_qubits, std::move(terms));
}

std::vector<double> spin_ring_fields(const SpinRingSpec& spec) {
  std::vector<double> c = spec.fields;
  if (c.empty()) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    c.resize(static_cast<std::size_t>(spec.num_qubits));
    for (auto& v : c) v = uniform(rng);
  }
  require(static_cast<int>(c.size()) == spec.num_qubits, ErrorKind::InvalidArgument,
          "spin ring needs one field per qubit");
  for (auto& v : c) v *= spec.field_scale;
  return c;
}

ModelInstance build_spin_ring(const SpinRingSpec& spec, double delta_t) {
  const int n = spec.num_qubits;
  require(n >= 3, ErrorKind::InvalidArgument, "spin ring needs at least 3 qubits");
  require(std::isfinite(spec.coupling), ErrorKind::InvalidArgument, "coupling must be finite");
  const auto c = spin_ring_fields(spec);

  std::vector<PauliTerm> onsite;
  for (int i = 0; i < n; ++i) {
    onsite.push_back({c[static_cast<std::size_t>(i)], PauliString::single(n, i, 'Z')});
  }
  std::vector<PauliTerm> coupling;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    for (char l : {'X', 'Y', 'Z'}) coupling.push_back({spec.coupling, pair_string(n, i, j, l, l)});
  }
  ModelInstance out;
  out.schedule.kind = MorphKind::Perturbative;
  out.schedule.h0 = PauliSum(n, std::move(onsite));
  out.schedule.h1 = PauliSum(n, std::move(coupling));
  out.schedule.delta_t = delta_t;
  out.hamiltonian = out.schedule.h0 + out.schedule.h1;
  return out;
}

ModelInstance build_schwinger(const SchwingerSpec& spec, double delta_t) {
  const int n = spec.num_sites;
  require(n >= 2, ErrorKind::InvalidArgument, "Schwinger model needs at least 2 sites");
  const double j = spec.coupling;
  const double w = spec.hopping;
  const double m = spec.mass;
  const double th = spec.theta_angle;
  // Site s (1-based) lives on qubit s - 1.
  auto z = [n](int site) { return PauliString::single(n, site - 1, 'Z'); };

  std::vector<PauliTerm> terms;
  for (int site = 2; site <= n - 1; ++site) {
    for (int l = 1; l <= site; ++l) {
      for (int k = 1; k < l; ++k) {
        terms.push_back({j / 2, pair_string(n, k - 1, l - 1, 'Z', 'Z')});
      }
    }
  }
  for (int site = 1; site <= n - 1; ++site) {
    const double sign = site % 2 == 0 ? 1.0 : -1.0;  // (-1)^n
    const double amp = j / 2 * (w - sign * m / 2 * std::sin(th));
    terms.push_back({amp, pair_string(n, site - 1, site, 'X', 'X')});
    terms.push_back({amp, pair_string(n, site - 1, site, 'Y', 'Y')});
  }
  for (int site = 1; site <= n; ++site) {
    const double sign = site % 2 == 0 ? 1.0 : -1.0;
    terms.push_back({m * std::cos(th) / 2 * sign, z(site)});
  }
  for (int site = 1; site <= n - 1; ++site) {
    if (site % 2 == 0) continue;
    for (int l = 1; l <= site; ++l) terms.push_back({-j / 2, z(l)});
  }

  ModelInstance out;
  out.hamiltonian = PauliSum(n, std::move(terms));
  out.schedule.kind = MorphKind::Mixing;
  out.schedule.h0 = x_mixer(n);
  out.schedule.h1 = out.hamiltonian;
  out.schedule.delta_t = delta_t;
  return out;
}

MaxCutWeights maxcut_weights(const MaxCutSpec& spec) {
  const int n = spec.num_qubits;
  require(n >= 2, ErrorKind::InvalidArgument, "max-cut needs at least 2 qubits");
  const std::size_t num_pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  MaxCutWeights w{spec.node_weights, spec.pair_weights};
  if (w.node.empty()) {
    w.node.resize(static_cast<std::size_t>(n));
    for (auto& v : w.node) v = uniform(rng);
  }
  if (w.pair.empty()) {
    w.pair.resize(num_pairs);
    if (spec.distinct_pair_weights > 0) {
      std::vector<double> distinct(static_cast<std::size_t>(spec.distinct_pair_weights));
      for (auto& v : distinct) v = uniform(rng);
      for (std::size_t e = 0; e < num_pairs; ++e) w.pair[e] = distinct[e % distinct.size()];
    } else {
      for (auto& v : w.pair) v = uniform(rng);
    }
  }
  require(w.node.size() == static_cast<std::size_t>(n), ErrorKind::InvalidArgument,
          "max-cut needs one node weight per qubit");
  require(w.pair.size() == num_pairs, ErrorKind::InvalidArgument,
          "max-cut needs N(N-1)/2 pair weights");
  auto in_range = [](double v) { return v >= 0.0 && v <= 1.0; };
  for (double v : w.node) require(in_range(v), ErrorKind::InvalidArgument, "node weight outside [0, 1]");
  for (double v : w.pair) require(in_range(v), ErrorKind::InvalidArgument, "pair weight outside [0, 1]");
  return w;
}

ModelInstance build_maxcut(const MaxCutSpec& spec, double delta_t) {
  const int n = spec.num_qubits;
  const auto w = maxcut_weights(spec);
  std::vector<PauliTerm> terms;
  for (int i = 0; i < n; ++i) {
    terms.push_back({w.node[static_cast<std::size_t>(i)], PauliString::single(n, i, 'Z')});
  }
  std::size_t e = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      terms.push_back({w.pair[e++], pair_string(n, i, k, 'Z', 'Z')});
    }
  }
  ModelInstance out;
  out.hamiltonian = PauliSum(n, std::move(terms));
  out.schedule.kind = MorphKind::Mixing;
  out.schedule.h0 = x_mixer(n);
  out.schedule.h1 = out.hamiltonian;
  out.schedule.delta_t = delta_t;
  return out;
}

}  // namespace covar
