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

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "covar/errors.hpp"

namespace covar {

using Complex = std::complex<double>;

template <typename Real>
using StateVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Amplitudes of an N-qubit pure state. Qubit q is bit q of the basis index.
using StateVector = StateVectorT<double>;

/// Number of qubits represented by a state of the given length. Throws a
/// dimension error when the length is not a power of two.
int qubits_for_dimension(Eigen::Index dim);

/// A tensor product of single-qubit Paulis stored as an (x, z) bit pair per
/// qubit: I = (0,0), X = (1,0), Z = (0,1), Y = (1,1). As an operator the
/// string equals i^{|x & z|} X^x Z^z, which makes Y = iXZ on every qubit
/// where both bits are set.
class PauliString {
 public:
  static constexpr int kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(int num_qubits);
  PauliString(int num_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses a word such as "XZI"; letter q acts on qubit q.
  static PauliString from_word(std::string_view word);
  /// Identity everywhere except `letter` on `qubit`.
  static PauliString single(int num_qubits, int qubit, char letter);

  int num_qubits() const noexcept { return num_qubits_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  char letter(int qubit) const;
  void set_letter(int qubit, char letter);

  int weight() const noexcept { return std::popcount(x_ | z_); }
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool is_diagonal() const noexcept { return x_ == 0; }
  /// Number of Y letters; the operator carries the phase i^{num_y}.
  int num_y() const noexcept { return std::popcount(x_ & z_); }

  std::string word() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.num_qubits_ <=> b.num_qubits_; c != 0) return c;
    if (auto c = a.z_ <=> b.z_; c != 0) return c;
    return a.x_ <=> b.x_;
  }

 private:
  int num_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliTerm {
  Complex coefficient;
  PauliString string;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Result of multiplying two Pauli strings: p * q == phase * string.
struct PauliProduct {
  Complex phase;
  PauliString string;
};

PauliProduct pauli_multiply(const PauliString& p, const PauliString& q);

/// i^k for integer k.
Complex i_power(int k);

/// Weighted sum of Pauli strings. Construction canonicalizes: duplicate
/// strings are merged, terms with |coefficient| < kDropTolerance removed,
/// and the remaining terms are ordered by PauliString ordering.
class PauliSum {
 public:
  static constexpr double kDropTolerance = 1e-14;

  PauliSum() = default;
  explicit PauliSum(int num_qubits);
  PauliSum(int num_qubits, std::vector<PauliTerm> terms);
  explicit PauliSum(const PauliString& string, Complex coefficient = 1.0);

  int num_qubits() const noexcept { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// True when every coefficient has |imag| <= tol.
  bool is_hermitian(double tol = 0.0) const;
  bool is_diagonal() const;
  /// Coefficient of `string`, zero when absent.
  Complex coefficient(const PauliString& string) const;
  /// Sum of |coefficient|; bounds the operator norm.
  double one_norm() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(double s, PauliSum a) { return a *= Complex(s); }

  /// Exact term-for-term equality (strings and coefficients).
  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  void canonicalize();

  int num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Operator product p * H expanded into a (generally non-Hermitian) sum.
PauliSum multiply(const PauliString& p, const PauliSum& h);
PauliSum multiply(const PauliSum& a, const PauliSum& b);

/// Throws unless `h` has only real coefficients.
void require_hermitian(const PauliSum& h, std::string_view what);

// ---------------------------------------------------------------------------
// Matrix-free kernels.

namespace detail {
inline void check_dimension(int num_qubits, Eigen::Index size) {
  if (num_qubits >= 62 || size != (Eigen::Index{1} << num_qubits)) {
    throw Error(ErrorKind::Dimension,
                "state of length " + std::to_string(size) +
                    " does not match " + std::to_string(num_qubits) +
                    " qubits");
  }
}

template <typename Real>
inline std::complex<Real> string_phase(const PauliString& p) {
  switch (p.num_y() & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}
}  // namespace detail

/// Writes p|in> into `out` (resized as needed). O(2^N), no dense matrix.
template <typename DerivedIn, typename DerivedOut>
void apply_pauli_string_into(const PauliString& p,
                             const Eigen::MatrixBase<DerivedIn>& in,
                             Eigen::MatrixBase<DerivedOut> const& out_) {
  using Scalar = typename DerivedIn::Scalar;
  using Real = typename Scalar::value_type;
  auto& out = const_cast<Eigen::MatrixBase<DerivedOut>&>(out_);
  detail::check_dimension(p.num_qubits(), in.size());
  out.derived().resize(in.size());
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const Scalar phase = detail::string_phase<Real>(p);
  const auto dim = static_cast<std::uint64_t>(in.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const Scalar v = (std::popcount(b & z) & 1) ? -phase : phase;
    out(static_cast<Eigen::Index>(b ^ x)) = v * in(static_cast<Eigen::Index>(b));
  }
}

template <typename Derived>
StateVectorT<typename Derived::Scalar::value_type> apply_pauli_string(
    const PauliString& p, const Eigen::MatrixBase<Derived>& state) {
  StateVectorT<typename Derived::Scalar::value_type> out;
  apply_pauli_string_into(p, state, out);
  return out;
}

/// <bra| p |ket> without forming p|ket>.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar matrix_element(const Eigen::MatrixBase<DerivedA>& bra,
                                         const PauliString& p,
                                         const Eigen::MatrixBase<DerivedB>& ket) {
  using Scalar = typename DerivedA::Scalar;
  using Real = typename Scalar::value_type;
  detail::check_dimension(p.num_qubits(), bra.size());
  detail::check_dimension(p.num_qubits(), ket.size());
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const auto dim = static_cast<std::uint64_t>(ket.size());
  Scalar acc_even(0), acc_odd(0);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const Scalar term = std::conj(bra(static_cast<Eigen::Index>(b ^ x))) *
                        ket(static_cast<Eigen::Index>(b));
    if (std::popcount(b & z) & 1)
      acc_odd += term;
    else
      acc_even += term;
  }
  return detail::string_phase<Real>(p) * (acc_even - acc_odd);
}

template <typename Derived>
typename Derived::Scalar expectation(const PauliString& p,
                                     const Eigen::MatrixBase<Derived>& state) {
  return matrix_element(state, p, state);
}

/// H|state>, accumulated term by term.
template <typename Derived>
StateVectorT<typename Derived::Scalar::value_type> apply_pauli_sum(
    const PauliSum& h, const Eigen::MatrixBase<Derived>& state) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Scalar::value_type;
  detail::check_dimension(h.num_qubits(), state.size());
  StateVectorT<Real> out = StateVectorT<Real>::Zero(state.size());
  const auto dim = static_cast<std::uint64_t>(state.size());
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.string.x_mask();
    const std::uint64_t z = term.string.z_mask();
    const Scalar c = Scalar(static_cast<Real>(term.coefficient.real()),
                            static_cast<Real>(term.coefficient.imag())) *
                     detail::string_phase<Real>(term.string);
    for (std::uint64_t b = 0; b < dim; ++b) {
      const Scalar v = (std::popcount(b & z) & 1) ? -c : c;
      out(static_cast<Eigen::Index>(b ^ x)) += v * state(static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

/// sum_a h_a <state|P_a|state>.
template <typename Derived>
typename Derived::Scalar expectation(const PauliSum& h,
                                     const Eigen::MatrixBase<Derived>& state) {
  using Scalar = typename Derived::Scalar;
  detail::check_dimension(h.num_qubits(), state.size());
  Scalar acc(0);
  for (const auto& term : h.terms()) {
    acc += Scalar(term.coefficient) * expectation(term.string, state);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Dense forms, used by the exact oracle.

Eigen::MatrixXcd to_dense(const PauliString& p);
Eigen::MatrixXcd to_dense(const PauliSum& h);

// ---------------------------------------------------------------------------
// Text format: one term per line, "<re> <im> <word>". Blank lines and lines
// starting with '#' are ignored when parsing.

std::string to_text(const PauliSum& h);
PauliSum parse_pauli_sum(std::string_view text);

}  // namespace covar
