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
#include "covar/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

namespace covar {

int qubits_for_dimension(Eigen::Index dim) {
  if (dim <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw Error(ErrorKind::Dimension,
                "state length " + std::to_string(dim) + " is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

namespace {

std::uint64_t qubit_mask(int num_qubits) {
  return num_qubits >= 64 ? ~std::uint64_t{0}
                          : (std::uint64_t{1} << num_qubits) - 1;
}

void check_qubit(int num_qubits, int qubit) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw Error(ErrorKind::Dimension, "qubit index " + std::to_string(qubit) +
                                          " out of range for " +
                                          std::to_string(num_qubits) + " qubits");
  }
}

}  // namespace

PauliString::PauliString(int num_qubits) : PauliString(num_qubits, 0, 0) {}

PauliString::PauliString(int num_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : num_qubits_(num_qubits), x_(x_mask), z_(z_mask) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) {
    throw Error(ErrorKind::Dimension,
                "unsupported qubit count " + std::to_string(num_qubits));
  }
  if (((x_ | z_) & ~qubit_mask(num_qubits)) != 0) {
    throw Error(ErrorKind::Dimension, "Pauli mask exceeds qubit count");
  }
}

PauliString PauliString::from_word(std::string_view word) {
  PauliString p(static_cast<int>(word.size()));
  for (std::size_t q = 0; q < word.size(); ++q) {
    p.set_letter(static_cast<int>(q), word[q]);
  }
  return p;
}

PauliString PauliString::single(int num_qubits, int qubit, char letter) {
  PauliString p(num_qubits);
  p.set_letter(qubit, letter);
  return p;
}

char PauliString::letter(int qubit) const {
  check_qubit(num_qubits_, qubit);
  const bool x = (x_ >> qubit) & 1;
  const bool z = (z_ >> qubit) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set_letter(int qubit, char letter) {
  check_qubit(num_qubits_, qubit);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  switch (letter) {
    case 'I': break;
    case 'X': x_ |= bit; break;
    case 'Y': x_ |= bit; z_ |= bit; break;
    case 'Z': z_ |= bit; break;
    default:
      throw Error(ErrorKind::Parse,
                  std::string("invalid Pauli letter '") + letter + "'");
  }
}

std::string PauliString::word() const {
  std::string w(static_cast<std::size_t>(num_qubits_), 'I');
  for (int q = 0; q < num_qubits_; ++q) w[static_cast<std::size_t>(q)] = letter(q);
  return w;
}

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

PauliProduct pauli_multiply(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw Error(ErrorKind::Dimension, "Pauli strings of lengths " +
                                          std::to_string(p.num_qubits()) + " and " +
                                          std::to_string(q.num_qubits()));
  }
  // (X^a Z^b)(X^c Z^d) = (-1)^{|b&c|} X^{a^c} Z^{b^d}, plus the Y phases.
  PauliString r(p.num_qubits(), p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask());
  const int swaps = std::popcount(p.z_mask() & q.x_mask());
  const int k = p.num_y() + q.num_y() - r.num_y() + 2 * swaps;
  return {i_power(k), r};
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(int num_qubits) : num_qubits_(num_qubits) {}

PauliSum::PauliSum(int num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  canonicalize();
}

PauliSum::PauliSum(const PauliString& string, Complex coefficient)
    : num_qubits_(string.num_qubits()), terms_{{coefficient, string}} {
  canonicalize();
}

void PauliSum::canonicalize() {
  std::map<PauliString, Complex> merged;
  for (const auto& t : terms_) {
    if (t.string.num_qubits() != num_qubits_) {
      throw Error(ErrorKind::Dimension,
                  "term " + t.string.word() + " does not act on " +
                      std::to_string(num_qubits_) + " qubits");
    }
    if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag())) {
      throw Error(ErrorKind::InvalidArgument,
                  "non-finite coefficient on " + t.string.word());
    }
    merged[t.string] += t.coefficient;
  }
  terms_.clear();
  for (const auto& [s, c] : merged) {
    if (std::abs(c) >= kDropTolerance) terms_.push_back({c, s});
  }
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliTerm& t) {
    return std::abs(t.coefficient.imag()) <= tol;
  });
}

bool PauliSum::is_diagonal() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PauliTerm& t) { return t.string.is_diagonal(); });
}

Complex PauliSum::coefficient(const PauliString& string) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), string,
      [](const PauliTerm& t, const PauliString& s) { return t.string < s; });
  if (it != terms_.end() && it->string == string) return it->coefficient;
  return {0, 0};
}

double PauliSum::one_norm() const {
  double acc = 0;
  for (const auto& t : terms_) acc += std::abs(t.coefficient);
  return acc;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (terms_.empty() && num_qubits_ == 0) num_qubits_ = other.num_qubits_;
  if (other.num_qubits_ != num_qubits_ && !other.terms_.empty()) {
    throw Error(ErrorKind::Dimension, "adding Pauli sums on different qubit counts");
  }
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  return *this += Complex(-1.0) * other;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto& t : terms_) t.coefficient *= scale;
  canonicalize();
  return *this;
}

PauliSum multiply(const PauliString& p, const PauliSum& h) {
  std::vector<PauliTerm> terms;
  terms.reserve(h.size());
  for (const auto& t : h.terms()) {
    const auto prod = pauli_multiply(p, t.string);
    terms.push_back({prod.phase * t.coefficient, prod.string});
  }
  return PauliSum(p.num_qubits(), std::move(terms));
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw Error(ErrorKind::Dimension, "multiplying Pauli sums on different qubit counts");
  }
  std::vector<PauliTerm> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      const auto prod = pauli_multiply(ta.string, tb.string);
      terms.push_back({prod.phase * ta.coefficient * tb.coefficient, prod.string});
    }
  }
  return PauliSum(a.num_qubits(), std::move(terms));
}

void require_hermitian(const PauliSum& h, std::string_view what) {
  if (!h.is_hermitian()) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " must have real coefficients");
  }
}

// ---------------------------------------------------------------------------

Eigen::MatrixXcd to_dense(const PauliString& p) {
  return to_dense(PauliSum(p));
}

Eigen::MatrixXcd to_dense(const PauliSum& h) {
  if (h.num_qubits() > 14) {
    throw Error(ErrorKind::Capacity, "dense form limited to 14 qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << h.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms()) {
    const Complex c = t.coefficient * i_power(t.string.num_y());
    for (std::uint64_t b = 0; b < dim; ++b) {
      const Complex v = (std::popcount(b & t.string.z_mask()) & 1) ? -c : c;
      m(static_cast<Eigen::Index>(b ^ t.string.x_mask()),
        static_cast<Eigen::Index>(b)) += v;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

std::string to_text(const PauliSum& h) {
  std::string out;
  char buf[64];
  for (const auto& t : h.terms()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", t.coefficient.real(),
                  t.coefficient.imag());
    out += buf;
    out += t.string.word();
    out += '\n';
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view next_token(std::string_view& s) {
  s = trim(s);
  const auto end = s.find_first_of(" \t");
  auto tok = s.substr(0, end);
  s = end == std::string_view::npos ? std::string_view{} : s.substr(end);
  return tok;
}

double parse_double(std::string_view tok, std::size_t line_no) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) +
                                      ": bad coefficient '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

PauliSum parse_pauli_sum(std::string_view text) {
  std::vector<PauliTerm> terms;
  int num_qubits = -1;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const double re = parse_double(next_token(line), line_no);
    const double im = parse_double(next_token(line), line_no);
    const auto word = next_token(line);
    if (word.empty() || !trim(line).empty()) {
      throw Error(ErrorKind::Parse,
                  "line " + std::to_string(line_no) + ": expected '<re> <im> <word>'");
    }
    auto p = PauliString::from_word(word);
    if (num_qubits < 0) num_qubits = p.num_qubits();
    if (p.num_qubits() != num_qubits) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) +
                                        ": word length differs from earlier terms");
    }
    terms.push_back({{re, im}, p});
  }
  if (num_qubits < 0) throw Error(ErrorKind::Parse, "no Pauli terms found");
  return PauliSum(num_qubits, std::move(terms));
}

}  // namespace covar
