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

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace covar {

enum class ErrorKind {
  Dimension,
  InvalidArgument,
  IllConditioned,
  Divergence,
  Capacity,
  NotSolvable,
  Enumeration,
  Parse,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::IllConditioned: return "ill_conditioned";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::NotSolvable: return "not_solvable";
    case ErrorKind::Enumeration: return "enumeration";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

/// Base exception for every failure raised by the library. The kind is
/// stable and is what the CLI reports in its machine-readable error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an iterative solver produces non-finite parameters. Carries
/// the last parameter vector that was still finite.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, Eigen::VectorXd last_finite)
      : Error(ErrorKind::Divergence, what),
        last_finite_(std::move(last_finite)) {}

  const Eigen::VectorXd& last_finite_theta() const noexcept {
    return last_finite_;
  }

 private:
  Eigen::VectorXd last_finite_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace covar
