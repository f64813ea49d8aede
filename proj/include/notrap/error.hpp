// Copyright 2026 The NOTraP Authors
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

namespace notrap {

/** Base class for all errors raised by the library. */
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands disagree on qubit count or dimension.
class SizeMismatch : public Error {
  public:
    using Error::Error;
};

/// A documented precondition on an argument does not hold.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Dense paths refuse to run above their qubit guard.
class SizeGuardExceeded : public Error {
  public:
    using Error::Error;
};

/// An iterative routine hit its iteration cap before reaching tolerance.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Linear system in the extrapolation is singular or too ill-conditioned.
class SingularSystem : public Error {
  public:
    SingularSystem(const std::string &what, double condition)
        : Error(what), condition_(condition) {}
    [[nodiscard]] double condition() const noexcept { return condition_; }

  private:
    double condition_;
};

/// Extrapolation error alone already exhausts the error budget.
class InfeasibleBudget : public Error {
  public:
    InfeasibleBudget(const std::string &what, double eps_extrap)
        : Error(what), eps_extrap_(eps_extrap) {}
    [[nodiscard]] double eps_extrap() const noexcept { return eps_extrap_; }

  private:
    double eps_extrap_;
};

/// Malformed text input (operator files, model files, amplitude files).
class ParseError : public Error {
  public:
    using Error::Error;
};

namespace detail {
template <class E = InvalidArgument>
inline void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw E(msg);
    }
}
} // namespace detail

} // namespace notrap
