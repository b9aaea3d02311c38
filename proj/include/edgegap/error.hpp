/*
 *   Copyright (c) 2026, The edgegap authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace edgegap {

/// Raised when a parameter violates a documented precondition
/// (order <= -1, m < 4, xi outside [0,1], ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an evaluation point lies outside a kernel's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A kernel produced a non-finite value at a quadrature node.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double x, double y)
      : std::runtime_error(what + " at (" + std::to_string(x) + ", " + std::to_string(y) + ")"),
        x_(x),
        y_(y) {}
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double x_;
  double y_;
};

/// I - xi K is numerically singular; carries the smallest LU pivot.
class SingularOperator : public std::runtime_error {
 public:
  SingularOperator(const std::string& what, double pivot)
      : std::runtime_error(what + " (smallest pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}
  double smallest_pivot() const noexcept { return pivot_; }

 private:
  double pivot_;
};

/// Polynomial fit in (1 - xi) did not reproduce the generating function.
class IllConditionedFit : public std::runtime_error {
 public:
  IllConditionedFit(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace edgegap
