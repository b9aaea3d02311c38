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

// Special functions needed by the edge kernels: Airy Ai, Bessel J of real
// order, and their incomplete integrals.  All functions are pure and
// thread-safe.

namespace edgegap::specfun {

struct ValueDeriv {
  double value;
  double derivative;
};

/// Ai(x) and Ai'(x).
ValueDeriv airy_ai(double x);

/// Integral of Ai over (-inf, x].  Tends to 1 as x -> +inf and to 0
/// (oscillating) as x -> -inf.
double airy_tail_integral(double x);

/// J_a(x) and J_a'(x) for a > -1, x >= 0.  Throws InvalidParameter when
/// a <= -1 and DomainError when x < 0.
ValueDeriv bessel_j(double order, double x);

/// Integral of J_a over [y, inf), i.e. 1 - int_0^y J_a.
double bessel_tail_integral(double order, double y);

/// Integral of J_a over [0, y].
double bessel_integral(double order, double y);

double log_gamma(double x);

}  // namespace edgegap::specfun
