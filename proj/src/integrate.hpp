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

// Internal quadrature helpers shared by the library sources.

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace edgegap::detail {

// Integrate f over [lo, hi] in panels no wider than `panel`, each by a
// shallow adaptive Gauss-Kronrod rule.
template <typename F>
double panel_integral(F&& f, double lo, double hi, double panel, double tol = 1e-15) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  if (hi <= lo) return 0.0;
  const int n = static_cast<int>(std::ceil((hi - lo) / panel));
  const double h = (hi - lo) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = lo + i * h;
    const double b = (i + 1 == n) ? hi : a + h;
    sum += Kronrod::integrate(f, a, b, 8, tol);
  }
  return sum;
}

// Double-exponential quadrature for integrands with end-point singularities.
template <typename F>
double endpoint_integral(F&& f, double lo, double hi, double tol = 1e-14) {
  if (hi <= lo) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> rule(12);
  return rule.integrate(f, lo, hi, tol);
}

}  // namespace edgegap::detail
