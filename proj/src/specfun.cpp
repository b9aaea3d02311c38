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
#include "edgegap/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "edgegap/error.hpp"
#include "integrate.hpp"

namespace edgegap::specfun {
namespace {

using detail::panel_integral;

void check_order(double order) {
  if (!(order > -1.0) || !std::isfinite(order)) {
    throw InvalidParameter("Bessel order must exceed -1, got " + std::to_string(order));
  }
}

// int_0^y J_a(t) dt by the termwise-integrated ascending series.  Used for
// small y where the alternating terms do not cancel badly.
double bessel_integral_series(double a, double y) {
  if (y == 0.0) return 0.0;
  const double h = 0.5 * y;
  const double h2 = h * h;
  // c_0 = 2 (y/2)^(a+1) / ((a+1) Gamma(a+1))
  double c = 2.0 * std::exp((a + 1.0) * std::log(h) - std::lgamma(a + 1.0)) / (a + 1.0);
  double sum = c;
  for (int k = 0; k < 200; ++k) {
    c *= -h2 / ((k + 1.0) * (k + a + 1.0)) * (2.0 * k + a + 1.0) / (2.0 * k + a + 3.0);
    sum += c;
    if (std::abs(c) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

constexpr double kBesselSeriesLimit = 6.0;

// int_y^inf J_a from the Hankel expansion
//   J_a(t) = Re sqrt(2 / (pi t)) e^{i (t - a pi/2 - pi/4)} sum_k i^k c_k t^{-k},
// each term integrated by the expansion
//   int_y^inf e^{it} t^{-m} dt = i e^{iy} y^{-m} sum_j (-i)^j (m)_j y^{-j}.
// Both sums are cut at their smallest term.
double bessel_tail_asymptotic(double a, double y) {
  using C = std::complex<double>;
  const C I(0.0, 1.0);
  const double mu = 4.0 * a * a;
  C total = 0.0;
  double c = 1.0;
  C ik = 1.0;
  double prev_k = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      c *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0);
      ik *= I;
    }
    const double m = k + 0.5;
    C inner = 0.0;
    double poch = 1.0;
    C ij = 1.0;
    double prev_j = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 60; ++j) {
      if (j > 0) {
        poch *= (m + j - 1.0) / y;
        ij *= -I;
      }
      if (std::abs(poch) > prev_j) break;
      prev_j = std::abs(poch);
      inner += ij * poch;
      if (std::abs(poch) < 1e-17) break;
    }
    const double mag = std::abs(c) * std::pow(y, -m);
    if (mag > prev_k) break;
    prev_k = mag;
    total += ik * c * std::pow(y, -m) * inner;
    if (mag < 1e-17 * std::pow(y, -0.5)) break;
  }
  const double phase = y - 0.5 * a * std::numbers::pi - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / std::numbers::pi) * std::real(I * std::exp(I * phase) * total);
}

double bessel_asymptotic_limit(double a) { return 40.0 + 2.0 * a * a; }

}  // namespace

ValueDeriv airy_ai(double x) {
  if (std::isnan(x)) return {x, x};
  if (x > 100.0) return {0.0, -0.0};
  return {boost::math::airy_ai(x), boost::math::airy_ai_prime(x)};
}

double airy_tail_integral(double x) {
  if (std::isnan(x)) return x;
  auto ai = [](double t) { return boost::math::airy_ai(t); };
  if (x >= 0.0) {
    if (x > 40.0) return 1.0;
    // Ai(x + 20) is below 1e-26 for x >= 0.
    return 1.0 - panel_integral(ai, x, x + 20.0, 4.0, 1e-13);
  }
  // int_{-inf}^0 Ai = 2/3
  return 2.0 / 3.0 - panel_integral(ai, x, 0.0, 1.0, 1e-13);
}

ValueDeriv bessel_j(double order, double x) {
  check_order(order);
  if (!(x >= 0.0)) throw DomainError("Bessel argument must be non-negative, got " + std::to_string(x));
  if (x == 0.0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double value = order == 0.0 ? 1.0 : (order > 0.0 ? 0.0 : inf);
    double deriv = 0.0;
    if (order == 1.0) deriv = 0.5;
    else if (order > 0.0 && order < 1.0) deriv = inf;
    else if (order < 0.0) deriv = -inf;
    return {value, deriv};
  }
  return {boost::math::cyl_bessel_j(order, x), boost::math::cyl_bessel_j_prime(order, x)};
}

double bessel_integral(double order, double y) {
  check_order(order);
  if (!(y >= 0.0)) throw DomainError("Bessel integral limit must be non-negative, got " + std::to_string(y));
  if (y <= kBesselSeriesLimit) return bessel_integral_series(order, y);
  if (y >= bessel_asymptotic_limit(order)) return 1.0 - bessel_tail_asymptotic(order, y);
  auto j = [order](double t) { return boost::math::cyl_bessel_j(order, t); };
  return bessel_integral_series(order, kBesselSeriesLimit) +
         panel_integral(j, kBesselSeriesLimit, y, std::numbers::pi);
}

double bessel_tail_integral(double order, double y) {
  check_order(order);
  if (y >= bessel_asymptotic_limit(order)) return bessel_tail_asymptotic(order, y);
  // int_0^inf J_a = 1 for every a > -1
  return 1.0 - bessel_integral(order, y);
}

double log_gamma(double x) { return std::lgamma(x); }

}  // namespace edgegap::specfun
