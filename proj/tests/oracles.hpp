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

// Reference implementations used only by the tests.  They share no code
// with the library: long-double power series, asymptotic expansions and
// Boost adaptive quadrature.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

/// Maclaurin series of Ai and Ai', summed until the terms vanish.
inline std::pair<double, double> airy_series(double xd) {
  const long double x = xd;
  const long double c1 = 0.355028053887817239260063186004183176L;
  const long double c2 = 0.258819403792806798405183560189203963L;
  long double f = 1, g = x, fp = 0, gp = 1;
  long double tf = 1, tg = x;
  for (int k = 1; k < 400; ++k) {
    tf *= x * x * x / ((3.0L * k - 1) * (3.0L * k));
    tg *= x * x * x / ((3.0L * k) * (3.0L * k + 1));
    f += tf;
    g += tg;
    fp += tf * 3 * k / x;
    gp += tg * (3 * k + 1) / x;
    if (std::fabs(tf) + std::fabs(tg) < 1e-30L * (std::fabs(f) + std::fabs(g))) break;
  }
  if (x == 0) fp = 0, gp = 1;
  return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

/// Ascending series of J_a.
inline double bessel_series(double a, double xd) {
  const long double x = xd;
  long double term = std::pow(x / 2, static_cast<long double>(a)) / std::tgamma(static_cast<long double>(a) + 1);
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -(x * x / 4) / (k * (k + a));
    sum += term;
    if (std::fabs(term) < 1e-30L * std::fabs(sum) && k > x) break;
  }
  return static_cast<double>(sum);
}

/// Asymptotic expansions of Ai for |x| >= 6, cut at the smallest term.
inline double airy_asymptotic(double x) {
  const double pi = 3.14159265358979323846;
  const double z = 2.0 / 3.0 * std::pow(std::abs(x), 1.5);
  // u_k = (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k) u_{k-1}
  std::vector<double> u{1.0};
  for (int k = 1; k < 40; ++k) u.push_back(u.back() * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k));
  if (x > 0) {
    double sum = 0.0, prev = INFINITY;
    for (int k = 0; k < 40; ++k) {
      const double t = u[k] / std::pow(z, k);
      if (t > prev) break;
      sum += (k % 2 ? -t : t);
      prev = t;
    }
    return std::exp(-z) / (2.0 * std::sqrt(pi) * std::pow(x, 0.25)) * sum;
  }
  double even = 0.0, odd = 0.0, prev = INFINITY;
  for (int k = 0; k < 40; ++k) {
    const double t = u[k] / std::pow(z, k);
    if (t > prev) break;
    prev = t;
    const double sign = (k / 2) % 2 ? -1.0 : 1.0;
    (k % 2 ? odd : even) += sign * t;
  }
  const double w = z + pi / 4;
  return (std::sin(w) * even - std::cos(w) * odd) / (std::sqrt(pi) * std::pow(-x, 0.25));
}

inline double airy(double x) { return (x >= -9.0 && x <= 6.0) ? airy_series(x).first : airy_asymptotic(x); }

/// Hankel expansion of J_a for large x, cut at the smallest term.
inline double bessel_hankel(double a, double x) {
  const double pi = 3.14159265358979323846;
  const double mu = 4.0 * a * a;
  double P = 0.0, Q = 0.0, c = 1.0, prev = INFINITY;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) c *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    if (std::abs(c) > prev) break;
    prev = std::abs(c);
    const double sign = (k / 2) % 2 ? -1.0 : 1.0;
    (k % 2 ? Q : P) += sign * c;
  }
  const double chi = x - a * pi / 2 - pi / 4;
  return std::sqrt(2.0 / (pi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

inline double bessel(double a, double x) { return x <= 14.0 ? bessel_series(a, x) : bessel_hankel(a, x); }

/// Adaptive Gauss-Kronrod on [lo, hi], split into unit panels.
inline double integrate(const std::function<double(double)>& f, double lo, double hi, double panel = 1.0) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel)));
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = lo + (hi - lo) * i / n, b = lo + (hi - lo) * (i + 1) / n;
    s += GK::integrate(f, a, b, 10, 1e-13);
  }
  return s;
}

/// Double-exponential rule for end-point singularities.
inline double integrate_singular(const std::function<double(double)>& f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, lo, hi, 1e-14);
}

inline std::vector<double> uniform_points(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(g);
  return v;
}

}  // namespace oracle
