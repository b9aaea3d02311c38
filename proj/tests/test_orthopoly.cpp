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
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "edgegap/error.hpp"
#include "edgegap/orthopoly.hpp"
#include "edgegap/quadrature.hpp"
#include "oracles.hpp"

using namespace edgegap;
using namespace edgegap::specfun;

TEST_CASE("Jacobi P_j^{(a,0)}(-1) = (-1)^j") {
  const auto fam = PolyFamily::jacobi(2.5, 0.0);
  for (int j = 0; j <= 10; ++j) CHECK(ortho_eval(fam, j, -1.0).value == doctest::Approx(j % 2 ? -1.0 : 1.0).epsilon(1e-13));
}

TEST_CASE("Laguerre L_n^0(0) = 1") {
  const auto fam = PolyFamily::laguerre(0.0);
  for (int n = 0; n <= 10; ++n) CHECK(ortho_eval(fam, n, 0.0).value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Hermite H_3(1) = -4") {
  CHECK(ortho_eval(PolyFamily::hermite(), 3, 1.0).value == doctest::Approx(-4.0).epsilon(1e-15));
  // H_3 = 8x^3 - 12x, H_3' = 24x^2 - 12
  CHECK(ortho_eval(PolyFamily::hermite(), 3, 0.7).derivative == doctest::Approx(24 * 0.49 - 12).epsilon(1e-14));
}

TEST_CASE("norms of the lowest polynomials") {
  CHECK(ortho_norm(PolyFamily::laguerre(0.0), 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ortho_norm(PolyFamily::hermite(), 0) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("n = 5 norms match quadrature of the defining integral") {
  auto check = [](const PolyFamily& fam, double lo, double hi, bool singular) {
    auto f = [&](double x) {
      const double p = ortho_eval(fam, 5, x).value;
      return fam.weight(x) * p * p;
    };
    const double ref = singular ? oracle::integrate_singular(f, lo, hi) : oracle::integrate(f, lo, hi);
    CHECK(ortho_norm(fam, 5) == doctest::Approx(ref).epsilon(1e-10));
  };
  check(PolyFamily::hermite(), -12.0, 12.0, false);
  check(PolyFamily::laguerre(0.0), 0.0, 120.0, false);
  check(PolyFamily::laguerre(1.5), 0.0, 120.0, false);
  check(PolyFamily::jacobi(0.0, 0.0), -1.0, 1.0, false);
  check(PolyFamily::jacobi(2.5, 0.0), -1.0, 1.0, true);
}

TEST_CASE("Jacobi norms match the Gamma-function closed form") {
  auto closed = [](double a, double b, int n) {
    return std::exp((a + b + 1) * std::log(2.0) - std::log(2.0 * n + a + b + 1) + std::lgamma(n + a + 1) + std::lgamma(n + b + 1) -
                    std::lgamma(n + 1.0) - std::lgamma(n + a + b + 1));
  };
  for (auto [a, b] : {std::pair{-0.5, 1.0}, {0.0, 0.0}, {2.5, 0.0}, {1.0, 3.0}})
    for (int n : {1, 5, 12}) CHECK(ortho_norm(PolyFamily::jacobi(a, b), n) == doctest::Approx(closed(a, b, n)).epsilon(1e-12));
}

TEST_CASE("invalid family parameters") {
  CHECK_THROWS_AS(PolyFamily::laguerre(-1.0), InvalidParameter);
  CHECK_THROWS_AS(PolyFamily::jacobi(-1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(PolyFamily::jacobi(0.0, -1.5), InvalidParameter);
}

TEST_CASE("three-term recurrence residual of the orthonormal polynomials") {
  struct Case {
    PolyFamily fam;
    double lo, hi;
  };
  const std::vector<Case> cases{{PolyFamily::hermite(), -3.0, 3.0},
                                {PolyFamily::laguerre(0.0), 0.0, 10.0},
                                {PolyFamily::laguerre(2.0), 0.0, 10.0},
                                {PolyFamily::jacobi(1.0, 0.0), -1.0, 1.0},
                                {PolyFamily::jacobi(2.5, 0.5), -1.0, 1.0}};
  constexpr int n_max = 50;
  for (const auto& c : cases) {
    for (double x : oracle::uniform_points(10, c.lo, c.hi, 11)) {
      std::vector<double> q(n_max + 2), d(n_max + 2);
      orthonormal_polynomials(c.fam, n_max + 1, x, q, d);
      for (int j = 1; j <= n_max; ++j) {
        const double lhs = x * q[j];
        const double rhs = c.fam.beta(j + 1) * q[j + 1] + c.fam.alpha(j) * q[j] + c.fam.beta(j) * q[j - 1];
        const double scale = std::abs(x * q[j]) + std::abs(c.fam.beta(j + 1) * q[j + 1]) + std::abs(c.fam.beta(j) * q[j - 1]);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("ortho_eval derivative against central differences") {
  const double h = 1e-5;
  for (const auto& fam : {PolyFamily::hermite(), PolyFamily::laguerre(0.5), PolyFamily::jacobi(1.0, 0.0)}) {
    for (int n : {1, 4, 9}) {
      for (double x : {-0.6, 0.2, 0.85}) {
        const double xx = fam.family() == Family::Laguerre ? x + 1.0 : x;
        const double fd = (ortho_eval(fam, n, xx + h).value - ortho_eval(fam, n, xx - h).value) / (2 * h);
        const double d = ortho_eval(fam, n, xx).derivative;
        CHECK(std::abs(fd - d) <= 1e-6 * std::max(1.0, std::abs(d)));
      }
    }
  }
}

TEST_CASE("orthonormal functions are orthonormal (Laguerre, N = 30)") {
  const auto fam = PolyFamily::laguerre(0.0);
  const auto rule = quad::gauss_legendre(0.0, 200.0, 400);
  constexpr int n = 30;
  std::vector<std::vector<double>> phi(rule.size(), std::vector<double>(n + 1));
  for (std::size_t i = 0; i < rule.size(); ++i) phi[i] = orthonormal_table(fam, n, rule.nodes[i]).value;
  for (int j = 0; j <= n; j += 3)
    for (int k = j; k <= n; k += 4) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * phi[i][j] * phi[i][k];
      CHECK(s == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("scaled recurrence stays finite at the soft edge of L_N") {
  const auto fam = PolyFamily::laguerre(0.0);
  for (int N : {100, 400, 1600}) {
    const double x = 4.0 * N;
    const auto t = orthonormal_table(fam, N, x);
    CHECK(std::isfinite(t.value[N]));
    CHECK(std::isfinite(t.deriv[N]));
    // |phi_N(4N)| ~ (2N)^{-1/3} Ai(0)
    CHECK(std::abs(t.value[N]) * std::cbrt(2.0 * N) == doctest::Approx(0.355028053887817).epsilon(0.1));
  }
}

TEST_CASE("monic norm and leading coefficient are consistent") {
  for (const auto& fam : {PolyFamily::hermite(), PolyFamily::laguerre(1.0), PolyFamily::jacobi(0.5, 0.0)})
    for (int n : {0, 3, 7}) {
      const double k = leading_coefficient(fam, n);
      CHECK(monic_norm(fam, n) == doctest::Approx(ortho_norm(fam, n) / (k * k)).epsilon(1e-13));
    }
}
