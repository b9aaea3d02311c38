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
#include <numeric>

#include <boost/math/special_functions/beta.hpp>

#include "edgegap/error.hpp"
#include "edgegap/quadrature.hpp"
#include "oracles.hpp"

using namespace edgegap;
using namespace edgegap::quad;

namespace {
double apply(const QuadratureRule& r, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}
}  // namespace

TEST_CASE("Gauss-Legendre is exact for cubics with m = 4") {
  CHECK(std::abs(apply(gauss_legendre(0.0, 1.0, 4), [](double x) { return x * x * x; }) - 0.25) <= 1e-15);
  // degree 2m - 1 = 39
  CHECK(apply(gauss_legendre(-1.0, 2.0, 20), [](double x) { return std::pow(x, 39); }) ==
        doctest::Approx((std::pow(2.0, 40) - 1.0) / 40.0).epsilon(1e-13));
}

TEST_CASE("weights are positive and sum to the interval length") {
  for (int m : {4, 17, 60, 120}) {
    const auto r = gauss_legendre(-3.0, 7.5, m);
    for (double w : r.weights) CHECK(w > 0.0);
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(10.5).epsilon(1e-13));
  }
  const auto soft = soft_edge_rule(1.0, 40, 25.0);
  CHECK(std::accumulate(soft.weights.begin(), soft.weights.end(), 0.0) == doctest::Approx(25.0).epsilon(1e-13));
}

TEST_CASE("truncated soft-edge rule integrates Ai^2") {
  const auto r = soft_edge_rule(-2.0, 40);
  const double v = apply(r, [](double t) { return std::pow(oracle::airy(t), 2); });
  const double ref = oracle::integrate([](double t) { return std::pow(oracle::airy(t), 2); }, -2.0, 40.0);
  CHECK(std::abs(v - ref) < 1e-11);
}

TEST_CASE("Gauss-Jacobi moments") {
  for (double alpha : {-0.5, 0.0, 1.0, 2.5})
    for (double beta : {-0.5, 0.0, 1.5}) {
      const auto r = gauss_jacobi(-1.0, 1.0, alpha, beta, 12);
      // int_{-1}^1 (1-x)^alpha (1+x)^beta (1+x)^k dx = 2^{alpha+beta+k+1} B(alpha+1, beta+k+1)
      for (int k : {0, 3, 9}) {
        const double ref = std::pow(2.0, alpha + beta + k + 1) * boost::math::beta(alpha + 1, beta + k + 1);
        CHECK(apply(r, [k](double x) { return std::pow(1 + x, k); }) == doctest::Approx(ref).epsilon(1e-12));
      }
    }
}

TEST_CASE("hard-edge rule absorbs the end-point behaviour") {
  for (double a : {0.0, 1.0, 2.0}) {
    const double s = 3.0;
    const auto r = hard_edge_rule(s, a, 30);
    const double g = 0.5 * (a - 1.0);
    const double v = apply(r, [g](double x) { return std::pow(x, g); });
    CHECK(v == doctest::Approx(std::pow(s, g + 1) / (g + 1)).epsilon(1e-12));
    if (a <= 1.0) CHECK(apply(r, [](double) { return 1.0; }) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("domains dispatch and reject tiny rules") {
  CHECK_THROWS_AS(gauss_legendre(0.0, 1.0, 3), InvalidParameter);
  CHECK_THROWS_AS(build_quadrature(FiniteDomain{0.0, 1.0}, 2), InvalidParameter);
  CHECK(build_quadrature(SoftEdgeDomain{0.0, 20.0}, 10).nodes.back() < 20.0);
  CHECK(build_quadrature(HardEdgeDomain{2.0, 1.0}, 10).nodes.back() < 2.0);
  CHECK_FALSE(describe(FiniteDomain{0.0, 1.0}).empty());
}
