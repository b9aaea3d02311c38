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
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "suite.hpp"

using namespace edgegap::suite;

namespace {

// E_1(k), k = 0..2: probability that k of the two points of the beta = 1
// pair with weight g lie in (s, hi), by nested quadrature of
// g(x1) g(x2) (x2 - x1) over x1 < x2.
std::vector<double> pair_counts(const std::function<double(double)>& g, double lo, double s, double hi, bool singular) {
  auto region = [&](double l1, double h1, double l2, double h2) {
    auto outer = [&](double x2) {
      auto inner = [&](double x1) { return x1 < x2 ? g(x1) * (x2 - x1) : 0.0; };
      const double top = std::min(h1, x2);
      if (top <= l1) return 0.0;
      return g(x2) * (singular ? oracle::integrate_singular(inner, l1, top) : oracle::integrate(inner, l1, top, 2.0));
    };
    return singular ? oracle::integrate_singular(outer, l2, h2) : oracle::integrate(outer, l2, h2, 2.0);
  };
  const double none = region(lo, s, lo, s);
  const double one = region(lo, s, s, hi);
  const double two = region(s, hi, s, hi);
  const double z = none + one + two;
  return {none / z, one / z, two / z};
}

// Odd-labelled count of the union is ceil(M / 2) for M points in the window.
std::vector<double> odd_union(const std::vector<double>& e) {
  std::vector<double> p(3, 0.0);
  for (int j = 0; j <= 2; ++j)
    for (int k = 0; k <= 2; ++k) p[(j + k + 1) / 2] += e[j] * e[k];
  return p;
}

}  // namespace

TEST_CASE("micro oracle, Laguerre pair, against single-pair quadrature") {
  for (double s : {2.0, 3.0, 5.0}) {
    const auto e = pair_counts([](double x) { return std::exp(-x / 2); }, 0.0, s, s + 80.0, false);
    const auto expected = odd_union(e);
    const auto m = micro_oracle_laguerre(s);
    REQUIRE(m.direct.size() == 3);
    for (int n = 0; n < 3; ++n) {
      CHECK(m.direct[n] == doctest::Approx(expected[n]).epsilon(1e-8).scale(1.0));
      CHECK(std::abs(m.fredholm[n] - expected[n]) < 1e-4);
    }
    CHECK(m.max_abs_diff < 1e-4);
  }
}

TEST_CASE("micro oracle, Jacobi pair, against single-pair quadrature") {
  for (double a : {0.0, 1.0, 3.0}) {
    const double t = 0.5;
    const auto e = pair_counts([a](double x) { return std::pow(1.0 - x, (a - 1.0) / 2); }, -1.0, t, 1.0, true);
    const auto expected = odd_union(e);
    const auto m = micro_oracle_jacobi(a, t);
    for (int n = 0; n < 3; ++n) {
      CHECK(m.direct[n] == doctest::Approx(expected[n]).epsilon(1e-8).scale(1.0));
      CHECK(std::abs(m.fredholm[n] - expected[n]) < 1e-4);
    }
  }
  // unit weight: E_1(0) = P(both points below 1/2) in closed form
  const auto e = pair_counts([](double) { return 1.0; }, -1.0, 0.5, 1.0, false);
  CHECK(e[0] == doctest::Approx(std::pow(1.5 / 2.0, 3)).epsilon(1e-12));
}

TEST_CASE("suite membership") {
  CHECK(suite_criteria("fast") == std::vector<int>{1, 2, 3, 4, 5, 7, 8, 9, 11});
  CHECK(suite_criteria("full").size() == 11);
  CHECK_THROWS_AS(suite_criteria("slow"), std::invalid_argument);
  CHECK_THROWS_AS(run_criterion(0, {}), std::out_of_range);
  CHECK_THROWS_AS(run_criterion(12, {}), std::out_of_range);
}

TEST_CASE("determinant lemma criterion passes and detects the sign mutation") {
  const auto ok = run_criterion(2, {});
  CHECK(ok.pass);
  CHECK(ok.criterion == 2);
  CHECK(ok.seconds >= 0.0);
  Options bad;
  bad.mutation = Mutation::SoftKernelSign;
  CHECK_FALSE(run_criterion(2, bad).pass);
}

TEST_CASE("report layout") {
  Options opt;
  opt.seed = 5;
  CheckResult a{4, "four", true, false, 0, 0.1, {{"x", 1}}};
  CheckResult b{6, "six", false, true, 5, 0.2, {}};
  const auto j = report_json("full", opt, {a, b});
  CHECK(j.at("seed") == 5);
  CHECK(j.at("config").at("suite") == "full");
  CHECK(j.at("config").at("mutation") == "none");
  CHECK(j.at("checks").size() == 2);
  CHECK_FALSE(j.at("checks")[0].contains("seed"));
  CHECK(j.at("checks")[1].at("seed") == 5);
  CHECK(j.at("pass") == false);
  CHECK(j.contains("tool_version"));
  CHECK(report_json("fast", opt, {a}).at("pass") == true);
}
