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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "edgegap/tridiag.hpp"

using namespace edgegap::linalg;

namespace {

struct Tri {
  std::vector<double> d, e;
};

Tri random_tri(int n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> z;
  Tri t{std::vector<double>(n), std::vector<double>(std::max(0, n - 1))};
  for (auto& x : t.d) x = z(g);
  for (auto& x : t.e) x = z(g);
  return t;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(const Tri& t) {
  const int n = static_cast<int>(t.d.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) A(i, i) = t.d[i];
  for (int i = 0; i + 1 < n; ++i) A(i, i + 1) = A(i + 1, i) = t.e[i];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A);
}

}  // namespace

TEST_CASE("eigenvalues match a dense symmetric solver") {
  for (int n : {1, 2, 3, 7, 20, 64}) {
    for (unsigned seed = 1; seed <= 5; ++seed) {
      const auto t = random_tri(n, seed * 100 + n);
      const auto ev = tridiagonal_eigenvalues(t.d, t.e);
      const auto ref = dense(t);
      const double norm = ref.eigenvalues().cwiseAbs().maxCoeff();
      REQUIRE(ev.size() == static_cast<std::size_t>(n));
      CHECK(std::is_sorted(ev.begin(), ev.end()));
      for (int i = 0; i < n; ++i) CHECK(std::abs(ev[i] - ref.eigenvalues()(i)) <= 1e-12 * std::max(1.0, norm));
    }
  }
}

TEST_CASE("discrete Laplacian spectrum") {
  const int n = 40;
  std::vector<double> d(n, 2.0), e(n - 1, -1.0);
  const auto ev = tridiagonal_eigenvalues(d, e);
  for (int k = 1; k <= n; ++k) CHECK(ev[k - 1] == doctest::Approx(2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1))).epsilon(1e-13).scale(1.0));
}

TEST_CASE("first eigenvector components") {
  const auto t = random_tri(12, 7);
  const auto s = tridiagonal_eigen_first_row(t.d, t.e);
  const auto ref = dense(t);
  double total = 0.0;
  for (int i = 0; i < 12; ++i) {
    CHECK(s.values[i] == doctest::Approx(ref.eigenvalues()(i)).epsilon(1e-12).scale(1.0));
    CHECK(std::abs(s.first_components[i]) == doctest::Approx(std::abs(ref.eigenvectors()(0, i))).epsilon(1e-10).scale(1.0));
    total += s.first_components[i] * s.first_components[i];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Sturm count and partial spectra") {
  for (unsigned seed = 1; seed <= 6; ++seed) {
    const auto t = random_tri(50, seed);
    const auto ev = tridiagonal_eigenvalues(t.d, t.e);
    for (std::size_t k = 1; k + 1 < ev.size(); k += 7) {
      const double mid = 0.5 * (ev[k - 1] + ev[k]);
      CHECK(sturm_count_below(t.d, t.e, mid) == static_cast<int>(k));
      const auto above = tridiagonal_eigenvalues_above(t.d, t.e, mid);
      REQUIRE(above.size() == ev.size() - k);
      for (std::size_t i = 0; i < above.size(); ++i)
        CHECK(std::abs(above[i] - ev[k + i]) <= 1e-13 * std::max(1.0, std::abs(ev.back())));
    }
    CHECK(tridiagonal_eigenvalues_above(t.d, t.e, ev.back() + 1.0).empty());
  }
}

TEST_CASE("zero off-diagonal splits the problem") {
  std::vector<double> d{3.0, -1.0, 2.0, 0.5}, e{0.0, 0.0, 0.0};
  const auto ev = tridiagonal_eigenvalues(d, e);
  std::sort(d.begin(), d.end());
  for (int i = 0; i < 4; ++i) CHECK(ev[i] == doctest::Approx(d[i]));
}
