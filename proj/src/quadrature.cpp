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
#include "edgegap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edgegap/error.hpp"
#include "edgegap/orthopoly.hpp"
#include "edgegap/tridiag.hpp"

namespace edgegap::quad {
namespace {

void require_size(int m) {
  if (m < 4) throw InvalidParameter("quadrature size m must be at least 4, got " + std::to_string(m));
}

// Golub-Welsch on [-1, 1] for weight (1-t)^alpha (1+t)^beta, with one Newton
// sweep on q_m and Christoffel weights 1 / sum_j q_j(t)^2.
void gauss_jacobi_reference(double alpha, double beta, int m, std::vector<double>& t, std::vector<double>& w) {
  const auto fam = specfun::PolyFamily::jacobi(alpha, beta);
  std::vector<double> diag(m), off(m - 1);
  for (int j = 0; j < m; ++j) diag[j] = fam.alpha(j);
  for (int j = 1; j < m; ++j) off[j - 1] = fam.beta(j);
  const auto spec = linalg::tridiagonal_eigen_first_row(diag, off);

  t = spec.values;
  w.resize(m);
  std::vector<double> q(m + 1), dq(m + 1);
  for (int i = 0; i < m; ++i) {
    for (int it = 0; it < 2; ++it) {
      specfun::orthonormal_polynomials(fam, m, t[i], q, dq);
      if (dq[m] == 0.0) break;
      const double step = q[m] / dq[m];
      if (!(std::abs(step) < 1e-8)) break;
      t[i] -= step;
    }
    specfun::orthonormal_polynomials(fam, m, t[i], q, dq);
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += q[j] * q[j];
    w[i] = 1.0 / s;
  }
}

}  // namespace

QuadratureRule gauss_jacobi(double lo, double hi, double alpha, double beta, int m) {
  require_size(m);
  if (!(hi > lo)) throw InvalidParameter("quadrature interval must satisfy lo < hi");
  std::vector<double> t, w;
  gauss_jacobi_reference(alpha, beta, m, t, w);
  const double half = 0.5 * (hi - lo);
  const double scale = std::pow(half, alpha + beta + 1.0);
  QuadratureRule r;
  r.domain = {lo, hi};
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    r.nodes[i] = lo + half * (t[i] + 1.0);
    r.weights[i] = scale * w[i];
  }
  std::ostringstream os;
  os << "gauss-jacobi(alpha=" << alpha << ",beta=" << beta << ")";
  r.map = os.str();
  return r;
}

QuadratureRule gauss_legendre(double lo, double hi, int m) {
  auto r = gauss_jacobi(lo, hi, 0.0, 0.0, m);
  r.map = "gauss-legendre affine";
  return r;
}

double soft_truncation(double s) { return std::max(25.0, std::abs(s) + 25.0); }

QuadratureRule soft_edge_rule(double s, int m, double T) {
  if (!std::isfinite(s)) throw InvalidParameter("soft-edge endpoint must be finite");
  if (T <= 0.0) T = soft_truncation(s);
  auto r = gauss_legendre(s, s + T, m);
  r.map = "gauss-legendre on truncated (s, s+T)";
  return r;
}

QuadratureRule hard_edge_rule(double s, double a, int m) {
  if (!(s > 0.0)) throw InvalidParameter("hard-edge interval (0, s) needs s > 0");
  if (!(a > -1.0)) throw InvalidParameter("hard-edge parameter a must exceed -1");
  const auto base = gauss_jacobi(0.0, 1.0, 0.0, a, m);
  QuadratureRule r;
  r.domain = {0.0, s};
  r.map = "x = s t^2, gauss-jacobi weight t^a";
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    const double ti = base.nodes[i];
    r.nodes[i] = s * ti * ti;
    r.weights[i] = 2.0 * s * base.weights[i] * std::pow(ti, 1.0 - a);
  }
  return r;
}

QuadratureRule build_quadrature(const Domain& domain, int m) {
  require_size(m);
  return std::visit(
      [m](const auto& d) -> QuadratureRule {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, FiniteDomain>) {
          return gauss_legendre(d.lo, d.hi, m);
        } else if constexpr (std::is_same_v<D, SoftEdgeDomain>) {
          return soft_edge_rule(d.s, m, d.T);
        } else {
          return hard_edge_rule(d.s, d.a, m);
        }
      },
      domain);
}

std::string describe(const Domain& domain) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, FiniteDomain>) {
          os << "(" << d.lo << ", " << d.hi << ")";
        } else if constexpr (std::is_same_v<D, SoftEdgeDomain>) {
          os << "(" << d.s << ", inf)";
        } else {
          os << "(0, " << d.s << ") a=" << d.a;
        }
      },
      domain);
  return os.str();
}

}  // namespace edgegap::quad
