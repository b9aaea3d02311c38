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

#include <string>
#include <variant>
#include <vector>

namespace edgegap::quad {

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

/// Nodes and weights such that sum_i w_i f(x_i) approximates an integral of
/// f over `domain`.  `map` names the change of variables that produced the
/// nodes.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  Interval domain{0.0, 0.0};
  std::string map;

  std::size_t size() const { return nodes.size(); }
};

/// m-point Gauss-Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(double lo, double hi, int m);

/// m-point Gauss-Jacobi rule for int_lo^hi (hi - x)^alpha (x - lo)^beta f(x) dx.
/// The returned weights include the weight function.
QuadratureRule gauss_jacobi(double lo, double hi, double alpha, double beta, int m);

/// Truncation length for soft-edge intervals (s, inf).
double soft_truncation(double s);

/// Gauss-Legendre on the truncated soft-edge interval (s, s + T).
QuadratureRule soft_edge_rule(double s, int m, double T = 0.0);

/**
 * Rule for (0, s) adapted to the hard-edge singularities x^{(a-1)/2} and
 * x^a: substitute x = s t^2 and integrate in t with Gauss-Jacobi weight t^a.
 * Returned weights are effective, i.e. sum_i w_i f(x_i) ~ int_0^s f.
 * Exponentially convergent for the edge integrands when a is an integer.
 */
QuadratureRule hard_edge_rule(double s, double a, int m);

struct FiniteDomain {
  double lo;
  double hi;
};
struct SoftEdgeDomain {
  double s;
  double T = 0.0;  // 0 selects soft_truncation(s)
};
struct HardEdgeDomain {
  double s;
  double a;
};
using Domain = std::variant<FiniteDomain, SoftEdgeDomain, HardEdgeDomain>;

/// Dispatches on the domain kind; throws InvalidParameter for m < 4.
QuadratureRule build_quadrature(const Domain& domain, int m);

std::string describe(const Domain& domain);

}  // namespace edgegap::quad
