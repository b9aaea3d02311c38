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

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "edgegap/kernels.hpp"
#include "edgegap/parallel.hpp"
#include "edgegap/quadrature.hpp"

namespace edgegap::fredholm {

using kernels::KernelSpec;
using kernels::RankOnePerturbation;
using quad::Domain;
using quad::QuadratureRule;

/// Default quadrature size for the limit-kernel determinants.
inline constexpr int kDefaultNodes = 60;

/// Nystrom matrix sqrt(w_i) K(x_i, x_j) sqrt(w_j).
struct DiscretizedOperator {
  Eigen::MatrixXd matrix;
  QuadratureRule rule;
  KernelSpec kernel;
  std::vector<double> sqrt_w;

  std::size_t size() const { return rule.size(); }
};

/// Throws EvaluationError naming the node if any entry is not finite.
DiscretizedOperator discretize(const KernelSpec& kernel, const QuadratureRule& rule, Exec exec = Exec::Parallel);

struct GenFnValue {
  double value = 1.0;
  int m_used = 0;
  double richardson_error = 0.0;  // |value(m) - value(2m)|
};

/// det(I - xi M) by partially pivoted LU.
double det_i_minus(const DiscretizedOperator& op, double xi);

/// det(I - xi K) on the domain with m nodes, plus the m-vs-2m difference.
GenFnValue fredholm_det(const KernelSpec& kernel, const Domain& domain, double xi, int m = kDefaultNodes);

/**
 * Solves (I - xi K) u = f at the nodes (in the symmetrized form
 * (I - xi M) v = sqrt(w) f, u = v / sqrt(w)) and returns u.  Throws
 * SingularOperator when an LU pivot falls below 1e-14.
 */
std::vector<double> resolvent_apply(const DiscretizedOperator& op, double xi, std::span<const double> f_at_nodes);
std::vector<double> resolvent_apply(const DiscretizedOperator& op, double xi, const std::function<double(double)>& f);

/// 1 - xi <(I - xi K)^{-1} A, B> with A, B sampled at the nodes.
double rank_one_factor(const DiscretizedOperator& op, std::span<const double> A, std::span<const double> B,
                       double xi);
double rank_one_factor(const DiscretizedOperator& op, const RankOnePerturbation& p, double xi);
double rank_one_factor(const KernelSpec& kernel, const RankOnePerturbation& p, const Domain& domain, double xi,
                       int m = kDefaultNodes);

/// det(I - xi (K + A (x) B)) from the augmented matrix; oracle for the
/// factorized route det(I - xi K) * rank_one_factor.
double augmented_det(const DiscretizedOperator& op, std::span<const double> A, std::span<const double> B, double xi);

/// Generating function of odd(OE u OE) at the soft edge on (s, inf).
GenFnValue genfun_soft(double s, double xi, int m = kDefaultNodes);

/// Generating function of odd(OE u OE) at the hard edge on (0, s) for the
/// weight exponent (a - 1)/2.
GenFnValue genfun_hard(double s, double xi, double a, int m = kDefaultNodes);

/// det(I - V) with V(x, y) = Ai(x + y + s) on (0, inf).
double e1_soft_det(double s, int m = kDefaultNodes);

struct SeriesResult {
  double value = 1.0;
  double last_term = 0.0;  // magnitude of the n_max-th term
  int n_max = 0;
};

/**
 * 1 + sum_{n <= n_max} (-xi)^n / n! int_J^n det[K(x_j, x_k)] with every
 * n-fold integral done by the tensor product of `rule`.  Coincident nodes
 * give vanishing determinants, so the sum runs over strictly increasing
 * node tuples.  n_max is capped at 8.
 */
SeriesResult genfun_series_oracle(const KernelSpec& kernel, const QuadratureRule& rule, double xi, int n_max);

/// Rules for the series oracle, deliberately different from the Nystrom
/// defaults: plain Gauss-Legendre on (s, s + 14) and, at the hard edge,
/// Gauss-Legendre in t with x = s t^2.
QuadratureRule series_rule_soft(double s, int m);
QuadratureRule series_rule_hard(double s, int m);

/// E(k), k = 0..k_max, from E(xi) = sum_k (1 - xi)^k E(k) by a least-squares
/// fit of degree k_max + 4 in (1 - xi) on Chebyshev points of [0, 1].
std::vector<double> gap_probabilities_from_genfun(const std::function<double(double)>& genfun, int k_max);

void require_xi(double xi);

}  // namespace edgegap::fredholm
