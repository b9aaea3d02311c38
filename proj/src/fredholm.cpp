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
#include "edgegap/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "edgegap/error.hpp"
#include "edgegap/specfun.hpp"

namespace edgegap::fredholm {
namespace {

constexpr double kPivotFloor = 1e-14;

Eigen::MatrixXd i_minus(const DiscretizedOperator& op, double xi) {
  const auto m = static_cast<Eigen::Index>(op.size());
  return Eigen::MatrixXd::Identity(m, m) - xi * op.matrix;
}

double smallest_pivot(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
  return lu.matrixLU().diagonal().cwiseAbs().minCoeff();
}

std::vector<double> sample(const std::function<double(double)>& f, const QuadratureRule& rule) {
  std::vector<double> out(rule.size());
  for (size_t i = 0; i < rule.size(); ++i) out[i] = f(rule.nodes[i]);
  return out;
}

// Determinant of a small dense matrix stored row-major in `a` (destroyed).
double small_det(double* a, int n) {
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    if (a[p * n + k] == 0.0) return 0.0;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      det = -det;
    }
    const double piv = a[k * n + k];
    det *= piv;
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / piv;
      for (int j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

// Sum of all n x n principal minors of W whose smallest index is `first`.
double principal_minor_sum(const Eigen::MatrixXd& W, int n, int first) {
  const int m = static_cast<int>(W.rows());
  if (first + n > m) return 0.0;
  std::vector<int> idx(n);
  idx[0] = first;
  for (int k = 1; k < n; ++k) idx[k] = first + k;
  std::vector<double> buf(n * n);
  double total = 0.0;
  while (true) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) buf[r * n + c] = W(idx[r], idx[c]);
    total += small_det(buf.data(), n);
    // next combination, keeping idx[0] fixed
    int k = n - 1;
    while (k >= 1 && idx[k] == m - n + k) --k;
    if (k < 1) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return total;
}

}  // namespace

void require_xi(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    std::ostringstream os;
    os << "xi must lie in [0, 1], got " << xi;
    throw InvalidParameter(os.str());
  }
}

DiscretizedOperator discretize(const KernelSpec& kernel, const QuadratureRule& rule, Exec exec) {
  DiscretizedOperator op{kernels::kernel_matrix(kernel, rule.nodes, rule.nodes, exec), rule, kernel, {}};
  const auto m = static_cast<Eigen::Index>(rule.size());
  op.sqrt_w.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) op.sqrt_w[i] = std::sqrt(rule.weights[i]);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double v = op.matrix(i, j);
      if (!std::isfinite(v)) throw EvaluationError("non-finite kernel value", rule.nodes[i], rule.nodes[j]);
      op.matrix(i, j) = op.sqrt_w[i] * v * op.sqrt_w[j];
    }
  }
  return op;
}

double det_i_minus(const DiscretizedOperator& op, double xi) {
  if (xi == 0.0) return 1.0;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(i_minus(op, xi)).determinant();
}

GenFnValue fredholm_det(const KernelSpec& kernel, const Domain& domain, double xi, int m) {
  require_xi(xi);
  const double v1 = det_i_minus(discretize(kernel, quad::build_quadrature(domain, m)), xi);
  const double v2 = det_i_minus(discretize(kernel, quad::build_quadrature(domain, 2 * m)), xi);
  return {v1, m, std::abs(v1 - v2)};
}

std::vector<double> resolvent_apply(const DiscretizedOperator& op, double xi, std::span<const double> f) {
  const auto m = static_cast<Eigen::Index>(op.size());
  if (static_cast<Eigen::Index>(f.size()) != m) throw InvalidParameter("resolvent_apply: f has the wrong length");
  std::vector<double> u(f.begin(), f.end());
  if (xi == 0.0) return u;
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) rhs[i] = op.sqrt_w[i] * f[i];
  const Eigen::MatrixXd A = i_minus(op, xi);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const double piv = smallest_pivot(lu);
  if (!(piv > kPivotFloor)) throw SingularOperator("I - xi K is singular at the discrete level", piv);
  const Eigen::VectorXd v = lu.solve(rhs);
  for (Eigen::Index i = 0; i < m; ++i) {
    u[i] = op.sqrt_w[i] > 0.0 ? v[i] / op.sqrt_w[i] : f[i];
  }
  return u;
}

std::vector<double> resolvent_apply(const DiscretizedOperator& op, double xi, const std::function<double(double)>& f) {
  const auto fv = sample(f, op.rule);
  return resolvent_apply(op, xi, fv);
}

double rank_one_factor(const DiscretizedOperator& op, std::span<const double> A, std::span<const double> B,
                       double xi) {
  if (B.size() != op.size()) throw InvalidParameter("rank_one_factor: B has the wrong length");
  if (xi == 0.0) return 1.0;
  const auto u = resolvent_apply(op, xi, A);
  double s = 0.0;
  for (size_t i = 0; i < op.size(); ++i) s += op.rule.weights[i] * u[i] * B[i];
  return 1.0 - xi * s;
}

double rank_one_factor(const DiscretizedOperator& op, const RankOnePerturbation& p, double xi) {
  const auto A = sample([&p](double x) { return p.A(x); }, op.rule);
  const auto B = sample([&p](double y) { return p.B(y); }, op.rule);
  return rank_one_factor(op, A, B, xi);
}

double rank_one_factor(const KernelSpec& kernel, const RankOnePerturbation& p, const Domain& domain, double xi,
                       int m) {
  require_xi(xi);
  return rank_one_factor(discretize(kernel, quad::build_quadrature(domain, m)), p, xi);
}

double augmented_det(const DiscretizedOperator& op, std::span<const double> A, std::span<const double> B, double xi) {
  const auto m = static_cast<Eigen::Index>(op.size());
  Eigen::MatrixXd M = op.matrix;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) M(i, j) += op.sqrt_w[i] * A[i] * B[j] * op.sqrt_w[j];
  return Eigen::PartialPivLU<Eigen::MatrixXd>(Eigen::MatrixXd::Identity(m, m) - xi * M).determinant();
}

namespace {

double perturbed_det(const KernelSpec& kernel, const RankOnePerturbation& p, const QuadratureRule& rule, double xi) {
  if (xi == 0.0) return 1.0;
  const auto op = discretize(kernel, rule);
  return det_i_minus(op, xi) * rank_one_factor(op, p, xi);
}

}  // namespace

GenFnValue genfun_soft(double s, double xi, int m) {
  require_xi(xi);
  if (!std::isfinite(s)) throw InvalidParameter("s must be finite");
  const auto k = KernelSpec::soft_airy();
  const auto p = RankOnePerturbation::soft();
  const double v1 = perturbed_det(k, p, quad::soft_edge_rule(s, m), xi);
  const double v2 = perturbed_det(k, p, quad::soft_edge_rule(s, 2 * m), xi);
  return {v1, m, std::abs(v1 - v2)};
}

GenFnValue genfun_hard(double s, double xi, double a, int m) {
  require_xi(xi);
  if (!(a > -1.0)) throw InvalidParameter("a must exceed -1");
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidParameter("s must be positive and finite");
  const auto k = KernelSpec::hard_bessel(a);
  const auto p = RankOnePerturbation::hard(a);
  const double v1 = perturbed_det(k, p, quad::hard_edge_rule(s, a, m), xi);
  const double v2 = perturbed_det(k, p, quad::hard_edge_rule(s, a, 2 * m), xi);
  return {v1, m, std::abs(v1 - v2)};
}

double e1_soft_det(double s, int m) {
  if (m < 10) throw InvalidParameter("e1_soft_det needs m >= 10");
  if (!std::isfinite(s)) throw InvalidParameter("s must be finite");
  const auto op = discretize(KernelSpec::airy_sum(s), quad::gauss_legendre(0.0, quad::soft_truncation(s), m));
  return det_i_minus(op, 1.0);
}

SeriesResult genfun_series_oracle(const KernelSpec& kernel, const QuadratureRule& rule, double xi, int n_max) {
  require_xi(xi);
  if (n_max < 0) throw InvalidParameter("n_max must be non-negative");
  if (n_max > 8) throw InvalidParameter("genfun_series_oracle refuses n_max > 8 (cost grows as m^n)");
  SeriesResult out;
  out.n_max = n_max;
  if (xi == 0.0 || n_max == 0) return out;
  const auto op = discretize(kernel, rule);
  const int m = static_cast<int>(op.size());
  std::vector<double> partial(m);
  double coef = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    coef *= -xi;
#pragma omp parallel for schedule(dynamic)
    for (int first = 0; first < m; ++first) partial[first] = principal_minor_sum(op.matrix, n, first);
    double e_n = 0.0;
    for (int first = 0; first < m; ++first) e_n += partial[first];
    out.value += coef * e_n;
    out.last_term = std::abs(coef * e_n);
  }
  return out;
}

QuadratureRule series_rule_soft(double s, int m) {
  auto r = quad::gauss_legendre(s, s + 14.0, m);
  r.map = "gauss-legendre on (s, s+14)";
  return r;
}

QuadratureRule series_rule_hard(double s, int m) {
  const auto base = quad::gauss_legendre(0.0, 1.0, m);
  QuadratureRule r;
  r.domain = {0.0, s};
  r.map = "x = s t^2, gauss-legendre in t";
  for (size_t i = 0; i < base.size(); ++i) {
    const double t = base.nodes[i];
    r.nodes.push_back(s * t * t);
    r.weights.push_back(2.0 * s * t * base.weights[i]);
  }
  return r;
}

std::vector<double> gap_probabilities_from_genfun(const std::function<double(double)>& genfun, int k_max) {
  if (k_max < 0 || k_max > 6) throw InvalidParameter("k_max must lie in 0..6");
  const int degree = k_max + 4;
  const int n_pts = 2 * (degree + 1);
  Eigen::MatrixXd V(n_pts, degree + 1);
  Eigen::VectorXd f(n_pts);
  for (int i = 0; i < n_pts; ++i) {
    const double xi = 0.5 * (1.0 - std::cos(std::numbers::pi * (i + 0.5) / n_pts));
    const double z = 1.0 - xi;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      V(i, k) = p;
      p *= z;
    }
    f[i] = genfun(xi);
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(f);
  const double residual = (V * c - f).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-8)) throw IllConditionedFit("generating function is not captured by the polynomial fit", residual);
  return std::vector<double>(c.data(), c.data() + k_max + 1);
}

}  // namespace edgegap::fredholm
