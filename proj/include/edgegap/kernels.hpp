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

#include <memory>
#include <span>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "edgegap/orthopoly.hpp"
#include "edgegap/parallel.hpp"
#include "edgegap/quadrature.hpp"

namespace edgegap::kernels {

using specfun::PolyFamily;

namespace detail {
struct JacobiTables;
}

/// Relative half-width of the window around the diagonal in which the
/// Christoffel-Darboux quotients are replaced by their Taylor expansions.
inline constexpr double kConfluentWindow = 1e-5;

// ---------------------------------------------------------------------------
// Pointwise kernels

/// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y).
double soft_kernel(double x, double y);

/// int_0^inf Ai(x+u) Ai(y+u) du by adaptive quadrature; oracle for soft_kernel.
double soft_kernel_integral_form(double x, double y);

/// Bessel kernel in the variables x = t^2 (hard edge at 0).
double hard_kernel(double a, double x, double y);

/// (1/4) int_0^1 J_a(sqrt(xt)) J_a(sqrt(yt)) dt; oracle for hard_kernel.
double hard_kernel_integral_form(double a, double x, double y);

/// Christoffel-Darboux kernel sum_{j<N} phi_j(x) phi_j(y) of the weight of
/// `fam`, evaluated in quotient form with a confluent diagonal.
double cd_kernel(const PolyFamily& fam, int N, double x, double y);

/// The same kernel evaluated term by term.
double cd_kernel_sum(const PolyFamily& fam, int N, double x, double y);

/**
 * Correlation kernel of odd(LOE_N u LOE_N) for the weight e^{-x/2}:
 *   S_N(x, y) = -d/dx int_0^y K_N(x, u) du,
 * with K_N the Laguerre (a = 0) Christoffel-Darboux kernel.  Evaluated in
 * closed form; N must be even and at least 2.
 */
double decimated_laguerre_kernel(int N, double x, double y);

/// Oracle for decimated_laguerre_kernel: the u-integral of d/dx K_N(x, u)
/// by adaptive quadrature.
double decimated_laguerre_kernel_direct(int N, double x, double y);

enum class RowIntegralPath {
  DirectQuadrature,  // adaptive quadrature of K_N(x, u) over (0, y)
  TailIdentity,      // sign * int_x^inf e^{-u/2} L_N'(u) du - int_y^inf K_N(x, u) du
  ClosedForm         // separable closed form used by decimated_laguerre_kernel
};

/// int_0^y K_N(x, u) du for the Laguerre (a = 0) kernel.  `identity_sign`
/// is the sign multiplying the first term of the tail identity.
double laguerre_row_integral(int N, double x, double y, RowIntegralPath path, int identity_sign = 0);

/// Sign of the tail identity that holds for the given N: (-1)^N.
int laguerre_identity_sign(int N);

/**
 * Correlation kernel of odd(JOE_N u JOE_N) for the weight (1-x)^{(a-1)/2}
 * on (-1, 1), counting from x = 1:
 *   S_N(x, y) = -d/dx (1-x) int_{-1}^y Kt_N(x, u) du,
 * where Kt_N(x, u) = K_N(x, u) / sqrt((1-x)(1-u)) and K_N is the
 * Christoffel-Darboux kernel of (1-x)^a.  Inner integrals are exact
 * Gauss-Jacobi sums.
 */
double decimated_jacobi_kernel(double a, int N, double x, double y);

/// Oracle for decimated_jacobi_kernel using adaptive quadrature on (-1, y).
double decimated_jacobi_kernel_direct(double a, int N, double x, double y);

struct TxIdentity {
  double lhs;   // (1-x) int_{-1}^1 Kt_N(x, u) du
  double rhs;   // -2 int_x^1 Kt_N(-1, u) du
  int sign;     // lhs = sign * rhs
  double mismatch;  // | |lhs| - |rhs| |
};

/// Evaluates both sides of the end-point identity for Kt_N by adaptive
/// quadrature and reports the sign relating them.
TxIdentity tx_identity_check(double a, int N, double x);

/// K^soft(x, y) + Ai(x) int_{-inf}^y Ai.
double decimated_soft_limit_kernel(double x, double y);

/// K^hard(x, y) + J_a(sqrt x) / (2 sqrt y) int_{sqrt y}^inf J_a.
double decimated_hard_limit_kernel(double a, double x, double y);

// ---------------------------------------------------------------------------
// Rank-one perturbations

enum class Edge { Soft, Hard };

/// The pair (A, B) with K + A (x) B the decimated-superposition limit kernel.
struct RankOnePerturbation {
  Edge edge = Edge::Soft;
  double a = 0.0;

  static RankOnePerturbation soft();
  static RankOnePerturbation hard(double a);

  double A(double x) const;
  double B(double y) const;
};

// ---------------------------------------------------------------------------
// Kernel specifications

struct SoftAiry {};
struct HardBessel {
  double a;
};
struct FiniteCD {
  PolyFamily family;
  int N;
};
struct DecimatedLaguerre {
  int N;
};
struct DecimatedJacobi {
  double a;
  int N;
};
struct AirySum {
  double s;
};
struct DecimatedSoftLimit {};
struct DecimatedHardLimit {
  double a;
};

using KernelKind = std::variant<SoftAiry, HardBessel, FiniteCD, DecimatedLaguerre, DecimatedJacobi, AirySum,
                                DecimatedSoftLimit, DecimatedHardLimit>;

/**
 * An evaluatable kernel together with its domain.  A spec may carry an
 * affine change of variables x = origin + scale * X, in which case it
 * evaluates |scale| K(origin + scale X, origin + scale Y); this is how the
 * finite-N kernels are viewed in edge coordinates.
 */
class KernelSpec {
 public:
  static KernelSpec soft_airy();
  static KernelSpec hard_bessel(double a);
  static KernelSpec finite_cd(const PolyFamily& fam, int N);
  static KernelSpec decimated_laguerre(int N);
  static KernelSpec decimated_jacobi(double a, int N);
  static KernelSpec airy_sum(double s);
  static KernelSpec decimated_soft_limit();
  static KernelSpec decimated_hard_limit(double a);

  /// The same kernel in the coordinates X with x = origin + scale * X.
  KernelSpec rescaled(double origin, double scale) const;

  const KernelKind& kind() const noexcept { return kind_; }
  bool symmetric() const noexcept;
  /// Domain in the spec's own (possibly rescaled) coordinates.
  quad::Interval domain() const;
  bool in_domain(double x) const;
  double origin() const noexcept { return origin_; }
  double scale() const noexcept { return scale_; }
  std::string name() const;

  /// Pointwise value; throws DomainError outside the domain.
  double operator()(double x, double y) const;

 private:
  explicit KernelSpec(KernelKind k) : kind_(std::move(k)) {}
  double raw(double x, double y) const;
  friend Eigen::MatrixXd kernel_matrix(const KernelSpec&, std::span<const double>, std::span<const double>, Exec);

  KernelKind kind_;
  std::shared_ptr<const detail::JacobiTables> jacobi_;
  double origin_ = 0.0;
  double scale_ = 1.0;
};

/// det[K(x_i, x_j)] by partially pivoted LU, 1 <= n <= 12 points.
double correlation_det(const KernelSpec& kernel, std::span<const double> points);

/**
 * Matrix K(x_i, y_j).  Node-level quantities (Airy/Bessel values, polynomial
 * tables, inner integrals) are computed once per node and entries are then
 * assembled; both stages run under `exec`.  Serial and parallel execution
 * give bitwise identical results.
 */
Eigen::MatrixXd kernel_matrix(const KernelSpec& kernel, std::span<const double> x, std::span<const double> y,
                              Exec exec = Exec::Parallel);

/// Entry-by-entry serial evaluation through operator(); the reference the
/// fast path is tested against.
Eigen::MatrixXd kernel_matrix_reference(const KernelSpec& kernel, std::span<const double> x,
                                        std::span<const double> y);

}  // namespace edgegap::kernels
