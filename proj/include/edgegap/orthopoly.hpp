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

#include <span>
#include <string>
#include <vector>

#include "edgegap/specfun.hpp"

namespace edgegap::specfun {

enum class Family { Hermite, Laguerre, Jacobi };

/**
 * A classical orthogonal polynomial family in its textbook normalization:
 *
 *  - Hermite  H_n,          weight e^{-x^2} on R
 *  - Laguerre L_n^a,        weight x^a e^{-x} on (0, inf)
 *  - Jacobi   P_n^{(a,b)},  weight (1-x)^a (1+x)^b on (-1, 1)
 *
 * Monic quantities (as used by Christoffel-Darboux sums written with monic
 * polynomials) follow from leading_coefficient().
 */
class PolyFamily {
 public:
  static PolyFamily hermite();
  static PolyFamily laguerre(double a);
  static PolyFamily jacobi(double a, double b);

  Family family() const noexcept { return family_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  double support_lo() const noexcept;
  double support_hi() const noexcept;
  bool in_support(double x) const noexcept;

  double weight(double x) const;
  double log_weight(double x) const;
  /// w'(x) / (2 w(x)), the logarithmic derivative of sqrt(w).
  double half_log_weight_derivative(double x) const;

  /// Total mass of the weight, int w.
  double mass() const;

  /// Recurrence of the orthonormal polynomials
  ///   x q_j = beta_{j+1} q_{j+1} + alpha_j q_j + beta_j q_{j-1}.
  double alpha(int j) const;
  double beta(int j) const;  // j >= 1

  std::string describe() const;

 private:
  PolyFamily(Family f, double a, double b) : family_(f), a_(a), b_(b) {}
  Family family_;
  double a_ = 0.0;
  double b_ = 0.0;
};

/// p_n(x) and p_n'(x) in the classical normalization, by three-term
/// recurrence.
ValueDeriv ortho_eval(const PolyFamily& fam, int n, double x);

/// (p_n, p_n) = int w p_n^2 in the classical normalization.
double ortho_norm(const PolyFamily& fam, int n);

/// Leading coefficient k_n of the classical p_n.
double leading_coefficient(const PolyFamily& fam, int n);

/// Norm of the monic polynomial p_n / k_n.
double monic_norm(const PolyFamily& fam, int n);

/**
 * Weighted orthonormal functions phi_j(x) = sqrt(w(x)) p_j(x) / sqrt(h_j)
 * and their derivatives for j = 0..n_max, written into `value` and `deriv`
 * (each of size n_max + 1).
 *
 * The recurrence carries a separate exponent so that e^{-x/2} L_N(x) near
 * x = 4N is computed without overflow; entries that underflow come back as
 * zero.
 */
void orthonormal_functions(const PolyFamily& fam, int n_max, double x, std::span<double> value,
                           std::span<double> deriv);

/// Unweighted orthonormal polynomials q_j(x) = p_j(x) / sqrt(h_j) and their
/// derivatives for j = 0..n_max (no overflow protection; intended for
/// bounded arguments such as quadrature on [-1, 1]).
void orthonormal_polynomials(const PolyFamily& fam, int n_max, double x, std::span<double> value,
                             std::span<double> deriv);

/// Convenience wrapper returning phi_0..phi_{n_max}.
struct OrthonormalTable {
  std::vector<double> value;
  std::vector<double> deriv;
};
OrthonormalTable orthonormal_table(const PolyFamily& fam, int n_max, double x);

}  // namespace edgegap::specfun
