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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "edgegap/ensembles.hpp"
#include "edgegap/kernels.hpp"

namespace edgegap::limits {

enum class ScalingKind {
  SoftLaguerre0,  // x = 4N + 2 (2N)^{1/3} X
  SoftGaussian,   // x = sqrt(2N) + X / (sqrt(2) N^{1/6})
  HardJacobi      // x = 1 - X / (2 N^2)
};

/// Affine map x = origin + scale * X from edge to finite-N coordinates.
struct ScalingMap {
  ScalingKind kind = ScalingKind::SoftLaguerre0;
  int N = 2;

  static ScalingMap make(ScalingKind kind, int N);

  double origin() const;
  /// Signed slope dx/dX (negative for the hard map).
  double scale() const;
  /// Density rescaling factor |dx/dX|.
  double jacobian() const { return std::abs(scale()); }

  double to_finite(double X) const { return origin() + scale() * X; }
  double to_edge(double x) const { return (x - origin()) / scale(); }

  kernels::KernelSpec apply(const kernels::KernelSpec& k) const { return k.rescaled(origin(), scale()); }
  std::string describe() const;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool reported = false;  // false when fewer than 4 points or R^2 < 0.9
};

/// Least squares of log(err) against log(N).
SlopeFit fit_slope(const std::vector<double>& N, const std::vector<double>& err);

struct TableRow {
  int N = 0;
  std::vector<double> point;
  double finite_value = 0.0;
  double limit_value = 0.0;
  double abs_error = 0.0;
};

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  bool binding = true;  // non-binding checks are reported but do not affect pass
};

/// Tidy convergence table plus the fitted decay of the sup error in N.
struct ConvergenceTable {
  std::string name;
  std::vector<std::string> point_names;
  std::vector<TableRow> rows;
  std::vector<int> N_list;
  std::vector<double> sup_error;  // per N
  std::vector<double> fit_series; // fitted instead of sup_error when non-empty
  SlopeFit fit;
  double slope_bound = 0.0;       // pass requires fit.slope <= slope_bound
  std::vector<Check> checks;      // additional pass/fail items
  bool exact = false;             // every error at rounding level; no slope needed
  bool pass = false;

  /// Recomputes sup_error, fit and pass from rows and checks.
  void finalize();
};

/// |(2N)^{1/3} (-1)^N e^{-x/2} L_N(x) - Ai(t)| at x = 4N + 2 (2N)^{1/3} t.
ConvergenceTable verify_laguerre_airy_estimate(const std::vector<int>& N_list, const std::vector<double>& t_grid);

/// 2 (2N)^{1/3} K_N at mapped points against K^soft, K_N the Laguerre
/// (a = 0) Christoffel-Darboux kernel.
ConvergenceTable verify_soft_kernel_limit(const std::vector<int>& N_list, const std::vector<double>& grid);

enum class BesselPrefactor {
  Szego,   // nu^{-a} Gamma(n+a+1)/n!, nu = n + (a+1)/2
  Degree   // n^{-a} Gamma(n+a+1)/n!
};

/// Relative error of the Bessel approximation to (sin th/2)^a P_n^{(a,0)}(cos th)
/// on th = c / n for each c in c_grid (c <= 20); the slope is fitted at c = 5.
ConvergenceTable verify_jacobi_bessel_estimate(const std::vector<int>& N_list, const std::vector<double>& c_grid,
                                               double a, BesselPrefactor prefactor = BesselPrefactor::Szego);

/// Right-hand side of the Bessel approximation at (n, a, theta).
double jacobi_bessel_approximation(int n, double a, double theta, BesselPrefactor prefactor);

using kernels::Edge;

/// Scaled n-point correlations of the decimated superpositions against the
/// limits; `points` holds point sets of 1 to 3 points each.
ConvergenceTable verify_decimated_correlation_limits(Edge edge, const std::vector<int>& N_list,
                                                     const std::vector<std::vector<double>>& points, double a = 1.0);

/// Finite-N generating function of odd(LOE_N^0)^2 on (s, inf) (soft) or of
/// odd(JOE_N^{(a-1)/2,0})^2 on (0, s) (hard), in edge coordinates, by
/// Nystrom discretization of the scaled decimated kernel.
double finite_genfun(Edge edge, int N, double s, double xi, double a = 1.0, int m = 60);

/// E_N against genfun_soft / genfun_hard for every (xi, s) cell.
ConvergenceTable verify_genfun_limits(Edge edge, const std::vector<double>& xi_list, const std::vector<double>& s_list,
                                      const std::vector<int>& N_list, double a = 1.0, int m = 60);

/// Edge-scaled odd-decimated superposition samples, keeping only the points
/// inside `window` (edge coordinates).
std::vector<std::vector<double>> scaled_decimated_samples(Edge edge, int N, std::size_t n_samples,
                                                          std::uint64_t seed, double a, const quad::Interval& window,
                                                          Exec exec = Exec::Parallel);

struct MonteCarloCheck {
  ensembles::Estimate empirical;
  double finite_value = 0.0;  // Nystrom value at the same N
  double limit_value = 0.0;
  double z_limit = 0.0;       // |empirical - limit| / std_error
  double z_finite = 0.0;      // |empirical - finite| / std_error
  bool pass = false;          // z_limit <= 3
};

/// Empirical generating function of edge-scaled samples against the limit.
MonteCarloCheck monte_carlo_genfun_check(Edge edge, int N, double s, double xi, std::size_t n_samples,
                                         std::uint64_t seed, double a = 1.0);

}  // namespace edgegap::limits
