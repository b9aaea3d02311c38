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
#include "edgegap/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "edgegap/error.hpp"
#include "edgegap/fredholm.hpp"
#include "edgegap/orthopoly.hpp"
#include "edgegap/specfun.hpp"

namespace edgegap::limits {
namespace {

constexpr double kExact = 1e-13;

void require_even(int N) {
  if (N < 2 || N % 2 != 0) throw InvalidParameter("N must be even and at least 2");
}

kernels::KernelSpec finite_decimated(Edge edge, int N, double a) {
  if (edge == Edge::Soft) {
    return ScalingMap::make(ScalingKind::SoftLaguerre0, N).apply(kernels::KernelSpec::decimated_laguerre(N));
  }
  return ScalingMap::make(ScalingKind::HardJacobi, N).apply(kernels::KernelSpec::decimated_jacobi(a, N));
}

kernels::KernelSpec limit_decimated(Edge edge, double a) {
  return edge == Edge::Soft ? kernels::KernelSpec::decimated_soft_limit() : kernels::KernelSpec::decimated_hard_limit(a);
}

double laguerre_scaled(int N, double t) {
  const auto map = ScalingMap::make(ScalingKind::SoftLaguerre0, N);
  std::vector<double> v(N + 1), d(N + 1);
  specfun::orthonormal_functions(specfun::PolyFamily::laguerre(0.0), N, map.to_finite(t), v, d);
  const double sign = N % 2 == 0 ? 1.0 : -1.0;
  return std::cbrt(2.0 * N) * sign * v[N];
}

double jacobi_lhs(int n, double a, double theta) {
  const auto p = specfun::ortho_eval(specfun::PolyFamily::jacobi(a, 0.0), n, std::cos(theta));
  return std::pow(std::sin(0.5 * theta), a) * p.value;
}

}  // namespace

double jacobi_bessel_approximation(int n, double a, double theta, BesselPrefactor prefactor) {
  const double nu = n + 0.5 * (a + 1.0);
  const double base = prefactor == BesselPrefactor::Szego ? nu : static_cast<double>(n);
  const double pref = std::exp(-a * std::log(base) + specfun::log_gamma(n + a + 1.0) - specfun::log_gamma(n + 1.0));
  return pref * std::sqrt(theta / std::sin(theta)) * specfun::bessel_j(a, nu * theta).value;
}

// ---------------------------------------------------------------------------
// ScalingMap

ScalingMap ScalingMap::make(ScalingKind kind, int N) {
  if (N < 2) throw InvalidParameter("scaling maps need N >= 2");
  return {kind, N};
}

double ScalingMap::origin() const {
  switch (kind) {
    case ScalingKind::SoftLaguerre0: return 4.0 * N;
    case ScalingKind::SoftGaussian: return std::sqrt(2.0 * N);
    case ScalingKind::HardJacobi: return 1.0;
  }
  return 0.0;
}

double ScalingMap::scale() const {
  switch (kind) {
    case ScalingKind::SoftLaguerre0: return 2.0 * std::cbrt(2.0 * N);
    case ScalingKind::SoftGaussian: return 1.0 / (std::sqrt(2.0) * std::pow(static_cast<double>(N), 1.0 / 6.0));
    case ScalingKind::HardJacobi: return -1.0 / (2.0 * N * static_cast<double>(N));
  }
  return 1.0;
}

std::string ScalingMap::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ScalingKind::SoftLaguerre0: os << "x = 4N + 2(2N)^{1/3} X"; break;
    case ScalingKind::SoftGaussian: os << "x = sqrt(2N) + X/(sqrt(2) N^{1/6})"; break;
    case ScalingKind::HardJacobi: os << "x = 1 - X/(2N^2)"; break;
  }
  os << ", N = " << N;
  return os.str();
}

// ---------------------------------------------------------------------------
// Fits and tables

SlopeFit fit_slope(const std::vector<double>& N, const std::vector<double>& err) {
  SlopeFit f;
  if (N.size() != err.size() || N.size() < 4) return f;
  std::vector<double> lx, ly;
  for (size_t i = 0; i < N.size(); ++i) {
    if (!(err[i] > 0.0) || !(N[i] > 0.0)) return f;
    lx.push_back(std::log(N[i]));
    ly.push_back(std::log(err[i]));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  f.reported = f.r2 >= 0.9;
  return f;
}

void ConvergenceTable::finalize() {
  sup_error.assign(N_list.size(), 0.0);
  for (const auto& r : rows) {
    const auto it = std::find(N_list.begin(), N_list.end(), r.N);
    if (it == N_list.end()) continue;
    auto& e = sup_error[it - N_list.begin()];
    e = std::max(e, r.abs_error);
  }
  const auto& series = fit_series.empty() ? sup_error : fit_series;
  exact = !series.empty() && *std::max_element(series.begin(), series.end()) <= kExact;
  std::vector<double> n(N_list.begin(), N_list.end());
  fit = fit_slope(n, series);
  pass = exact || (fit.reported && fit.slope <= slope_bound);
  for (const auto& c : checks) pass = pass && (c.pass || !c.binding);
}

// ---------------------------------------------------------------------------
// Uniform estimates

ConvergenceTable verify_laguerre_airy_estimate(const std::vector<int>& N_list, const std::vector<double>& t_grid) {
  ConvergenceTable tab;
  tab.name = "laguerre-airy";
  tab.point_names = {"t"};
  tab.N_list = N_list;
  tab.slope_bound = -0.2;
  for (double t : t_grid)
    if (t < -3.0 || t > 8.0) throw InvalidParameter("t grid must lie in [-3, 8]");
  for (int N : N_list) require_even(N);
  for (int N : N_list) {
    for (double t : t_grid) {
      const double f = laguerre_scaled(N, t);
      const double l = specfun::airy_ai(t).value;
      tab.rows.push_back({N, {t}, f, l, std::abs(f - l)});
    }
  }
  {
    const double v = std::abs(laguerre_scaled(200, 0.0) - specfun::airy_ai(0.0).value);
    tab.checks.push_back({"N=200, t=0: |scaled - Ai(0)|", v, 0.02, v <= 0.02, false});
  }
  {
    // err e^t on [0, 8] at N = 200: the upper half must not exceed the lower half
    double lower = 0.0, upper = 0.0;
    for (int i = 0; i <= 32; ++i) {
      const double t = 0.25 * i;
      const double w = std::abs(laguerre_scaled(200, t) - specfun::airy_ai(t).value) * std::exp(t);
      (t <= 4.0 ? lower : upper) = std::max(t <= 4.0 ? lower : upper, w);
    }
    tab.checks.push_back({"N=200: sup_{[4,8]} err e^t <= sup_{[0,4]} err e^t", upper, lower, upper <= lower});
  }
  tab.finalize();
  return tab;
}

ConvergenceTable verify_soft_kernel_limit(const std::vector<int>& N_list, const std::vector<double>& grid) {
  ConvergenceTable tab;
  tab.name = "soft-kernel";
  tab.point_names = {"s", "t"};
  tab.N_list = N_list;
  tab.slope_bound = -0.2;
  for (double g : grid)
    if (g < -2.0 || g > 6.0) throw InvalidParameter("grid must lie in [-2, 6]");
  const auto limit = kernels::KernelSpec::soft_airy();
  double asym = 0.0;
  for (int N : N_list) {
    require_even(N);
    const auto k = ScalingMap::make(ScalingKind::SoftLaguerre0, N)
                       .apply(kernels::KernelSpec::finite_cd(specfun::PolyFamily::laguerre(0.0), N));
    for (double s : grid)
      for (double t : grid) {
        const double f = k(s, t);
        const double l = limit(s, t);
        asym = std::max(asym, std::abs(f - k(t, s)) / std::max(1.0, std::abs(f)));
        tab.rows.push_back({N, {s, t}, f, l, std::abs(f - l)});
      }
  }
  tab.checks.push_back({"symmetry of the scaled kernel", asym, 1e-12, asym <= 1e-12});
  {
    const auto k = ScalingMap::make(ScalingKind::SoftLaguerre0, 200)
                       .apply(kernels::KernelSpec::finite_cd(specfun::PolyFamily::laguerre(0.0), 200));
    const double v = std::abs(k(0.0, 1.0) - limit(0.0, 1.0));
    tab.checks.push_back({"N=200, (0,1): |scaled K_N - K^soft|", v, 0.02, v <= 0.02});
  }
  {
    double prev = std::numeric_limits<double>::infinity();
    bool mono = true;
    double last = 0.0;
    for (int N : N_list) {
      const auto k = ScalingMap::make(ScalingKind::SoftLaguerre0, N)
                         .apply(kernels::KernelSpec::finite_cd(specfun::PolyFamily::laguerre(0.0), N));
      last = std::abs(k(0.0, 0.0) - limit(0.0, 0.0));
      mono = mono && last < prev;
      prev = last;
    }
    tab.checks.push_back({"error at (0,0) decreases monotonically in N", last, 0.0, mono});
  }
  tab.finalize();
  return tab;
}

ConvergenceTable verify_jacobi_bessel_estimate(const std::vector<int>& N_list, const std::vector<double>& c_grid,
                                               double a, BesselPrefactor prefactor) {
  auto jacobi_rhs = [prefactor](int n, double a, double theta) {
    return jacobi_bessel_approximation(n, a, theta, prefactor);
  };
  ConvergenceTable tab;
  tab.name = prefactor == BesselPrefactor::Szego ? "jacobi-bessel" : "jacobi-bessel-degree";
  tab.point_names = {"c", "theta"};
  tab.N_list = N_list;
  tab.slope_bound = -1.5;
  if (!(a > -1.0)) throw InvalidParameter("a must exceed -1");
  for (double c : c_grid)
    if (!(c > 0.0) || c > 20.0) throw InvalidParameter("n theta must lie in (0, 20]");
  for (int n : N_list) {
    if (n < 1) throw InvalidParameter("n must be positive");
    for (double c : c_grid) {
      const double th = c / n;
      const double f = jacobi_lhs(n, a, th);
      const double l = jacobi_rhs(n, a, th);
      tab.rows.push_back({n, {c, th}, f, l, std::abs(f - l) / std::abs(l)});
    }
    const double th = 5.0 / n;
    tab.fit_series.push_back(std::abs(jacobi_lhs(n, a, th) / jacobi_rhs(n, a, th) - 1.0));
  }
  if (a == 0.0) {
    const double v = std::abs(jacobi_lhs(200, 0.0, 0.01) / jacobi_rhs(200, 0.0, 0.01) - 1.0);
    tab.checks.push_back({"n=200, a=0, theta=0.01: relative error", v, 1e-3, v < 1e-3});
  }
  {
    const double v = std::abs(jacobi_lhs(50, a, 1e-6) / jacobi_rhs(50, a, 1e-6) - 1.0);
    tab.checks.push_back({"theta -> 0: LHS/RHS -> 1", v, 1e-6, v < 1e-6});
  }
  tab.finalize();
  return tab;
}

// ---------------------------------------------------------------------------
// Decimated limits

ConvergenceTable verify_decimated_correlation_limits(Edge edge, const std::vector<int>& N_list,
                                                     const std::vector<std::vector<double>>& points, double a) {
  ConvergenceTable tab;
  tab.name = edge == Edge::Soft ? "rho-soft" : "rho-hard";
  tab.point_names = {"x1", "x2", "x3"};
  tab.N_list = N_list;
  tab.slope_bound = edge == Edge::Soft ? -0.2 : -0.7;
  for (const auto& p : points) {
    if (p.empty() || p.size() > 3) throw InvalidParameter("point sets must have 1 to 3 points");
    for (double x : p) {
      const bool ok = edge == Edge::Soft ? (x >= -2.0 && x <= 4.0) : (x > 0.0 && x <= 20.0);
      if (!ok) throw InvalidParameter("point outside the verification window");
    }
  }
  const auto limit = limit_decimated(edge, a);
  for (int N : N_list) {
    require_even(N);
    const auto k = finite_decimated(edge, N, a);
    for (const auto& p : points) {
      const double f = kernels::correlation_det(k, p);
      const double l = kernels::correlation_det(limit, p);
      tab.rows.push_back({N, p, f, l, std::abs(f - l)});
    }
  }
  tab.finalize();
  return tab;
}

double finite_genfun(Edge edge, int N, double s, double xi, double a, int m) {
  fredholm::require_xi(xi);
  require_even(N);
  if (xi == 0.0) return 1.0;
  const auto k = finite_decimated(edge, N, a);
  const auto rule = edge == Edge::Soft ? quad::soft_edge_rule(s, m) : quad::hard_edge_rule(s, a, m);
  return fredholm::det_i_minus(fredholm::discretize(k, rule), xi);
}

ConvergenceTable verify_genfun_limits(Edge edge, const std::vector<double>& xi_list, const std::vector<double>& s_list,
                                      const std::vector<int>& N_list, double a, int m) {
  ConvergenceTable tab;
  tab.name = edge == Edge::Soft ? "f1" : "f2";
  tab.point_names = {"xi", "s"};
  tab.N_list = N_list;
  tab.slope_bound = edge == Edge::Soft ? -0.2 : -0.7;
  for (double xi : xi_list)
    for (double s : s_list) {
      const double l = edge == Edge::Soft ? fredholm::genfun_soft(s, xi, m).value : fredholm::genfun_hard(s, xi, a, m).value;
      for (int N : N_list) {
        const double f = finite_genfun(edge, N, s, xi, a, m);
        tab.rows.push_back({N, {xi, s}, f, l, std::abs(f - l)});
      }
    }
  tab.finalize();
  return tab;
}

// ---------------------------------------------------------------------------
// Monte Carlo

std::vector<std::vector<double>> scaled_decimated_samples(Edge edge, int N, std::size_t n_samples,
                                                          std::uint64_t seed, double a, const quad::Interval& window,
                                                          Exec exec) {
  require_even(N);
  const auto spec = edge == Edge::Soft ? ensembles::EnsembleSpec::laguerre(1, N, 0.0)
                                       : ensembles::EnsembleSpec::jacobi(1, N, 0.5 * (a - 1.0), 0.0);
  const auto map = ScalingMap::make(edge == Edge::Soft ? ScalingKind::SoftLaguerre0 : ScalingKind::HardJacobi, N);
  std::vector<std::vector<double>> out;
  out.reserve(n_samples);
  constexpr std::size_t kChunk = 4096;
  for (std::size_t start = 0; start < n_samples; start += kChunk) {
    const std::size_t count = std::min(kChunk, n_samples - start);
    // labels run from the right, so the points above the window's lower end
    // (in x) carry the same labels as in the full superposition
    const double x_lo = edge == Edge::Soft ? map.to_finite(window.lo) : map.to_finite(window.hi);
    const auto batch = std::isfinite(x_lo) ? ensembles::sample_batch_above(spec, 2 * count, seed, x_lo, 2 * start, exec)
                                           : ensembles::sample_batch(spec, 2 * count, seed, 2 * start, exec);
    for (std::size_t i = 0; i < count; ++i) {
      const auto odd = ensembles::decimated_superposition(batch[2 * i], batch[2 * i + 1], ensembles::Parity::Odd,
                                                          ensembles::LabelEdge::Right);
      std::vector<double> pts;
      for (double x : odd) {
        const double X = map.to_edge(x);
        if (X > window.lo && X < window.hi) pts.push_back(X);
      }
      std::sort(pts.begin(), pts.end());
      out.push_back(std::move(pts));
    }
  }
  return out;
}

MonteCarloCheck monte_carlo_genfun_check(Edge edge, int N, double s, double xi, std::size_t n_samples,
                                         std::uint64_t seed, double a) {
  fredholm::require_xi(xi);
  const quad::Interval J = edge == Edge::Soft ? quad::Interval{s, std::numeric_limits<double>::infinity()}
                                              : quad::Interval{0.0, s};
  const auto samples = scaled_decimated_samples(edge, N, n_samples, seed, a, J);
  MonteCarloCheck c;
  c.empirical = ensembles::empirical_genfun(samples, J, xi);
  c.finite_value = finite_genfun(edge, N, s, xi, a);
  c.limit_value = edge == Edge::Soft ? fredholm::genfun_soft(s, xi).value : fredholm::genfun_hard(s, xi, a).value;
  const double se = c.empirical.std_error;
  auto z = [se](double d) { return d == 0.0 ? 0.0 : (se > 0.0 ? d / se : std::numeric_limits<double>::infinity()); };
  c.z_limit = z(std::abs(c.empirical.estimate - c.limit_value));
  c.z_finite = z(std::abs(c.empirical.estimate - c.finite_value));
  c.pass = c.z_limit <= 3.0;
  return c;
}

}  // namespace edgegap::limits
