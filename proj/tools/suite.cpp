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
#include "suite.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "edgegap/ensembles.hpp"
#include "edgegap/fredholm.hpp"
#include "edgegap/kernels.hpp"
#include "edgegap/limits.hpp"
#include "edgegap/quadrature.hpp"
#include "edgegap/version.hpp"

namespace edgegap::suite {
namespace {

using kernels::KernelSpec;
using kernels::RankOnePerturbation;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

double factorized_det(const KernelSpec& k, const RankOnePerturbation& p, const quad::QuadratureRule& rule, double xi,
                      Mutation mutation) {
  auto op = fredholm::discretize(k, rule);
  if (mutation == Mutation::SoftKernelSign && p.edge == kernels::Edge::Soft) op.matrix = -op.matrix;
  return fredholm::det_i_minus(op, xi) * fredholm::rank_one_factor(op, p, xi);
}

Json table_json(const limits::ConvergenceTable& t) {
  Json j;
  j["name"] = t.name;
  j["N"] = t.N_list;
  j["sup_error"] = t.sup_error;
  if (!t.fit_series.empty()) j["fit_series"] = t.fit_series;
  j["slope"] = t.fit.reported ? Json(t.fit.slope) : Json(nullptr);
  j["r2"] = t.fit.r2;
  j["slope_bound"] = t.slope_bound;
  j["exact"] = t.exact;
  Json checks = Json::array();
  for (const auto& c : t.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}, {"binding", c.binding}});
  j["checks"] = checks;
  j["pass"] = t.pass;
  return j;
}

CheckResult make_result(int criterion, std::string title) {
  CheckResult r;
  r.criterion = criterion;
  r.title = std::move(title);
  return r;
}

Json ks_json(const ensembles::KsResult& r) { return {{"D", r.statistic}, {"p", r.p_value}}; }

// Ordered pair x1 < x2 of the two-point density w(x1) w(x2) (x2 - x1) in a
// variable v with x = X(v) increasing and mu(v) = w(X(v)) X'(v).  Split at
// v = vc into the regions with 0, 1 and 2 points above X(vc); each region is
// a list of (weight * density) values on a nested Gauss-Legendre grid.
struct PairMeasure {
  std::function<double(double)> X;
  std::function<double(double)> mu;
  double lo, c, hi;
};

std::array<std::vector<double>, 3> pair_regions(const PairMeasure& pm, int m) {
  std::array<std::vector<double>, 3> out;
  auto nested = [&](double a1, double b1, bool inner_from_outer, double a2_fixed, double b2, int r) {
    const auto outer = quad::gauss_legendre(a1, b1, m);
    for (size_t i = 0; i < outer.size(); ++i) {
      const double v1 = outer.nodes[i];
      const auto in = quad::gauss_legendre(inner_from_outer ? v1 : a2_fixed, b2, m);
      for (size_t j = 0; j < in.size(); ++j) {
        const double v2 = in.nodes[j];
        out[r].push_back(outer.weights[i] * in.weights[j] * pm.mu(v1) * pm.mu(v2) * (pm.X(v2) - pm.X(v1)));
      }
    }
  };
  nested(pm.lo, pm.c, true, 0.0, pm.c, 0);
  nested(pm.lo, pm.c, false, pm.c, pm.hi, 1);
  nested(pm.c, pm.hi, true, 0.0, pm.hi, 2);
  return out;
}

std::vector<double> four_fold_odd_counts(const std::array<std::vector<double>, 3>& reg) {
  // counts of the two copies add; the odd-labelled count is ceil(M / 2)
  std::vector<double> mass(3, 0.0);
  double total = 0.0;
  for (int r1 = 0; r1 < 3; ++r1)
    for (int r2 = 0; r2 < 3; ++r2) {
      double s = 0.0;
      for (double u : reg[r1])
        for (double v : reg[r2]) s += u * v;
      mass[(r1 + r2 + 1) / 2] += s;
      total += s;
    }
  for (auto& v : mass) v /= total;
  return mass;
}

MicroOracle compare(const std::vector<double>& direct, const std::function<double(double)>& genfun) {
  MicroOracle o;
  o.direct = direct;
  o.fredholm = fredholm::gap_probabilities_from_genfun(genfun, 2);
  for (int n = 0; n < 3; ++n) o.max_abs_diff = std::max(o.max_abs_diff, std::abs(o.direct[n] - o.fredholm[n]));
  return o;
}

Json oracle_json(const MicroOracle& o) {
  return {{"direct", o.direct}, {"fredholm", o.fredholm}, {"max_abs_diff", o.max_abs_diff}};
}

}  // namespace

MicroOracle micro_oracle_laguerre(double s) {
  constexpr double kTail = 80.0;
  const PairMeasure pm{[](double x) { return x; }, [](double x) { return std::exp(-0.5 * x); }, 0.0, s, s + kTail};
  const auto op = fredholm::discretize(KernelSpec::decimated_laguerre(2), quad::gauss_legendre(s, s + kTail, 80));
  return compare(four_fold_odd_counts(pair_regions(pm, 32)),
                 [&op](double xi) { return fredholm::det_i_minus(op, xi); });
}

MicroOracle micro_oracle_jacobi(double a, double t) {
  // x = 1 - v^2, v < 0, removes the (1 - x)^{(a-1)/2} end-point behaviour
  const PairMeasure pm{[](double v) { return 1.0 - v * v; },
                       [a](double v) { return 2.0 * std::pow(-v, a); },
                       -std::sqrt(2.0), -std::sqrt(1.0 - t), 0.0};
  quad::QuadratureRule rule = quad::gauss_legendre(0.0, std::sqrt(1.0 - t), 40);
  for (size_t i = 0; i < rule.size(); ++i) {
    const double u = rule.nodes[i];
    rule.nodes[i] = 1.0 - u * u;
    rule.weights[i] *= 2.0 * u;
  }
  rule.map = "x = 1 - u^2";
  const auto op = fredholm::discretize(KernelSpec::decimated_jacobi(a, 2), rule);
  return compare(four_fold_odd_counts(pair_regions(pm, 32)),
                 [&op](double xi) { return fredholm::det_i_minus(op, xi); });
}

// ---------------------------------------------------------------------------

CheckResult kernel_form_equivalence(const Options&) {
  CheckResult r = make_result(1, "kernel-form equivalence (CD vs integral forms)");
  double soft_err = 0.0;
  const auto g = linspace(-3.0, 5.0, 20);
  for (double x : g)
    for (double y : g)
      soft_err = std::max(soft_err, std::abs(kernels::soft_kernel(x, y) - kernels::soft_kernel_integral_form(x, y)));
  Json hard = Json::object();
  double hard_err = 0.0;
  const auto h = linspace(0.1, 20.0, 20);
  for (double a : {0.0, 0.5, 1.0, 2.5}) {
    double e = 0.0;
    for (double x : h)
      for (double y : h)
        e = std::max(e, std::abs(kernels::hard_kernel(a, x, y) - kernels::hard_kernel_integral_form(a, x, y)));
    hard[std::to_string(a)] = e;
    hard_err = std::max(hard_err, e);
  }
  r.detail = {{"soft_max_error", soft_err}, {"hard_max_error", hard}, {"tolerance", 1e-10}};
  r.pass = soft_err <= 1e-10 && hard_err <= 1e-10;
  return r;
}

CheckResult determinant_lemma(const Options& opt) {
  CheckResult r = make_result(2, "determinant lemma: augmented kernel vs det x rank-one factor");
  Json rows = Json::array();
  double worst = 0.0;
  auto one = [&](const std::string& edge, double s, double xi, double a) {
    const bool soft = edge == "soft";
    const auto rule = soft ? quad::soft_edge_rule(s, fredholm::kDefaultNodes)
                           : quad::hard_edge_rule(s, a, fredholm::kDefaultNodes);
    const auto K = soft ? KernelSpec::soft_airy() : KernelSpec::hard_bessel(a);
    const auto L = soft ? KernelSpec::decimated_soft_limit() : KernelSpec::decimated_hard_limit(a);
    const auto p = soft ? RankOnePerturbation::soft() : RankOnePerturbation::hard(a);
    const double augmented = fredholm::det_i_minus(fredholm::discretize(L, rule), xi);
    const double factorized = factorized_det(K, p, rule, xi, opt.mutation);
    const double d = std::abs(augmented - factorized);
    worst = std::max(worst, d);
    rows.push_back({{"edge", edge}, {"s", s}, {"xi", xi}, {"a", a}, {"augmented", augmented},
                    {"factorized", factorized}, {"abs_diff", d}});
  };
  one("soft", -1.0, 0.3, 0.0);
  one("soft", 0.0, 1.0, 0.0);
  one("soft", 2.0, 0.7, 0.0);
  one("hard", 2.0, 0.5, 0.0);
  one("hard", 6.0, 1.0, 2.0);
  r.detail = {{"rows", rows}, {"max_abs_diff", worst}, {"tolerance", 1e-12}};
  r.pass = worst <= 1e-12;
  return r;
}

CheckResult series_cross_check(const Options&) {
  CheckResult r = make_result(3, "series (n_max = 6) vs Nystrom");
  constexpr int kSeriesNodes = 24;
  const auto ss = fredholm::genfun_series_oracle(KernelSpec::decimated_soft_limit(),
                                                 fredholm::series_rule_soft(2.0, kSeriesNodes), 0.3, 6);
  const double ns = fredholm::genfun_soft(2.0, 0.3).value;
  const auto sh = fredholm::genfun_series_oracle(KernelSpec::decimated_hard_limit(1.0),
                                                 fredholm::series_rule_hard(1.0, kSeriesNodes), 0.3, 6);
  const double nh = fredholm::genfun_hard(1.0, 0.3, 1.0).value;
  const double ds = std::abs(ss.value - ns), dh = std::abs(sh.value - nh);
  r.detail = {{"soft", {{"s", 2.0}, {"xi", 0.3}, {"series", ss.value}, {"last_term", ss.last_term}, {"nystrom", ns},
                        {"abs_diff", ds}}},
              {"hard", {{"s", 1.0}, {"xi", 0.3}, {"a", 1.0}, {"series", sh.value}, {"last_term", sh.last_term},
                        {"nystrom", nh}, {"abs_diff", dh}}},
              {"tolerance", 1e-6}};
  r.pass = ds <= 1e-6 && dh <= 1e-6;
  return r;
}

CheckResult xi_one_consistency(const Options&) {
  CheckResult r = make_result(4, "genfun_soft(s, 1) = e1_soft_det(s)^2");
  Json rows = Json::array();
  double worst = 0.0;
  for (double s : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    const double g = fredholm::genfun_soft(s, 1.0).value;
    const double e = fredholm::e1_soft_det(s);
    const double d = std::abs(g - e * e);
    worst = std::max(worst, d);
    rows.push_back({{"s", s}, {"genfun", g}, {"e1_squared", e * e}, {"abs_diff", d}});
  }
  r.detail = {{"rows", rows}, {"max_abs_diff", worst}, {"tolerance", 1e-6}};
  r.pass = worst <= 1e-6;
  return r;
}

CheckResult quadrature_convergence(const Options&) {
  CheckResult r = make_result(5, "quadrature convergence |v(40) - v(80)|");
  Json rows = Json::array();
  double worst = 0.0;
  auto add = [&](const std::string& what, double s, double xi, double a, double v40, double v80) {
    const double d = std::abs(v40 - v80);
    worst = std::max(worst, d);
    rows.push_back({{"determinant", what}, {"s", s}, {"xi", xi}, {"a", a}, {"m40", v40}, {"m80", v80}, {"abs_diff", d}});
  };
  for (double s : {-2.0, 0.0, 2.0})
    for (double xi : {0.5, 1.0}) {
      add("genfun_soft", s, xi, 0.0, fredholm::genfun_soft(s, xi, 40).value, fredholm::genfun_soft(s, xi, 80).value);
      const auto d = fredholm::fredholm_det(KernelSpec::soft_airy(), quad::SoftEdgeDomain{s}, xi, 40);
      add("det(I - xi K_soft)", s, xi, 0.0, d.value, fredholm::fredholm_det(KernelSpec::soft_airy(), quad::SoftEdgeDomain{s}, xi, 80).value);
    }
  for (double s : {-2.0, 0.0, 2.0}) add("e1_soft_det", s, 1.0, 0.0, fredholm::e1_soft_det(s, 40), fredholm::e1_soft_det(s, 80));
  for (double a : {0.0, 1.0, 2.0})
    for (double s : {0.5, 4.0, 6.0})
      for (double xi : {0.5, 1.0}) {
        add("genfun_hard", s, xi, a, fredholm::genfun_hard(s, xi, a, 40).value, fredholm::genfun_hard(s, xi, a, 80).value);
        add("det(I - xi K_hard)", s, xi, a,
            fredholm::fredholm_det(KernelSpec::hard_bessel(a), quad::HardEdgeDomain{s, a}, xi, 40).value,
            fredholm::fredholm_det(KernelSpec::hard_bessel(a), quad::HardEdgeDomain{s, a}, xi, 80).value);
      }
  r.detail = {{"rows", rows}, {"max_abs_diff", worst}, {"tolerance", 1e-9}};
  r.pass = worst < 1e-9;
  return r;
}

CheckResult superposition_theorem(const Options& opt) {
  CheckResult r = make_result(6, "superposition theorem even(OE u OE) = UE (KS, 2 of 3 seeds)");
  r.stochastic = true;
  r.seed = opt.seed;
  Json pairs = Json::object();
  bool ok = true;
  struct Case {
    const char* name;
    ensembles::SuperposedPair pair;
    double a;
  };
  for (const Case c : {Case{"laguerre", ensembles::SuperposedPair::Laguerre, 0.0},
                       Case{"jacobi", ensembles::SuperposedPair::Jacobi, 3.0}}) {
    Json seeds = Json::array();
    int passed = 0;
    for (std::uint64_t k = 0; k < 3; ++k) {
      const auto rep = ensembles::superposition_identity_check(c.pair, c.a, 8, 20000, opt.seed + k);
      passed += rep.pass ? 1 : 0;
      seeds.push_back({{"seed", opt.seed + k}, {"largest", ks_json(rep.largest)},
                       {"second_largest", ks_json(rep.second_largest)}, {"smallest", ks_json(rep.smallest)},
                       {"pass", rep.pass}});
    }
    const auto neg = ensembles::superposition_identity_check(c.pair, c.a, 8, 100000, opt.seed, 2.0);
    const bool rejects = neg.largest.p_value < 1e-3 && neg.second_largest.p_value < 1e-3 && neg.smallest.p_value < 1e-3;
    pairs[c.name] = {{"a", c.a},
                     {"N", 8},
                     {"seeds", seeds},
                     {"seeds_passed", passed},
                     {"negative_control", {{"ue_a", neg.ue_a}, {"samples", 100000}, {"largest", ks_json(neg.largest)},
                                           {"second_largest", ks_json(neg.second_largest)},
                                           {"smallest", ks_json(neg.smallest)}, {"rejects", rejects}}}};
    ok = ok && passed >= 2 && rejects;
  }
  r.detail = pairs;
  r.pass = ok;
  return r;
}

CheckResult soft_limit_formula(const Options&) {
  CheckResult r = make_result(7, "soft limit formula: E_N -> genfun_soft at (s, xi) = (0, 1)");
  const auto t = limits::verify_genfun_limits(kernels::Edge::Soft, {1.0}, {0.0}, {20, 40, 80, 160});
  const double e160 = t.rows.back().abs_error;
  r.detail = table_json(t);
  r.detail["E_N"] = Json::array();
  for (const auto& row : t.rows) r.detail["E_N"].push_back(row.finite_value);
  r.detail["E_inf"] = t.rows.back().limit_value;
  r.detail["abs_error_160"] = e160;
  r.detail["tolerance_160"] = 0.02;
  r.pass = t.pass && e160 < 0.02;
  return r;
}

CheckResult hard_limit_formula(const Options&) {
  CheckResult r = make_result(8, "hard limit formula: E_N -> genfun_hard at (s, xi, a) = (4, 1, 2)");
  const auto t = limits::verify_genfun_limits(kernels::Edge::Hard, {1.0}, {4.0}, {20, 40, 80, 160}, 2.0);
  const double e160 = t.rows.back().abs_error;
  r.detail = table_json(t);
  r.detail["E_N"] = Json::array();
  for (const auto& row : t.rows) r.detail["E_N"].push_back(row.finite_value);
  r.detail["E_inf"] = t.rows.back().limit_value;
  r.detail["abs_error_160"] = e160;
  r.detail["tolerance_160"] = 0.01;
  r.pass = t.pass && e160 < 0.01;
  return r;
}

CheckResult uniform_estimates(const Options&) {
  CheckResult r = make_result(9, "uniform estimates: Laguerre-Airy and Jacobi-Bessel");
  const std::vector<int> Ns{50, 100, 200, 400};
  const auto lag = limits::verify_laguerre_airy_estimate(Ns, linspace(-3.0, 8.0, 23));
  bool ok = lag.pass;
  r.detail["laguerre_airy"] = table_json(lag);
  Json jb = Json::object(), degree = Json::object();
  for (double a : {0.0, 1.0, 2.5}) {
    const auto t = limits::verify_jacobi_bessel_estimate(Ns, {1.0, 2.0, 5.0, 10.0, 20.0}, a);
    const auto p = limits::verify_jacobi_bessel_estimate(Ns, {1.0, 2.0, 5.0, 10.0, 20.0}, a,
                                                         limits::BesselPrefactor::Degree);
    jb[std::to_string(a)] = table_json(t);
    degree[std::to_string(a)] = {{"slope", p.fit.slope}, {"pass", p.pass}};
    ok = ok && t.pass;
  }
  r.detail["jacobi_bessel"] = jb;
  r.detail["jacobi_bessel_degree_prefactor"] = degree;
  r.pass = ok;
  return r;
}

CheckResult monte_carlo_closure(const Options& opt) {
  CheckResult r = make_result(10, "Monte Carlo closure: empirical genfun vs limit (3 standard errors)");
  r.stochastic = true;
  r.seed = opt.seed;
  auto js = [](const limits::MonteCarloCheck& c) {
    return Json{{"estimate", c.empirical.estimate}, {"std_error", c.empirical.std_error}, {"limit", c.limit_value},
                {"finite_N", c.finite_value}, {"z_limit", c.z_limit}, {"z_finite_N", c.z_finite}, {"pass", c.pass}};
  };
  const auto hard = limits::monte_carlo_genfun_check(kernels::Edge::Hard, 100, 4.0, 1.0, 100000, opt.seed, 1.0);
  const auto soft = limits::monte_carlo_genfun_check(kernels::Edge::Soft, 200, 0.0, 1.0, 100000, opt.seed);
  r.detail = {{"hard", js(hard)}, {"soft", js(soft)}, {"samples", 100000}};
  r.detail["hard"]["N"] = 100;
  r.detail["soft"]["N"] = 200;
  r.pass = hard.pass && soft.pass;
  return r;
}

CheckResult brute_force_micro_oracle(const Options&) {
  CheckResult r = make_result(11, "N = 2 micro-oracle: 4-fold quadrature vs Fredholm");
  Json cases = Json::array();
  double worst = 0.0;
  auto add = [&](const std::string& ensemble, double a, double edge_point, const MicroOracle& o) {
    Json c = oracle_json(o);
    c["ensemble"] = ensemble;
    if (ensemble == "jacobi") c["a"] = a;
    c["interval"] = ensemble == "jacobi" ? Json{edge_point, 1.0} : Json{edge_point, "inf"};
    cases.push_back(c);
    worst = std::max(worst, o.max_abs_diff);
  };
  for (double s : {2.0, 3.0, 5.0}) add("laguerre", 0.0, s, micro_oracle_laguerre(s));
  for (double a : {0.0, 1.0, 3.0}) add("jacobi", a, 0.5, micro_oracle_jacobi(a, 0.5));
  r.detail = {{"cases", cases}, {"max_abs_diff", worst}, {"tolerance", 1e-4}};
  r.pass = worst <= 1e-4;
  return r;
}

CheckResult run_criterion(int k, const Options& opt) {
  using Fn = CheckResult (*)(const Options&);
  static const Fn table[] = {kernel_form_equivalence, determinant_lemma,  series_cross_check, xi_one_consistency,
                             quadrature_convergence,  superposition_theorem, soft_limit_formula, hard_limit_formula,
                             uniform_estimates,       monte_carlo_closure, brute_force_micro_oracle};
  if (k < 1 || k > 11) throw std::out_of_range("criterion must be 1..11");
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r = table[k - 1](opt);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<int> suite_criteria(const std::string& name) {
  if (name == "fast") return {1, 2, 3, 4, 5, 7, 8, 9, 11};
  if (name == "full") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw std::invalid_argument("unknown suite '" + name + "' (expected fast or full)");
}

Json report_json(const std::string& name, const Options& opt, const std::vector<CheckResult>& results) {
  Json j;
  j["tool_version"] = kVersion;
  j["seed"] = opt.seed;
  j["config"] = {{"suite", name}, {"mutation", opt.mutation == Mutation::None ? "none" : "soft-kernel-sign"}};
  Json checks = Json::array();
  bool all = true;
  for (const auto& r : results) {
    Json c;
    c["criterion"] = r.criterion;
    c["title"] = r.title;
    c["pass"] = r.pass;
    if (r.stochastic) c["seed"] = r.seed;
    c["detail"] = r.detail;
    checks.push_back(c);
    all = all && r.pass;
  }
  j["checks"] = checks;
  j["pass"] = all;
  return j;
}

}  // namespace edgegap::suite
