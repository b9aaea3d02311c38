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
#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "edgegap/ensembles.hpp"
#include "edgegap/error.hpp"
#include "edgegap/fredholm.hpp"
#include "edgegap/kernels.hpp"
#include "edgegap/limits.hpp"
#include "edgegap/parallel.hpp"
#include "edgegap/specfun.hpp"
#include "edgegap/version.hpp"
#include "suite.hpp"

namespace {

using edgegap::suite::Json;
namespace eg = edgegap;
namespace ens = edgegap::ensembles;
namespace lim = edgegap::limits;
using eg::kernels::Edge;
using eg::kernels::KernelSpec;

constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json header(std::optional<std::uint64_t> seed, const Json& config) {
  Json j;
  j["tool_version"] = eg::kVersion;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["config"] = config;
  return j;
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void close() {
    if (path_.empty()) return;
    file_.close();
    if (!file_) throw UsageError("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

class Timer {
 public:
  explicit Timer(std::string what) : what_(std::move(what)), t0_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    std::fprintf(stderr, "[%s] %.2f s\n", what_.c_str(), s);
  }

 private:
  std::string what_;
  std::chrono::steady_clock::time_point t0_;
};

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t prev = row[0]++;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t cur = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, prev + (a[i - 1] == b[j - 1] ? 0 : 1)});
      prev = cur;
    }
  }
  return row[b.size()];
}

const CLI::App* deepest(const CLI::App* app) {
  for (const auto* sub : app->get_subcommands())
    if (sub->parsed()) return deepest(sub);
  return app;
}

std::string suggestion(const CLI::App& app, const std::vector<std::string>& extras) {
  const CLI::App* sub = deepest(&app);
  for (const auto& e : extras) {
    if (e.rfind("--", 0) != 0) continue;
    std::string flag = e.substr(0, e.find('='));
    std::string best;
    std::size_t best_d = std::numeric_limits<std::size_t>::max();
    for (const auto* opt : sub->get_options()) {
      for (const auto& name : opt->get_lnames()) {
        const std::size_t d = edit_distance(flag.substr(2), name);
        if (d < best_d) best_d = d, best = name;
      }
    }
    if (!best.empty() && best_d <= 3) return "unknown flag " + flag + "; did you mean --" + best + "?";
    return "unknown flag " + flag;
  }
  return {};
}

std::vector<int> doubling(int nmin, int nmax) {
  if (nmin < 2 || nmax < nmin) throw UsageError("need 2 <= --nmin <= --nmax");
  std::vector<int> v;
  for (int n = nmin; n <= nmax; n *= 2) v.push_back(n);
  return v;
}

std::vector<double> grid(double lo, double hi, int n) {
  if (n < 2) return {lo};
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

eg::quad::Interval parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("interval must be 'lo,hi' (hi may be inf)");
  auto num = [](std::string s) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("bad number '" + s + "' in interval");
    return v;
  };
  const eg::quad::Interval J{num(text.substr(0, comma)), num(text.substr(comma + 1))};
  if (!(J.lo < J.hi)) throw UsageError("interval must satisfy lo < hi");
  return J;
}

// ---------------------------------------------------------------------------
// specfun

struct SpecfunArgs {
  std::string fn = "airy";
  double order = 0.0;
  double x = 0.0;
};

int run_specfun(const SpecfunArgs& a) {
  eg::specfun::ValueDeriv r{};
  if (a.fn == "airy") {
    r = eg::specfun::airy_ai(a.x);
  } else if (a.fn == "besselj") {
    r = eg::specfun::bessel_j(a.order, a.x);
  } else if (a.fn == "airy-tail") {
    r = {eg::specfun::airy_tail_integral(a.x), 0.0};
    r.derivative = -eg::specfun::airy_ai(a.x).value;
  } else {
    throw UsageError("--fn must be airy, besselj or airy-tail");
  }
  std::cout << fmt(r.value) << " " << fmt(r.derivative) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// kernel

struct KernelArgs {
  std::string kind = "soft";
  double a = 0.0;
  int N = 4;
  double x = 0.0;
  double y = 0.0;
  double lo = -2.0;
  double hi = 4.0;
  int n = 41;
  std::string out;
};

KernelSpec make_kernel(const KernelArgs& k) {
  if (k.kind == "soft") return KernelSpec::soft_airy();
  if (k.kind == "hard") return KernelSpec::hard_bessel(k.a);
  if (k.kind == "decimated-soft") return KernelSpec::decimated_soft_limit();
  if (k.kind == "decimated-hard") return KernelSpec::decimated_hard_limit(k.a);
  if (k.kind == "decimated-laguerre") return KernelSpec::decimated_laguerre(k.N);
  if (k.kind == "decimated-jacobi") return KernelSpec::decimated_jacobi(k.a, k.N);
  throw UsageError("--kind must be soft, hard, decimated-soft, decimated-hard, decimated-laguerre or decimated-jacobi");
}

int run_kernel_eval(const KernelArgs& k) {
  std::cout << fmt(make_kernel(k)(k.x, k.y)) << "\n";
  return 0;
}

int run_kernel_grid(const KernelArgs& k) {
  const auto K = make_kernel(k);
  const auto g = grid(k.lo, k.hi, k.n);
  Output out(k.out);
  out.stream() << "x,y,value\n";
  for (double x : g)
    for (double y : g) out.stream() << fmt(x) << "," << fmt(y) << "," << fmt(K(x, y)) << "\n";
  out.close();
  return 0;
}

// ---------------------------------------------------------------------------
// genfun / gapprob

struct GenfunArgs {
  double s = 0.0;
  double xi = 1.0;
  double a = 0.0;
  int m = eg::fredholm::kDefaultNodes;
  int kmax = 3;
  std::string edge = "soft";
  double smin = -4.0;
  double smax = 4.0;
  int ns = 17;
  std::string out;
};

eg::fredholm::GenFnValue genfun(Edge edge, double s, double xi, double a, int m) {
  return edge == Edge::Soft ? eg::fredholm::genfun_soft(s, xi, m) : eg::fredholm::genfun_hard(s, xi, a, m);
}

Json genfun_config(const std::string& cmd, Edge edge, const GenfunArgs& g) {
  Json c{{"command", cmd}, {"s", g.s}, {"xi", g.xi}};
  if (edge == Edge::Hard) c["a"] = g.a;
  c["m"] = g.m;
  return c;
}

int run_genfun(Edge edge, const GenfunArgs& g) {
  const auto v = genfun(edge, g.s, g.xi, g.a, g.m);
  Json j = header(std::nullopt, genfun_config(edge == Edge::Soft ? "genfun soft" : "genfun hard", edge, g));
  j["value"] = v.value;
  j["error_estimate"] = v.richardson_error;
  j["m_used"] = v.m_used;
  emit_json(j);
  return 0;
}

int run_gapprob(Edge edge, const GenfunArgs& g) {
  if (g.kmax < 0 || g.kmax > 12) throw UsageError("--kmax must lie in 0..12");
  auto probs = [&](int m) {
    return eg::fredholm::gap_probabilities_from_genfun(
        [&](double xi) { return genfun(edge, g.s, xi, g.a, m).value; }, g.kmax);
  };
  const auto p = probs(g.m);
  const auto p2 = probs(2 * g.m);
  double err = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) err = std::max(err, std::abs(p[k] - p2[k]));
  Json c{{"command", edge == Edge::Soft ? "gapprob soft" : "gapprob hard"}, {"s", g.s}};
  if (edge == Edge::Hard) c["a"] = g.a;
  c["kmax"] = g.kmax;
  c["m"] = g.m;
  Json j = header(std::nullopt, c);
  j["value"] = p;
  j["error_estimate"] = err;
  j["m_used"] = g.m;
  emit_json(j);
  return 0;
}

int run_genfun_sweep(const GenfunArgs& g) {
  if (g.edge != "soft" && g.edge != "hard") throw UsageError("--edge must be soft or hard");
  const Edge edge = g.edge == "soft" ? Edge::Soft : Edge::Hard;
  Output out(g.out);
  out.stream() << "s,xi,value,err\n";
  for (double s : grid(g.smin, g.smax, g.ns)) {
    const auto v = genfun(edge, s, g.xi, g.a, g.m);
    out.stream() << fmt(s) << "," << fmt(g.xi) << "," << fmt(v.value) << "," << fmt(v.richardson_error) << "\n";
  }
  out.close();
  return 0;
}

// ---------------------------------------------------------------------------
// mc

struct McArgs {
  std::string ensemble = "loe";
  int beta = 0;
  int n = 4;
  double a = 0.0;
  double b = 0.0;
  std::size_t samples = 1000;
  std::uint64_t seed = edgegap::suite::Options{}.seed;
  std::string in;
  std::string out;
  std::string interval;
  double xi = 1.0;
  double pair_a = 3.0;
  std::size_t pairs = 100000;
  double s = 3.0;
};

ens::EnsembleSpec ensemble_from(const McArgs& m) {
  int beta = 0;
  ens::EnsembleSpec spec;
  if (m.ensemble == "goe") {
    beta = 1;
    spec = ens::EnsembleSpec::gaussian(1, m.n);
  } else if (m.ensemble == "loe" || m.ensemble == "lue") {
    beta = m.ensemble == "loe" ? 1 : 2;
    spec = ens::EnsembleSpec::laguerre(beta, m.n, m.a);
  } else if (m.ensemble == "joe" || m.ensemble == "jue") {
    beta = m.ensemble == "joe" ? 1 : 2;
    spec = ens::EnsembleSpec::jacobi(beta, m.n, m.a, m.b);
  } else {
    throw UsageError("--ensemble must be goe, loe, joe, lue or jue");
  }
  if (m.beta != 0 && m.beta != beta) throw UsageError("--beta contradicts --ensemble " + m.ensemble);
  spec.validate();
  return spec;
}

int run_mc_sample(const McArgs& m) {
  const auto spec = ensemble_from(m);
  Timer t("mc sample");
  const auto batch = ens::sample_batch(spec, m.samples, m.seed);
  Output out(m.out);
  for (int i = 0; i < spec.N; ++i) out.stream() << (i ? "," : "") << "x" << (i + 1);
  out.stream() << "\n";
  for (const auto& s : batch) {
    for (std::size_t i = 0; i < s.size(); ++i) out.stream() << (i ? "," : "") << fmt(s.eigenvalues[i]);
    out.stream() << "\n";
  }
  out.close();
  if (!m.out.empty()) {
    Json j = header(m.seed, {{"command", "mc sample"}, {"ensemble", spec.describe()}, {"beta", spec.beta},
                             {"n", spec.N}, {"a", spec.a}, {"b", spec.b}, {"samples", m.samples}});
    j["out"] = m.out;
    emit_json(j);
  }
  return 0;
}

std::vector<std::vector<double>> read_spectra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "' for reading");
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      if (!line.empty() && (std::isalpha(static_cast<unsigned char>(line[0])) || line[0] == '#')) continue;
    }
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw UsageError("'" + path + "': bad number '" + cell + "' on line " + std::to_string(rows.size() + 2));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_mc_genfun(const McArgs& m) {
  if (m.in.empty()) throw UsageError("--in is required");
  const auto J = parse_interval(m.interval);
  const auto rows = read_spectra(m.in);
  const auto e = ens::empirical_genfun(rows, J, m.xi);
  Json j = header(std::nullopt, {{"command", "mc genfun"}, {"in", m.in}, {"interval", m.interval}, {"xi", m.xi}});
  j["samples"] = rows.size();
  j["value"] = e.estimate;
  j["std_error"] = e.std_error;
  emit_json(j);
  return 0;
}

Json ks(const ens::KsResult& r) { return {{"D", r.statistic}, {"p", r.p_value}}; }

int run_mc_verify_as1(const McArgs& m) {
  Timer t("mc verify as1");
  Json c{{"command", "mc verify as1"}, {"N", m.n}, {"samples", m.samples}, {"jacobi_a", m.pair_a}};
  Json j = header(m.seed, c);
  bool ok = true;
  for (const auto& [name, pair, a] : {std::tuple{"laguerre", ens::SuperposedPair::Laguerre, 0.0},
                                      std::tuple{"jacobi", ens::SuperposedPair::Jacobi, m.pair_a}}) {
    const auto r = ens::superposition_identity_check(pair, a, m.n, m.samples, m.seed);
    j[name] = {{"a", r.a}, {"ue_a", r.ue_a}, {"largest", ks(r.largest)}, {"second_largest", ks(r.second_largest)},
               {"smallest", ks(r.smallest)}, {"pass", r.pass}};
    ok = ok && r.pass;
  }
  j["pass"] = ok;
  emit_json(j);
  return ok ? 0 : kExitFailed;
}

int run_mc_verify_counting(const McArgs& m) {
  Timer t("mc verify counting");
  const auto spec = ens::EnsembleSpec::laguerre(1, m.n, 0.0);
  const auto batch = ens::sample_batch(spec, 2 * m.pairs, m.seed);
  std::vector<std::vector<double>> c1, c2;
  c1.reserve(m.pairs);
  c2.reserve(m.pairs);
  for (std::size_t i = 0; i < m.pairs; ++i) {
    c1.push_back(batch[i].eigenvalues);
    c2.push_back(batch[m.pairs + i].eigenvalues);
  }
  const eg::quad::Interval J{m.s, std::numeric_limits<double>::infinity()};
  const auto r = ens::counting_relation_check(c1, c2, J);
  Json j = header(m.seed, {{"command", "mc verify counting"}, {"ensemble", spec.describe()}, {"pairs", m.pairs},
                           {"interval", {m.s, "inf"}}});
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n}, {"direct", row.direct}, {"derived", row.derived}, {"verbatim", row.verbatim},
                    {"std_error", row.std_error}});
  j["rows"] = rows;
  j["max_z"] = r.max_z;
  j["max_verbatim_discrepancy"] = r.max_verbatim_discrepancy;
  j["derived_total"] = r.derived_total;
  j["pass"] = r.pass;
  emit_json(j);
  return r.pass ? 0 : kExitFailed;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  int nmin = 0;
  int nmax = 0;
  std::uint64_t seed = edgegap::suite::Options{}.seed;
  std::optional<double> a;
  std::string out;
};

lim::ConvergenceTable run_table(const std::string& which, const VerifyArgs& v, Json& config) {
  auto ns = [&](int lo, int hi) { return doubling(v.nmin ? v.nmin : lo, v.nmax ? v.nmax : hi); };
  if (which == "jba") {
    const auto N = ns(50, 400);
    config["t_grid"] = "-3:8:0.5";
    return lim::verify_laguerre_airy_estimate(N, grid(-3.0, 8.0, 23));
  }
  if (which == "jb1") {
    const double a = v.a.value_or(0.0);
    config["a"] = a;
    return lim::verify_jacobi_bessel_estimate(ns(50, 400), {1.0, 2.0, 5.0, 10.0, 20.0}, a);
  }
  if (which == "xn1") return lim::verify_soft_kernel_limit(ns(50, 400), grid(-2.0, 4.0, 7));
  if (which == "rho-soft")
    return lim::verify_decimated_correlation_limits(Edge::Soft, ns(20, 160),
                                                    {{-1.0}, {0.0}, {1.0}, {0.0, 1.0}, {-1.0, 0.0, 1.0}});
  if (which == "rho-hard") {
    const double a = v.a.value_or(1.0);
    config["a"] = a;
    return lim::verify_decimated_correlation_limits(Edge::Hard, ns(20, 160), {{1.0}, {4.0}, {1.0, 4.0}, {1.0, 2.0, 4.0}},
                                                    a);
  }
  if (which == "f1") {
    config["xi"] = 1.0;
    config["s"] = 0.0;
    return lim::verify_genfun_limits(Edge::Soft, {1.0}, {0.0}, ns(20, 160));
  }
  if (which == "f2") {
    const double a = v.a.value_or(2.0);
    config["xi"] = 1.0;
    config["s"] = 4.0;
    config["a"] = a;
    return lim::verify_genfun_limits(Edge::Hard, {1.0}, {4.0}, ns(20, 160), a);
  }
  throw UsageError("unknown verification '" + which + "'");
}

int run_verify(const std::string& which, const VerifyArgs& v) {
  Timer t("verify " + which);
  Json config{{"command", "verify " + which}};
  const auto tab = run_table(which, v, config);
  config["N"] = tab.N_list;

  std::size_t width = tab.point_names.size();
  std::ostringstream csv;
  csv << "N";
  for (const auto& p : tab.point_names) csv << "," << p;
  csv << ",finite_value,limit_value,abs_error\n";
  for (const auto& r : tab.rows) {
    csv << r.N;
    for (std::size_t i = 0; i < width; ++i) csv << "," << (i < r.point.size() ? fmt(r.point[i]) : "");
    csv << "," << fmt(r.finite_value) << "," << fmt(r.limit_value) << "," << fmt(r.abs_error) << "\n";
  }

  Json j = header(v.seed, config);
  j["name"] = tab.name;
  j["slope"] = tab.fit.reported ? Json(tab.fit.slope) : Json(nullptr);
  j["r2"] = tab.fit.r2;
  j["slope_bound"] = tab.slope_bound;
  j["sup_error"] = tab.sup_error;
  Json checks = Json::array();
  for (const auto& c : tab.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}, {"binding", c.binding}});
  j["checks"] = checks;
  j["pass"] = tab.pass;
  if (v.out.empty()) {
    std::cout << csv.str();
  } else {
    Output out(v.out);
    out.stream() << csv.str();
    out.close();
    j["out"] = v.out;
  }
  emit_json(j);
  return tab.pass ? 0 : kExitFailed;
}

// ---------------------------------------------------------------------------
// suite

struct SuiteArgs {
  std::uint64_t seed = edgegap::suite::Options{}.seed;
  std::string mutate = "none";
  std::vector<int> only;
  std::string out;
};

int run_suite(const std::string& name, const SuiteArgs& s) {
  edgegap::suite::Options opt;
  opt.seed = s.seed;
  if (s.mutate == "soft-kernel-sign")
    opt.mutation = edgegap::suite::Mutation::SoftKernelSign;
  else if (s.mutate != "none")
    throw UsageError("--mutate must be none or soft-kernel-sign");
  std::vector<edgegap::suite::CheckResult> results;
  for (int k : edgegap::suite::suite_criteria(name)) {
    if (!s.only.empty() && std::find(s.only.begin(), s.only.end(), k) == s.only.end()) continue;
    results.push_back(edgegap::suite::run_criterion(k, opt));
    const auto& r = results.back();
    std::fprintf(stderr, "criterion %2d %-4s %s (%.1f s)\n", k, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
  }
  const Json report = edgegap::suite::report_json(name, opt, results);
  if (s.out.empty()) {
    emit_json(report);
  } else {
    Output out(s.out);
    out.stream() << report.dump(2) << "\n";
    out.close();
  }
  return report["pass"].get<bool>() ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgegap: gap probabilities at the edges of random matrix spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(eg::kVersion));

  SpecfunArgs sf;
  auto* specfun = app.add_subcommand("specfun", "special function evaluation");
  specfun->group("");
  specfun->require_subcommand(1);
  auto* sf_eval = specfun->add_subcommand("eval", "print value and derivative");
  sf_eval->add_option("--fn", sf.fn, "airy, besselj or airy-tail")->capture_default_str();
  sf_eval->add_option("--order", sf.order, "Bessel order");
  sf_eval->add_option("--x", sf.x, "argument")->required();

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "kernel evaluation");
  kernel->require_subcommand(1);
  auto kernel_common = [&ka](CLI::App* c) {
    c->add_option("--kind", ka.kind, "soft, hard, decimated-soft, decimated-hard, decimated-laguerre, decimated-jacobi")
        ->capture_default_str();
    c->add_option("--a", ka.a, "Bessel or Jacobi exponent")->capture_default_str();
    c->add_option("--N", ka.N, "matrix size for finite-N kernels")->capture_default_str();
  };
  auto* k_eval = kernel->add_subcommand("eval", "print K(x, y)");
  kernel_common(k_eval);
  k_eval->add_option("--x", ka.x)->required();
  k_eval->add_option("--y", ka.y)->required();
  auto* k_grid = kernel->add_subcommand("grid", "CSV of K on a square grid");
  kernel_common(k_grid);
  k_grid->add_option("--lo", ka.lo)->capture_default_str();
  k_grid->add_option("--hi", ka.hi)->capture_default_str();
  k_grid->add_option("--n", ka.n, "points per axis")->capture_default_str();
  k_grid->add_option("--out", ka.out, "CSV path (default stdout)");

  GenfunArgs ga;
  auto* gen = app.add_subcommand("genfun", "generating function of the decimated limits");
  gen->require_subcommand(1);
  auto* g_soft = gen->add_subcommand("soft", "soft edge on (s, inf)");
  g_soft->add_option("--s", ga.s)->required();
  g_soft->add_option("--xi", ga.xi)->capture_default_str();
  g_soft->add_option("--m", ga.m)->capture_default_str();
  auto* g_hard = gen->add_subcommand("hard", "hard edge on (0, s)");
  g_hard->add_option("--s", ga.s)->required();
  g_hard->add_option("--xi", ga.xi)->capture_default_str();
  g_hard->add_option("--a", ga.a)->capture_default_str();
  g_hard->add_option("--m", ga.m)->capture_default_str();
  auto* g_sweep = gen->add_subcommand("sweep", "CSV over an s-grid");
  g_sweep->add_option("--edge", ga.edge)->capture_default_str();
  g_sweep->add_option("--smin", ga.smin)->capture_default_str();
  g_sweep->add_option("--smax", ga.smax)->capture_default_str();
  g_sweep->add_option("--ns", ga.ns)->capture_default_str();
  g_sweep->add_option("--xi", ga.xi)->capture_default_str();
  g_sweep->add_option("--a", ga.a)->capture_default_str();
  g_sweep->add_option("--m", ga.m)->capture_default_str();
  g_sweep->add_option("--out", ga.out, "CSV path (default stdout)");

  auto* gap = app.add_subcommand("gapprob", "gap probabilities E(k), k = 0..kmax");
  gap->require_subcommand(1);
  auto* gp_soft = gap->add_subcommand("soft", "soft edge on (s, inf)");
  gp_soft->add_option("--s", ga.s)->required();
  gp_soft->add_option("--kmax", ga.kmax)->capture_default_str();
  gp_soft->add_option("--m", ga.m)->capture_default_str();
  auto* gp_hard = gap->add_subcommand("hard", "hard edge on (0, s)");
  gp_hard->add_option("--s", ga.s)->required();
  gp_hard->add_option("--a", ga.a)->capture_default_str();
  gp_hard->add_option("--kmax", ga.kmax)->capture_default_str();
  gp_hard->add_option("--m", ga.m)->capture_default_str();

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte Carlo sampling and checks");
  mc->require_subcommand(1);
  auto* mc_sample = mc->add_subcommand("sample", "CSV of sorted spectra, one per line");
  mc_sample->add_option("--ensemble", ma.ensemble, "goe, loe, joe, lue or jue")->capture_default_str();
  mc_sample->add_option("--beta", ma.beta, "optional consistency check");
  mc_sample->add_option("--n", ma.n, "matrix size")->capture_default_str();
  mc_sample->add_option("--a", ma.a)->capture_default_str();
  mc_sample->add_option("--b", ma.b)->capture_default_str();
  mc_sample->add_option("--samples", ma.samples)->capture_default_str();
  mc_sample->add_option("--seed", ma.seed)->capture_default_str();
  mc_sample->add_option("--out", ma.out, "CSV path (default stdout)");
  auto* mc_genfun = mc->add_subcommand("genfun", "empirical generating function of a sample file");
  mc_genfun->add_option("--in", ma.in)->required();
  mc_genfun->add_option("--interval", ma.interval, "lo,hi (hi may be inf)")->required();
  mc_genfun->add_option("--xi", ma.xi)->capture_default_str();
  auto* mc_verify = mc->add_subcommand("verify", "statistical identity checks");
  mc_verify->require_subcommand(1);
  auto* as1 = mc_verify->add_subcommand("as1", "even(OE u OE) = UE");
  as1->add_option("--seed", ma.seed)->capture_default_str();
  as1->add_option("--n", ma.n, "matrix size")->default_val(8);
  as1->add_option("--samples", ma.samples)->default_val(20000);
  as1->add_option("--a", ma.pair_a, "Jacobi exponent")->capture_default_str();
  auto* counting = mc_verify->add_subcommand("counting", "odd(OE u OE) counts from single-copy counts");
  counting->add_option("--seed", ma.seed)->capture_default_str();
  counting->add_option("--n", ma.n, "matrix size")->default_val(2);
  counting->add_option("--pairs", ma.pairs)->capture_default_str();
  counting->add_option("--s", ma.s, "interval (s, inf)")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "finite-N to limit convergence tables");
  verify->require_subcommand(1);
  for (const char* name : {"jba", "jb1", "xn1", "rho-soft", "rho-hard", "f1", "f2"}) {
    auto* v = verify->add_subcommand(name, std::string("convergence table ") + name);
    v->add_option("--nmin", va.nmin, "smallest N (doubled up to --nmax)");
    v->add_option("--nmax", va.nmax, "largest N");
    v->add_option("--seed", va.seed)->capture_default_str();
    if (std::string(name) == "jb1" || std::string(name) == "rho-hard" || std::string(name) == "f2")
      v->add_option("--a", va.a, "exponent");
    v->add_option("--out", va.out, "CSV path (default stdout)");
  }

  SuiteArgs sa;
  auto* suite = app.add_subcommand("suite", "acceptance suites");
  suite->require_subcommand(1);
  for (const char* name : {"fast", "full"}) {
    auto* s = suite->add_subcommand(name, std::string(name) + " suite");
    s->add_option("--seed", sa.seed)->capture_default_str();
    s->add_option("--out", sa.out, "JSON path (default stdout)");
    s->add_option("--mutate", sa.mutate)->group("");
    s->add_option("--only", sa.only, "restrict to these criteria")->delimiter(',')->group("");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ExtrasError& e) {
    const std::string hint = suggestion(app, deepest(&app)->remaining());
    std::cerr << "error: " << (hint.empty() ? e.what() : hint) << "\n";
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  eg::configure_threads_from_env();
  try {
    if (sf_eval->parsed()) return run_specfun(sf);
    if (k_eval->parsed()) return run_kernel_eval(ka);
    if (k_grid->parsed()) return run_kernel_grid(ka);
    if (g_soft->parsed()) return run_genfun(Edge::Soft, ga);
    if (g_hard->parsed()) return run_genfun(Edge::Hard, ga);
    if (g_sweep->parsed()) return run_genfun_sweep(ga);
    if (gp_soft->parsed()) return run_gapprob(Edge::Soft, ga);
    if (gp_hard->parsed()) return run_gapprob(Edge::Hard, ga);
    if (mc_sample->parsed()) return run_mc_sample(ma);
    if (mc_genfun->parsed()) return run_mc_genfun(ma);
    if (as1->parsed()) return run_mc_verify_as1(ma);
    if (counting->parsed()) return run_mc_verify_counting(ma);
    for (const auto* v : verify->get_subcommands())
      if (v->parsed()) return run_verify(v->get_name(), va);
    for (const auto* s : suite->get_subcommands())
      if (s->parsed()) return run_suite(s->get_name(), sa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "error: no command\n";
  return kExitUsage;
}
