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
#include "edgegap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "edgegap/error.hpp"
#include "edgegap/specfun.hpp"
#include "integrate.hpp"

namespace edgegap::kernels {

using specfun::airy_ai;
using specfun::bessel_j;

namespace detail {

// Row functions rho_j and column functions Psi_j of the decimated Jacobi
// kernel, S(x, y) = sum_j rho_j(x) Psi_j(y).  Immutable once built.
struct JacobiTables {
  double a;
  int N;
  double alpha;  // (a - 1) / 2
  PolyFamily fam;
  std::vector<double> full_t, full_w;  // weight (1-u)^alpha on (-1, 1)
  std::vector<double> tail_t, tail_w;  // weight w^alpha on (0, 1)
  std::vector<double> psi_total;       // Psi_j(1)

  JacobiTables(double a_, int N_)
      : a(a_), N(N_), alpha(0.5 * (a_ - 1.0)), fam(PolyFamily::jacobi(a_, 0.0)) {
    const int n = std::max(4, N / 2 + 2);
    const auto full = quad::gauss_jacobi(-1.0, 1.0, alpha, 0.0, n);
    const auto tail = quad::gauss_jacobi(0.0, 1.0, 0.0, alpha, n);
    full_t = full.nodes;
    full_w = full.weights;
    tail_t = tail.nodes;
    tail_w = tail.weights;
    psi_total.assign(N, 0.0);
    std::vector<double> q(N), dq(N);
    for (size_t k = 0; k < full_t.size(); ++k) {
      specfun::orthonormal_polynomials(fam, N - 1, full_t[k], q, dq);
      for (int j = 0; j < N; ++j) psi_total[j] += full_w[k] * q[j];
    }
  }

  void rows(double x, std::span<double> out) const {
    std::vector<double> q(N), dq(N);
    specfun::orthonormal_polynomials(fam, N - 1, x, q, dq);
    const double omx = 1.0 - x;
    const double pre = std::pow(omx, alpha);
    for (int j = 0; j < N; ++j) out[j] = pre * (0.5 * (a + 1.0) * q[j] - omx * dq[j]);
  }

  void cols(double y, std::span<double> out) const {
    std::vector<double> q(N), dq(N);
    const double delta = 1.0 - y;
    const double pre = std::pow(delta, alpha + 1.0);
    for (int j = 0; j < N; ++j) out[j] = 0.0;
    for (size_t k = 0; k < tail_t.size(); ++k) {
      specfun::orthonormal_polynomials(fam, N - 1, 1.0 - delta * tail_t[k], q, dq);
      for (int j = 0; j < N; ++j) out[j] += tail_w[k] * q[j];
    }
    for (int j = 0; j < N; ++j) out[j] = psi_total[j] - pre * out[j];
  }
};

}  // namespace detail

namespace {

bool near_diagonal(double x, double y) { return std::abs(x - y) < kConfluentWindow * std::max(1.0, std::abs(x)); }

void require_even_N(int N) {
  if (N < 2 || N % 2 != 0) throw InvalidParameter("decimated kernels need an even N >= 2, got " + std::to_string(N));
}

void require_a(double a) {
  if (!(a > -1.0) || !std::isfinite(a)) throw InvalidParameter("parameter a must exceed -1");
}

// --- soft edge ------------------------------------------------------------

double soft_from_values(double x, double ax, double dax, double y, double ay, double day) {
  if (near_diagonal(x, y)) {
    const double d = y - x;
    return (dax * dax - x * ax * ax) - 0.5 * d * ax * ax -
           d * d / 6.0 * (ax * dax + x * x * ax * ax - x * dax * dax);
  }
  return (ax * day - dax * ay) / (x - y);
}

// --- hard edge ------------------------------------------------------------

// phi(x) = J_a(sqrt x), dphi = phi'(x), psi = x phi'(x)
struct HardNode {
  double x, phi, dphi, psi;
};

HardNode hard_node(double a, double x) {
  const double r = std::sqrt(x);
  const auto j = bessel_j(a, r);
  const double dphi = j.derivative / (2.0 * r);
  return {x, j.value, dphi, x * dphi};
}

double hard_from_nodes(double a, const HardNode& p, const HardNode& q) {
  if (near_diagonal(p.x, q.x)) {
    const double x = p.x, phi = p.phi, dphi = p.dphi, psi = p.psi;
    const double a2 = a * a;
    const double c = 1.0 - a2 / x;
    const double dpsi = -0.25 * c * phi;
    const double d2phi = (dpsi - dphi) / x;
    const double d2psi = -0.25 * (a2 / (x * x) * phi + c * dphi);
    const double d3psi = -0.25 * (-2.0 * a2 * phi / (x * x * x) + 2.0 * a2 * dphi / (x * x) + c * d2phi);
    const double d3phi = (d2psi - d2phi) / x - (dpsi - dphi) / (x * x);
    const double d = q.x - x;
    return -((phi * dpsi - psi * dphi) + 0.5 * d * (phi * d2psi - psi * d2phi) +
             d * d / 6.0 * (phi * d3psi - psi * d3phi));
  }
  return (p.phi * q.psi - p.psi * q.phi) / (p.x - q.x);
}

double hard_B(double a, double y) { return specfun::bessel_tail_integral(a, std::sqrt(y)) / (2.0 * std::sqrt(y)); }

// --- finite N ---------------------------------------------------------------

struct CDNode {
  double x;
  std::vector<double> v, d;  // phi_0..phi_N and derivatives
};

CDNode cd_node(const PolyFamily& fam, int N, double x) {
  CDNode n{x, std::vector<double>(N + 1), std::vector<double>(N + 1)};
  specfun::orthonormal_functions(fam, N, x, n.v, n.d);
  return n;
}

double cd_from_nodes(const PolyFamily& fam, int N, const CDNode& p, const CDNode& q) {
  if (near_diagonal(p.x, q.x)) {
    double s = 0.0;
    for (int j = 0; j < N; ++j) s += p.v[j] * q.v[j];
    return s;
  }
  return fam.beta(N) * (p.v[N] * q.v[N - 1] - p.v[N - 1] * q.v[N]) / (p.x - q.x);
}

void check_family_point(const PolyFamily& fam, double x) {
  if (!fam.in_support(x) || !std::isfinite(x)) {
    throw DomainError("point " + std::to_string(x) + " outside the support of " + fam.describe());
  }
}

const PolyFamily kLaguerre0 = PolyFamily::laguerre(0.0);

// -phi_j'(x), j < N
void laguerre_rows(int N, double x, std::span<double> out) {
  std::vector<double> v(N), d(N);
  specfun::orthonormal_functions(kLaguerre0, N - 1, x, v, d);
  for (int j = 0; j < N; ++j) out[j] = -d[j];
}

// int_y^inf e^{-u/2} L_j(u) du for j < N, from
//   I_j = 2 e^{-y/2} L_j(y) - 2 sum_{k<j} I_k.
std::vector<double> laguerre_tails(int N, double y) {
  std::vector<double> v(N), d(N), tails(N);
  specfun::orthonormal_functions(kLaguerre0, N - 1, y, v, d);
  double prev = 0.0;
  for (int j = 0; j < N; ++j) {
    const double psi = (j % 2 ? -v[j] : v[j]);
    const double cur = 2.0 * psi - prev;
    tails[j] = cur - prev;
    prev = cur;
  }
  return tails;
}

// int_0^y phi_j, j < N, for the orthonormal phi_j = (-1)^j e^{-u/2} L_j(u).
void laguerre_cols(int N, double y, std::span<double> out) {
  const auto tails = laguerre_tails(N, y);
  for (int j = 0; j < N; ++j) out[j] = 2.0 - (j % 2 ? -tails[j] : tails[j]);
}

double laguerre_truncation(int N) { return 4.0 * N + 30.0 * std::cbrt(2.0 * N); }

}  // namespace

// ---------------------------------------------------------------------------

double soft_kernel(double x, double y) {
  const auto ax = airy_ai(x);
  const auto ay = airy_ai(y);
  return soft_from_values(x, ax.value, ax.derivative, y, ay.value, ay.derivative);
}

double soft_kernel_integral_form(double x, double y) {
  if (!(x >= -10.0) || !(y >= -10.0)) throw DomainError("integral form of the Airy kernel needs x, y >= -10");
  const double U = std::max(0.0, 14.0 - std::min(x, y));
  auto f = [x, y](double u) { return airy_ai(x + u).value * airy_ai(y + u).value; };
  return edgegap::detail::panel_integral(f, 0.0, U, 1.0, 1e-12);
}

double hard_kernel(double a, double x, double y) {
  require_a(a);
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("hard-edge kernel needs x, y > 0");
  return hard_from_nodes(a, hard_node(a, x), hard_node(a, y));
}

double hard_kernel_integral_form(double a, double x, double y) {
  require_a(a);
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("hard-edge kernel needs x, y >= 0");
  const double rx = std::sqrt(x), ry = std::sqrt(y);
  // t = r^2
  auto f = [=](double r) { return r * bessel_j(a, r * rx).value * bessel_j(a, r * ry).value; };
  return 0.5 * edgegap::detail::endpoint_integral(f, 0.0, 1.0, 1e-15);
}

double cd_kernel(const PolyFamily& fam, int N, double x, double y) {
  if (N < 1) throw InvalidParameter("Christoffel-Darboux kernel needs N >= 1");
  check_family_point(fam, x);
  check_family_point(fam, y);
  return cd_from_nodes(fam, N, cd_node(fam, N, x), cd_node(fam, N, y));
}

double cd_kernel_sum(const PolyFamily& fam, int N, double x, double y) {
  if (N < 1) throw InvalidParameter("Christoffel-Darboux kernel needs N >= 1");
  check_family_point(fam, x);
  check_family_point(fam, y);
  const auto p = cd_node(fam, N, x);
  const auto q = cd_node(fam, N, y);
  double s = 0.0;
  for (int j = 0; j < N; ++j) s += p.v[j] * q.v[j];
  return s;
}

double decimated_laguerre_kernel(int N, double x, double y) {
  require_even_N(N);
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("decimated Laguerre kernel needs x, y > 0");
  std::vector<double> r(N), c(N);
  laguerre_rows(N, x, r);
  laguerre_cols(N, y, c);
  double s = 0.0;
  for (int j = 0; j < N; ++j) s += r[j] * c[j];
  return s;
}

double decimated_laguerre_kernel_direct(int N, double x, double y) {
  require_even_N(N);
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("decimated Laguerre kernel needs x, y > 0");
  std::vector<double> rx(N), dx(N);
  specfun::orthonormal_functions(kLaguerre0, N - 1, x, rx, dx);
  auto f = [&](double u) {
    std::vector<double> v(N), d(N);
    specfun::orthonormal_functions(kLaguerre0, N - 1, u, v, d);
    double s = 0.0;
    for (int j = 0; j < N; ++j) s += dx[j] * v[j];
    return s;
  };
  return -edgegap::detail::panel_integral(f, 0.0, y, 2.0, 1e-14);
}

int laguerre_identity_sign(int N) { return N % 2 ? -1 : 1; }

double laguerre_row_integral(int N, double x, double y, RowIntegralPath path, int identity_sign) {
  if (N < 1) throw InvalidParameter("row integral needs N >= 1");
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("row integral needs x, y > 0");
  auto kernel_u = [&](double u) { return cd_kernel_sum(kLaguerre0, N, x, u); };
  switch (path) {
    case RowIntegralPath::DirectQuadrature:
      return edgegap::detail::panel_integral(kernel_u, 0.0, y, 2.0, 1e-14);
    case RowIntegralPath::TailIdentity: {
      if (identity_sign == 0) identity_sign = laguerre_identity_sign(N);
      const double U = std::max(laguerre_truncation(N), std::max(x, y) + 60.0);
      // e^{-u/2} L_N'(u) from the orthonormal phi_N = (-1)^N e^{-u/2} L_N
      auto dl = [N](double u) {
        std::vector<double> v(N + 1), d(N + 1);
        specfun::orthonormal_functions(kLaguerre0, N, u, v, d);
        const double val = d[N] + 0.5 * v[N];
        return N % 2 ? -val : val;
      };
      const double first = edgegap::detail::panel_integral(dl, x, U, 2.0, 1e-14);
      const double second = edgegap::detail::panel_integral(kernel_u, y, U, 2.0, 1e-14);
      return identity_sign * first - second;
    }
    case RowIntegralPath::ClosedForm: {
      std::vector<double> v(N), d(N), c(N);
      specfun::orthonormal_functions(kLaguerre0, N - 1, x, v, d);
      laguerre_cols(N, y, c);
      double s = 0.0;
      for (int j = 0; j < N; ++j) s += v[j] * c[j];
      return s;
    }
  }
  return 0.0;
}

double decimated_jacobi_kernel(double a, int N, double x, double y) {
  require_a(a);
  require_even_N(N);
  if (!(x > -1.0 && x < 1.0) || !(y > -1.0 && y < 1.0)) throw DomainError("decimated Jacobi kernel needs x, y in (-1, 1)");
  const detail::JacobiTables t(a, N);
  std::vector<double> r(N), c(N);
  t.rows(x, r);
  t.cols(y, c);
  double s = 0.0;
  for (int j = 0; j < N; ++j) s += r[j] * c[j];
  return s;
}

double decimated_jacobi_kernel_direct(double a, int N, double x, double y) {
  require_a(a);
  require_even_N(N);
  if (!(x > -1.0 && x < 1.0) || !(y > -1.0 && y < 1.0)) throw DomainError("decimated Jacobi kernel needs x, y in (-1, 1)");
  const auto fam = PolyFamily::jacobi(a, 0.0);
  const double alpha = 0.5 * (a - 1.0);
  std::vector<double> q(N), dq(N), rho(N);
  specfun::orthonormal_polynomials(fam, N - 1, x, q, dq);
  const double omx = 1.0 - x;
  for (int j = 0; j < N; ++j) rho[j] = std::pow(omx, alpha) * (0.5 * (a + 1.0) * q[j] - omx * dq[j]);
  auto f = [&](double u) {
    std::vector<double> qu(N), dqu(N);
    specfun::orthonormal_polynomials(fam, N - 1, u, qu, dqu);
    double s = 0.0;
    for (int j = 0; j < N; ++j) s += rho[j] * qu[j];
    return std::pow(1.0 - u, alpha) * s;
  };
  return edgegap::detail::endpoint_integral(f, -1.0, y, 1e-14);
}

TxIdentity tx_identity_check(double a, int N, double x) {
  require_a(a);
  if (N < 1) throw InvalidParameter("identity check needs N >= 1");
  if (!(x > -1.0 && x < 1.0)) throw DomainError("identity check needs x in (-1, 1)");
  const auto fam = PolyFamily::jacobi(a, 0.0);
  const double alpha = 0.5 * (a - 1.0);
  std::vector<double> qx(N), qm(N), dq(N);
  specfun::orthonormal_polynomials(fam, N - 1, x, qx, dq);
  specfun::orthonormal_polynomials(fam, N - 1, -1.0, qm, dq);
  auto kt = [&](const std::vector<double>& qa, double pre) {
    return [&, pre](double u) {
      std::vector<double> qu(N), dqu(N);
      specfun::orthonormal_polynomials(fam, N - 1, u, qu, dqu);
      double s = 0.0;
      for (int j = 0; j < N; ++j) s += qa[j] * qu[j];
      return pre * std::pow(1.0 - u, alpha) * s;
    };
  };
  TxIdentity out{};
  out.lhs = (1.0 - x) * edgegap::detail::endpoint_integral(kt(qx, std::pow(1.0 - x, alpha)), -1.0, 1.0, 1e-15);
  out.rhs = -2.0 * edgegap::detail::endpoint_integral(kt(qm, std::pow(2.0, alpha)), x, 1.0, 1e-15);
  out.sign = (out.lhs * out.rhs >= 0.0) ? 1 : -1;
  out.mismatch = std::abs(std::abs(out.lhs) - std::abs(out.rhs));
  return out;
}

double decimated_soft_limit_kernel(double x, double y) {
  return soft_kernel(x, y) + airy_ai(x).value * specfun::airy_tail_integral(y);
}

double decimated_hard_limit_kernel(double a, double x, double y) {
  return hard_kernel(a, x, y) + bessel_j(a, std::sqrt(x)).value * hard_B(a, y);
}

// ---------------------------------------------------------------------------

RankOnePerturbation RankOnePerturbation::soft() { return {Edge::Soft, 0.0}; }

RankOnePerturbation RankOnePerturbation::hard(double a) {
  require_a(a);
  return {Edge::Hard, a};
}

double RankOnePerturbation::A(double x) const {
  return edge == Edge::Soft ? airy_ai(x).value : bessel_j(a, std::sqrt(x)).value;
}

double RankOnePerturbation::B(double y) const {
  return edge == Edge::Soft ? specfun::airy_tail_integral(y) : hard_B(a, y);
}

// ---------------------------------------------------------------------------

KernelSpec KernelSpec::soft_airy() { return KernelSpec(SoftAiry{}); }

KernelSpec KernelSpec::hard_bessel(double a) {
  require_a(a);
  return KernelSpec(HardBessel{a});
}

KernelSpec KernelSpec::finite_cd(const PolyFamily& fam, int N) {
  if (N < 1) throw InvalidParameter("Christoffel-Darboux kernel needs N >= 1");
  return KernelSpec(FiniteCD{fam, N});
}

KernelSpec KernelSpec::decimated_laguerre(int N) {
  require_even_N(N);
  return KernelSpec(DecimatedLaguerre{N});
}

KernelSpec KernelSpec::decimated_jacobi(double a, int N) {
  require_a(a);
  require_even_N(N);
  KernelSpec k(DecimatedJacobi{a, N});
  k.jacobi_ = std::make_shared<const detail::JacobiTables>(a, N);
  return k;
}

KernelSpec KernelSpec::airy_sum(double s) {
  if (!std::isfinite(s)) throw InvalidParameter("shift s must be finite");
  return KernelSpec(AirySum{s});
}

KernelSpec KernelSpec::decimated_soft_limit() { return KernelSpec(DecimatedSoftLimit{}); }

KernelSpec KernelSpec::decimated_hard_limit(double a) {
  require_a(a);
  return KernelSpec(DecimatedHardLimit{a});
}

KernelSpec KernelSpec::rescaled(double origin, double scale) const {
  if (!(scale != 0.0) || !std::isfinite(scale) || !std::isfinite(origin)) {
    throw InvalidParameter("rescaling needs a finite non-zero scale");
  }
  KernelSpec k = *this;
  k.origin_ = origin_ + scale_ * origin;
  k.scale_ = scale_ * scale;
  return k;
}

bool KernelSpec::symmetric() const noexcept {
  return std::holds_alternative<SoftAiry>(kind_) || std::holds_alternative<HardBessel>(kind_) ||
         std::holds_alternative<FiniteCD>(kind_) || std::holds_alternative<AirySum>(kind_);
}

namespace {

quad::Interval raw_domain(const KernelKind& kind) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [](const auto& k) -> quad::Interval {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SoftAiry> || std::is_same_v<K, DecimatedSoftLimit>) {
          return {-inf, inf};
        } else if constexpr (std::is_same_v<K, FiniteCD>) {
          return {k.family.support_lo(), k.family.support_hi()};
        } else if constexpr (std::is_same_v<K, DecimatedJacobi>) {
          return {-1.0, 1.0};
        } else {
          return {0.0, inf};
        }
      },
      kind);
}

bool raw_in_domain(const KernelKind& kind, double x) {
  if (!std::isfinite(x)) return false;
  return std::visit(
      [x](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SoftAiry> || std::is_same_v<K, DecimatedSoftLimit>) {
          return true;
        } else if constexpr (std::is_same_v<K, FiniteCD>) {
          return k.family.in_support(x);
        } else if constexpr (std::is_same_v<K, DecimatedJacobi>) {
          return x > -1.0 && x < 1.0;
        } else if constexpr (std::is_same_v<K, AirySum>) {
          return x >= 0.0;
        } else {
          return x > 0.0;
        }
      },
      kind);
}

}  // namespace

quad::Interval KernelSpec::domain() const {
  const auto d = raw_domain(kind_);
  double lo = (d.lo - origin_) / scale_;
  double hi = (d.hi - origin_) / scale_;
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

bool KernelSpec::in_domain(double x) const { return raw_in_domain(kind_, origin_ + scale_ * x); }

std::string KernelSpec::name() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SoftAiry>) os << "soft";
        else if constexpr (std::is_same_v<K, HardBessel>) os << "hard(a=" << k.a << ")";
        else if constexpr (std::is_same_v<K, FiniteCD>) os << "cd(" << k.family.describe() << ",N=" << k.N << ")";
        else if constexpr (std::is_same_v<K, DecimatedLaguerre>) os << "decimated-laguerre(N=" << k.N << ")";
        else if constexpr (std::is_same_v<K, DecimatedJacobi>) os << "decimated-jacobi(a=" << k.a << ",N=" << k.N << ")";
        else if constexpr (std::is_same_v<K, AirySum>) os << "airy-sum(s=" << k.s << ")";
        else if constexpr (std::is_same_v<K, DecimatedSoftLimit>) os << "decimated-soft";
        else os << "decimated-hard(a=" << k.a << ")";
      },
      kind_);
  if (origin_ != 0.0 || scale_ != 1.0) os << " at x = " << origin_ << " + " << scale_ << " X";
  return os.str();
}

double KernelSpec::raw(double x, double y) const {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SoftAiry>) {
          return soft_kernel(x, y);
        } else if constexpr (std::is_same_v<K, HardBessel>) {
          return hard_kernel(k.a, x, y);
        } else if constexpr (std::is_same_v<K, FiniteCD>) {
          return cd_kernel(k.family, k.N, x, y);
        } else if constexpr (std::is_same_v<K, DecimatedLaguerre>) {
          return decimated_laguerre_kernel(k.N, x, y);
        } else if constexpr (std::is_same_v<K, DecimatedJacobi>) {
          std::vector<double> r(k.N), c(k.N);
          jacobi_->rows(x, r);
          jacobi_->cols(y, c);
          double s = 0.0;
          for (int j = 0; j < k.N; ++j) s += r[j] * c[j];
          return s;
        } else if constexpr (std::is_same_v<K, AirySum>) {
          return airy_ai(x + y + k.s).value;
        } else if constexpr (std::is_same_v<K, DecimatedSoftLimit>) {
          return decimated_soft_limit_kernel(x, y);
        } else {
          return decimated_hard_limit_kernel(k.a, x, y);
        }
      },
      kind_);
}

double KernelSpec::operator()(double x, double y) const {
  if (!in_domain(x) || !in_domain(y)) {
    std::ostringstream os;
    os << "point (" << x << ", " << y << ") outside the domain of kernel " << name();
    throw DomainError(os.str());
  }
  return std::abs(scale_) * raw(origin_ + scale_ * x, origin_ + scale_ * y);
}

double correlation_det(const KernelSpec& kernel, std::span<const double> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < 1 || n > 12) throw InvalidParameter("correlation_det takes between 1 and 12 points");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = kernel(points[i], points[j]);
  if (n == 1) return m(0, 0);
  return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd kernel_matrix_reference(const KernelSpec& kernel, std::span<const double> x,
                                        std::span<const double> y) {
  Eigen::MatrixXd m(x.size(), y.size());
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) m(i, j) = kernel(x[i], y[j]);
  return m;
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& kernel, std::span<const double> xs, std::span<const double> ys,
                              Exec exec) {
  const bool par = exec == Exec::Parallel;
  const auto nx = static_cast<long>(xs.size());
  const auto ny = static_cast<long>(ys.size());
  for (double v : xs)
    if (!kernel.in_domain(v)) throw DomainError("node " + std::to_string(v) + " outside kernel domain");
  for (double v : ys)
    if (!kernel.in_domain(v)) throw DomainError("node " + std::to_string(v) + " outside kernel domain");

  const double o = kernel.origin_, c = kernel.scale_, jac = std::abs(kernel.scale_);
  std::vector<double> x(nx), y(ny);
  for (long i = 0; i < nx; ++i) x[i] = o + c * xs[i];
  for (long j = 0; j < ny; ++j) y[j] = o + c * ys[j];
  Eigen::MatrixXd m(nx, ny);

  // Per-node stage followed by an entry stage; every entry is computed by a
  // single thread in a fixed order so results do not depend on the schedule.
  auto fill = [&](auto&& entry) {
#pragma omp parallel for schedule(static) if (par)
    for (long i = 0; i < nx; ++i)
      for (long j = 0; j < ny; ++j) m(i, j) = jac * entry(i, j);
  };
  auto per_node = [&](long n, auto&& body) {
#pragma omp parallel for schedule(dynamic) if (par)
    for (long i = 0; i < n; ++i) body(i);
  };
  // Separable kernels sum_k R(i, k) C(j, k).
  auto separable = [&](int N, auto&& rows, auto&& cols) {
    Eigen::MatrixXd R(nx, N), C(ny, N);
    per_node(nx, [&](long i) {
      std::vector<double> r(N);
      rows(x[i], std::span<double>(r));
      for (int k = 0; k < N; ++k) R(i, k) = r[k];
    });
    per_node(ny, [&](long j) {
      std::vector<double> cc(N);
      cols(y[j], std::span<double>(cc));
      for (int k = 0; k < N; ++k) C(j, k) = cc[k];
    });
    fill([&](long i, long j) {
      double s = 0.0;
      for (int k = 0; k < N; ++k) s += R(i, k) * C(j, k);
      return s;
    });
  };

  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SoftAiry> || std::is_same_v<K, DecimatedSoftLimit>) {
          std::vector<specfun::ValueDeriv> ax(nx), ay(ny);
          std::vector<double> by(std::is_same_v<K, DecimatedSoftLimit> ? ny : 0);
          per_node(nx, [&](long i) { ax[i] = airy_ai(x[i]); });
          per_node(ny, [&](long j) {
            ay[j] = airy_ai(y[j]);
            if (!by.empty()) by[j] = specfun::airy_tail_integral(y[j]);
          });
          fill([&](long i, long j) {
            double v = soft_from_values(x[i], ax[i].value, ax[i].derivative, y[j], ay[j].value, ay[j].derivative);
            if (!by.empty()) v += ax[i].value * by[j];
            return v;
          });
        } else if constexpr (std::is_same_v<K, HardBessel> || std::is_same_v<K, DecimatedHardLimit>) {
          const double a = k.a;
          std::vector<HardNode> hx(nx), hy(ny);
          std::vector<double> by(std::is_same_v<K, DecimatedHardLimit> ? ny : 0);
          per_node(nx, [&](long i) { hx[i] = hard_node(a, x[i]); });
          per_node(ny, [&](long j) {
            hy[j] = hard_node(a, y[j]);
            if (!by.empty()) by[j] = hard_B(a, y[j]);
          });
          fill([&](long i, long j) {
            double v = hard_from_nodes(a, hx[i], hy[j]);
            if (!by.empty()) v += hx[i].phi * by[j];
            return v;
          });
        } else if constexpr (std::is_same_v<K, FiniteCD>) {
          std::vector<CDNode> cx(nx), cy(ny);
          per_node(nx, [&](long i) { cx[i] = cd_node(k.family, k.N, x[i]); });
          per_node(ny, [&](long j) { cy[j] = cd_node(k.family, k.N, y[j]); });
          fill([&](long i, long j) { return cd_from_nodes(k.family, k.N, cx[i], cy[j]); });
        } else if constexpr (std::is_same_v<K, DecimatedLaguerre>) {
          separable(
              k.N, [&](double v, std::span<double> out) { laguerre_rows(k.N, v, out); },
              [&](double v, std::span<double> out) { laguerre_cols(k.N, v, out); });
        } else if constexpr (std::is_same_v<K, DecimatedJacobi>) {
          const auto& t = *kernel.jacobi_;
          separable(
              k.N, [&](double v, std::span<double> out) { t.rows(v, out); },
              [&](double v, std::span<double> out) { t.cols(v, out); });
        } else {
          fill([&](long i, long j) { return airy_ai(x[i] + y[j] + k.s).value; });
        }
      },
      kernel.kind_);
  return m;
}

}  // namespace edgegap::kernels
