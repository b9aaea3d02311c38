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
#include "edgegap/orthopoly.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "edgegap/error.hpp"

namespace edgegap::specfun {
namespace {

void require_param(double p, const char* name) {
  if (!(p > -1.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "polynomial parameter " << name << " must exceed -1, got " << p;
    throw InvalidParameter(os.str());
  }
}

void require_degree(int n) {
  if (n < 0) throw InvalidParameter("polynomial degree must be non-negative");
}

// x^p with the convention 0^0 = 1 and log(0) * 0 = 0.
double xlogy(double p, double y) { return p == 0.0 ? 0.0 : p * std::log(y); }

constexpr double kBig = 1e150;
constexpr double kSmall = 1e-150;

}  // namespace

PolyFamily PolyFamily::hermite() { return {Family::Hermite, 0.0, 0.0}; }

PolyFamily PolyFamily::laguerre(double a) {
  require_param(a, "a");
  return {Family::Laguerre, a, 0.0};
}

PolyFamily PolyFamily::jacobi(double a, double b) {
  require_param(a, "a");
  require_param(b, "b");
  return {Family::Jacobi, a, b};
}

double PolyFamily::support_lo() const noexcept {
  switch (family_) {
    case Family::Hermite: return -std::numeric_limits<double>::infinity();
    case Family::Laguerre: return 0.0;
    case Family::Jacobi: return -1.0;
  }
  return 0.0;
}

double PolyFamily::support_hi() const noexcept {
  return family_ == Family::Jacobi ? 1.0 : std::numeric_limits<double>::infinity();
}

bool PolyFamily::in_support(double x) const noexcept { return x >= support_lo() && x <= support_hi(); }

double PolyFamily::log_weight(double x) const {
  switch (family_) {
    case Family::Hermite: return -x * x;
    case Family::Laguerre: return xlogy(a_, x) - x;
    case Family::Jacobi: return xlogy(a_, 1.0 - x) + xlogy(b_, 1.0 + x);
  }
  return 0.0;
}

double PolyFamily::weight(double x) const { return std::exp(log_weight(x)); }

double PolyFamily::half_log_weight_derivative(double x) const {
  switch (family_) {
    case Family::Hermite: return -x;
    case Family::Laguerre: return (a_ == 0.0 ? 0.0 : 0.5 * a_ / x) - 0.5;
    case Family::Jacobi:
      return (a_ == 0.0 ? 0.0 : -0.5 * a_ / (1.0 - x)) + (b_ == 0.0 ? 0.0 : 0.5 * b_ / (1.0 + x));
  }
  return 0.0;
}

double PolyFamily::mass() const {
  switch (family_) {
    case Family::Hermite: return std::sqrt(std::numbers::pi);
    case Family::Laguerre: return std::tgamma(a_ + 1.0);
    case Family::Jacobi:
      return std::exp((a_ + b_ + 1.0) * std::numbers::ln2 + std::lgamma(a_ + 1.0) + std::lgamma(b_ + 1.0) -
                      std::lgamma(a_ + b_ + 2.0));
  }
  return 0.0;
}

double PolyFamily::alpha(int j) const {
  switch (family_) {
    case Family::Hermite: return 0.0;
    case Family::Laguerre: return 2.0 * j + a_ + 1.0;
    case Family::Jacobi: {
      if (j == 0) return (b_ - a_) / (a_ + b_ + 2.0);
      const double c = 2.0 * j + a_ + b_;
      return (b_ * b_ - a_ * a_) / (c * (c + 2.0));
    }
  }
  return 0.0;
}

double PolyFamily::beta(int j) const {
  switch (family_) {
    case Family::Hermite: return std::sqrt(0.5 * j);
    case Family::Laguerre: return std::sqrt(j * (j + a_));
    case Family::Jacobi: {
      const double c = 2.0 * j + a_ + b_;
      if (j == 1) return std::sqrt(4.0 * (1.0 + a_) * (1.0 + b_) / (c * c * (c + 1.0)));
      return std::sqrt(4.0 * j * (j + a_) * (j + b_) * (j + a_ + b_) / (c * c * (c + 1.0) * (c - 1.0)));
    }
  }
  return 0.0;
}

std::string PolyFamily::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::Hermite: os << "hermite"; break;
    case Family::Laguerre: os << "laguerre(a=" << a_ << ")"; break;
    case Family::Jacobi: os << "jacobi(a=" << a_ << ",b=" << b_ << ")"; break;
  }
  return os.str();
}

ValueDeriv ortho_eval(const PolyFamily& fam, int n, double x) {
  require_degree(n);
  const double a = fam.a();
  const double b = fam.b();
  double p0 = 1.0, d0 = 0.0;
  if (n == 0) return {p0, d0};

  double p1 = 0.0, d1 = 0.0;
  switch (fam.family()) {
    case Family::Hermite: p1 = 2.0 * x; d1 = 2.0; break;
    case Family::Laguerre: p1 = 1.0 + a - x; d1 = -1.0; break;
    case Family::Jacobi:
      p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
      d1 = 0.5 * (a + b + 2.0);
      break;
  }
  // p_{k+1} = (A x + B) p_k - C p_{k-1}
  for (int k = 1; k < n; ++k) {
    double A = 0.0, B = 0.0, C = 0.0;
    switch (fam.family()) {
      case Family::Hermite: A = 2.0; C = 2.0 * k; break;
      case Family::Laguerre:
        A = -1.0 / (k + 1.0);
        B = (2.0 * k + 1.0 + a) / (k + 1.0);
        C = (k + a) / (k + 1.0);
        break;
      case Family::Jacobi: {
        const double c = 2.0 * k + a + b;
        const double den = 2.0 * (k + 1.0) * (k + a + b + 1.0) * c;
        A = (c + 1.0) * (c + 2.0) * c / den;
        B = (c + 1.0) * (a * a - b * b) / den;
        C = 2.0 * (k + a) * (k + b) * (c + 2.0) / den;
        break;
      }
    }
    const double p2 = (A * x + B) * p1 - C * p0;
    const double d2 = A * p1 + (A * x + B) * d1 - C * d0;
    p0 = p1; d0 = d1;
    p1 = p2; d1 = d2;
  }
  return {p1, d1};
}

double leading_coefficient(const PolyFamily& fam, int n) {
  require_degree(n);
  switch (fam.family()) {
    case Family::Hermite: return std::ldexp(1.0, n);
    case Family::Laguerre: return (n % 2 ? -1.0 : 1.0) / std::tgamma(n + 1.0);
    case Family::Jacobi: {
      if (n == 0) return 1.0;
      const double a = fam.a(), b = fam.b();
      return std::exp(std::lgamma(2.0 * n + a + b + 1.0) - n * std::numbers::ln2 - std::lgamma(n + 1.0) -
                      std::lgamma(n + a + b + 1.0));
    }
  }
  return 1.0;
}

double ortho_norm(const PolyFamily& fam, int n) {
  require_degree(n);
  const double a = fam.a(), b = fam.b();
  switch (fam.family()) {
    case Family::Hermite:
      return std::exp(0.5 * std::log(std::numbers::pi) + n * std::numbers::ln2 + std::lgamma(n + 1.0));
    case Family::Laguerre: return std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0));
    case Family::Jacobi:
      if (n == 0) return fam.mass();
      return std::exp((a + b + 1.0) * std::numbers::ln2 - std::log(2.0 * n + a + b + 1.0) +
                      std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) - std::lgamma(n + a + b + 1.0) -
                      std::lgamma(n + 1.0));
  }
  return 0.0;
}

double monic_norm(const PolyFamily& fam, int n) {
  const double k = leading_coefficient(fam, n);
  return ortho_norm(fam, n) / (k * k);
}

void orthonormal_functions(const PolyFamily& fam, int n_max, double x, std::span<double> value,
                           std::span<double> deriv) {
  require_degree(n_max);
  if (value.size() < static_cast<size_t>(n_max + 1) || deriv.size() < static_cast<size_t>(n_max + 1)) {
    throw InvalidParameter("orthonormal_functions: output spans too short");
  }
  const double dlog = fam.half_log_weight_derivative(x);
  // phi_j = exp(log_scale) * q_j with q the (rescaled) orthonormal polynomials
  double log_scale = 0.5 * fam.log_weight(x) - 0.5 * std::log(fam.mass());

  auto store = [&](int j, double q, double dq) {
    auto scaled = [&](double v) {
      if (v == 0.0) return 0.0;
      return std::copysign(std::exp(log_scale + std::log(std::abs(v))), v);
    };
    value[j] = scaled(q);
    deriv[j] = scaled(dq + dlog * q);
  };

  double q_prev = 0.0, dq_prev = 0.0;
  double q = 1.0, dq = 0.0;
  store(0, q, dq);
  for (int j = 0; j < n_max; ++j) {
    const double bj = j == 0 ? 0.0 : fam.beta(j);
    const double bj1 = fam.beta(j + 1);
    const double aj = fam.alpha(j);
    const double q_next = ((x - aj) * q - bj * q_prev) / bj1;
    const double dq_next = ((x - aj) * dq + q - bj * dq_prev) / bj1;
    q_prev = q; dq_prev = dq;
    q = q_next; dq = dq_next;

    const double mag = std::max(std::abs(q), std::abs(dq));
    if (mag > kBig) {
      q *= kSmall; dq *= kSmall; q_prev *= kSmall; dq_prev *= kSmall;
      log_scale -= std::log(kSmall);
    } else if (mag < kSmall && mag > 0.0 && std::max(std::abs(q_prev), std::abs(dq_prev)) < kSmall) {
      q *= kBig; dq *= kBig; q_prev *= kBig; dq_prev *= kBig;
      log_scale -= std::log(kBig);
    }
    store(j + 1, q, dq);
  }
}

void orthonormal_polynomials(const PolyFamily& fam, int n_max, double x, std::span<double> value,
                             std::span<double> deriv) {
  require_degree(n_max);
  if (value.size() < static_cast<size_t>(n_max + 1) || deriv.size() < static_cast<size_t>(n_max + 1)) {
    throw InvalidParameter("orthonormal_polynomials: output spans too short");
  }
  value[0] = 1.0 / std::sqrt(fam.mass());
  deriv[0] = 0.0;
  for (int j = 0; j < n_max; ++j) {
    const double bj = j == 0 ? 0.0 : fam.beta(j);
    const double qm = j == 0 ? 0.0 : value[j - 1];
    const double dqm = j == 0 ? 0.0 : deriv[j - 1];
    const double bj1 = fam.beta(j + 1);
    const double aj = fam.alpha(j);
    value[j + 1] = ((x - aj) * value[j] - bj * qm) / bj1;
    deriv[j + 1] = ((x - aj) * deriv[j] + value[j] - bj * dqm) / bj1;
  }
}

OrthonormalTable orthonormal_table(const PolyFamily& fam, int n_max, double x) {
  OrthonormalTable t;
  t.value.resize(n_max + 1);
  t.deriv.resize(n_max + 1);
  orthonormal_functions(fam, n_max, x, t.value, t.deriv);
  return t;
}

}  // namespace edgegap::specfun
