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
#include "edgegap/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "edgegap/error.hpp"
#include "edgegap/tridiag.hpp"

namespace edgegap::ensembles {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Symmetric tridiagonal model T with eigenvalues x = factor * lambda(T),
// clamped to [lo, hi].
struct TridiagonalModel {
  std::vector<double> d, e;
  double factor = 1.0;
  double lo = -kInf;
  double hi = kInf;

  double map(double lambda) const { return std::clamp(factor * lambda, lo, hi); }

  std::vector<double> eigenvalues() const {
    auto ev = linalg::tridiagonal_eigenvalues(d, e);
    for (auto& x : ev) x = map(x);
    return sorted(std::move(ev));
  }

  std::vector<double> eigenvalues_above(double x) const {
    auto ev = linalg::tridiagonal_eigenvalues_above(d, e, x / factor);
    for (auto& v : ev) v = map(v);
    return sorted(std::move(ev));
  }
};

// Gaussian beta-ensemble: (1/sqrt 2) tridiag(N(0,2); chi_{beta(N-1)}, ..., chi_beta),
// eigenvalue density e^{-lambda^2/2} |Delta|^beta; x = lambda / sqrt(beta).
TridiagonalModel gaussian_model(const EnsembleSpec& s, RandomStream& rs) {
  const int N = s.N;
  TridiagonalModel m;
  m.d.resize(N);
  m.e.resize(N > 1 ? N - 1 : 0);
  for (int i = 0; i < N; ++i) m.d[i] = rs.normal();
  for (int i = 0; i + 1 < N; ++i) m.e[i] = rs.chi(s.beta * (N - 1 - i)) / std::sqrt(2.0);
  m.factor = 1.0 / std::sqrt(static_cast<double>(s.beta));
  return m;
}

// Laguerre beta-ensemble: B lower bidiagonal with diagonal chi_{2 alpha - beta i}
// and subdiagonal chi_{beta (N-1-i)}; B B^T has density
// lambda^{alpha - 1 - beta (N-1)/2} e^{-lambda/2} |Delta|^beta; x = lambda / beta.
TridiagonalModel laguerre_model(const EnsembleSpec& s, RandomStream& rs) {
  const int N = s.N;
  const double two_alpha = 2.0 * s.a + 2.0 + s.beta * (N - 1);
  std::vector<double> bd(N), be(N > 1 ? N - 1 : 0);
  for (int i = 0; i < N; ++i) bd[i] = rs.chi(two_alpha - s.beta * i);
  for (int i = 0; i + 1 < N; ++i) be[i] = rs.chi(s.beta * (N - 1 - i));
  TridiagonalModel m;
  m.d.resize(N);
  m.e.resize(be.size());
  for (int i = 0; i < N; ++i) m.d[i] = bd[i] * bd[i] + (i > 0 ? be[i - 1] * be[i - 1] : 0.0);
  for (int i = 0; i + 1 < N; ++i) m.e[i] = bd[i] * be[i];
  m.factor = 1.0 / s.beta;
  m.lo = 0.0;
  return m;
}

// Jacobi beta-ensemble from independent canonical moments alpha_k on (-1, 1);
// the Jacobi matrix has spectrum density prod (2-l)^a (2+l)^b |Delta|^beta on
// (-2, 2); x = lambda / 2.
TridiagonalModel jacobi_model(const EnsembleSpec& s, RandomStream& rs) {
  const int n = s.N;
  const double bq = s.beta / 4.0;
  // alpha index k = -2 .. 2n-1 stored at k + 2
  std::vector<double> al(2 * n + 2, -1.0);
  for (int k = 0; k <= 2 * n - 2; ++k) {
    // density of alpha_k proportional to (1-x)^{p-1} (1+x)^{q-1}
    double p, q;
    if (k % 2 == 0) {
      p = (2 * n - k - 2) * bq + s.a + 1.0;
      q = (2 * n - k - 2) * bq + s.b + 1.0;
    } else {
      p = (2 * n - k - 3) * bq + s.a + s.b + 2.0;
      q = (2 * n - k - 1) * bq;
    }
    al[k + 2] = 2.0 * rs.beta(q, p) - 1.0;
  }
  auto A = [&](int k) { return al[k + 2]; };
  TridiagonalModel m;
  m.d.resize(n);
  m.e.resize(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) m.d[k] = (1.0 - A(2 * k - 1)) * A(2 * k) - (1.0 + A(2 * k - 1)) * A(2 * k - 2);
  for (int k = 0; k + 1 < n; ++k) {
    const double v = (1.0 - A(2 * k - 1)) * (1.0 - A(2 * k) * A(2 * k)) * (1.0 + A(2 * k + 1));
    m.e[k] = std::sqrt(std::max(v, 0.0));
  }
  m.factor = 0.5;
  m.lo = -1.0;
  m.hi = 1.0;
  return m;
}

TridiagonalModel tridiagonal_model(const EnsembleSpec& s, RandomStream& rs) {
  switch (s.weight) {
    case WeightKind::Gaussian: return gaussian_model(s, rs);
    case WeightKind::Laguerre: return laguerre_model(s, rs);
    case WeightKind::Jacobi: return jacobi_model(s, rs);
  }
  return {};
}

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gaussian_matrix(int rows, int cols, RandomStream& rs) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> X(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      if constexpr (std::is_same_v<Scalar, double>) {
        X(i, j) = rs.normal();
      } else {
        const double re = rs.normal(), im = rs.normal();
        X(i, j) = Scalar(re, im) / std::sqrt(2.0);
      }
    }
  return X;
}

template <class Scalar>
std::vector<double> dense_impl(const EnsembleSpec& s, RandomStream& rs) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int N = s.N;
  std::vector<double> ev;
  switch (s.weight) {
    case WeightKind::Gaussian: {
      // GOE: e^{-tr H^2 / 2}; GUE: e^{-tr H^2}
      const Mat X = gaussian_matrix<Scalar>(N, N, rs);
      const Mat H = (X + X.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
      ev.assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
      break;
    }
    case WeightKind::Laguerre: {
      // X is p x N; real: a = (p - N - 1)/2, complex: a = p - N
      const int p = s.beta == 1 ? static_cast<int>(std::lround(2.0 * s.a)) + N + 1 : static_cast<int>(std::lround(s.a)) + N;
      const Mat X = gaussian_matrix<Scalar>(p, N, rs);
      const Mat W = X.adjoint() * X;
      Eigen::SelfAdjointEigenSolver<Mat> es(W, Eigen::EigenvaluesOnly);
      ev.assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
      for (auto& x : ev) x = std::max(x, 0.0);
      break;
    }
    case WeightKind::Jacobi: {
      // lambda of A (A + B)^{-1}; x = 1 - 2 lambda
      auto rows = [&](double e) {
        return s.beta == 1 ? static_cast<int>(std::lround(2.0 * e)) + N + 1 : static_cast<int>(std::lround(e)) + N;
      };
      const Mat X = gaussian_matrix<Scalar>(rows(s.a), N, rs);
      const Mat Y = gaussian_matrix<Scalar>(rows(s.b), N, rs);
      const Mat A = X.adjoint() * X;
      const Mat B = Y.adjoint() * Y;
      Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(A, A + B, Eigen::EigenvaluesOnly);
      ev.resize(N);
      for (int i = 0; i < N; ++i) ev[i] = std::clamp(1.0 - 2.0 * es.eigenvalues()[i], -1.0, 1.0);
      break;
    }
  }
  return sorted(std::move(ev));
}

std::vector<double> dense_sample(const EnsembleSpec& s, RandomStream& rs) {
  return s.beta == 1 ? dense_impl<double>(s, rs) : dense_impl<std::complex<double>>(s, rs);
}

// ---------------------------------------------------------------------------
// Metropolis

struct Chain {
  const EnsembleSpec& spec;
  std::vector<double> x;
  double step;
  std::size_t accepted = 0;
  std::size_t proposed = 0;

  Chain(const EnsembleSpec& s) : spec(s), x(s.N), step(0.5) {
    const int N = s.N;
    for (int i = 0; i < N; ++i) {
      const double u = (i + 0.5) / N;
      switch (s.weight) {
        case WeightKind::Gaussian: x[i] = 2.0 * u - 1.0; break;
        case WeightKind::Laguerre: x[i] = (1.0 + s.a + N) * u * 2.0 / s.beta; break;
        case WeightKind::Jacobi: x[i] = 0.8 * (2.0 * u - 1.0); break;
      }
    }
    if (s.weight == WeightKind::Jacobi) step = 0.2;
    if (s.weight == WeightKind::Laguerre) step = 1.0 + 0.5 * s.a;
  }

  void sweep(RandomStream& rs) {
    const int N = spec.N;
    for (int i = 0; i < N; ++i) {
      const double y = x[i] + step * rs.normal();
      ++proposed;
      if (!spec.in_support(y)) continue;
      double lr = spec.log_weight(y) - spec.log_weight(x[i]);
      for (int j = 0; j < N; ++j) {
        if (j == i) continue;
        lr += spec.beta * (std::log(std::abs(y - x[j])) - std::log(std::abs(x[i] - x[j])));
      }
      if (lr >= 0.0 || std::log(rs.uniform()) < lr) {
        x[i] = y;
        ++accepted;
      }
    }
  }

  void burn(RandomStream& rs, int sweeps) {
    std::size_t acc0 = accepted, prop0 = proposed;
    for (int t = 1; t <= sweeps; ++t) {
      sweep(rs);
      if (t % 100 == 0 && t <= sweeps / 2) {
        const double rate = static_cast<double>(accepted - acc0) / static_cast<double>(proposed - prop0);
        step *= std::exp(rate - 0.4);
        acc0 = accepted;
        prop0 = proposed;
      }
    }
    accepted = 0;
    proposed = 0;
  }
};

double gelman_rubin(const std::vector<std::vector<double>>& chains) {
  const std::size_t m = chains.size();
  const std::size_t n = chains.front().size();
  if (m < 2 || n < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> means(m), vars(m);
  for (std::size_t c = 0; c < m; ++c) {
    const double mu = std::accumulate(chains[c].begin(), chains[c].begin() + n, 0.0) / n;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += (chains[c][i] - mu) * (chains[c][i] - mu);
    means[c] = mu;
    vars[c] = v / (n - 1);
  }
  const double grand = std::accumulate(means.begin(), means.end(), 0.0) / m;
  double B = 0.0;
  for (double mu : means) B += (mu - grand) * (mu - grand);
  B *= static_cast<double>(n) / (m - 1);
  const double W = std::accumulate(vars.begin(), vars.end(), 0.0) / m;
  const double V = (n - 1.0) / n * W + B / n;
  return std::sqrt(V / W);
}

constexpr std::uint64_t kMetropolisTag = 0x4D45545230000000ULL;

}  // namespace

// ---------------------------------------------------------------------------
// EnsembleSpec

EnsembleSpec EnsembleSpec::gaussian(int beta, int N, Sampler s) {
  EnsembleSpec e{beta, N, WeightKind::Gaussian, 0.0, 0.0, s};
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::laguerre(int beta, int N, double a, Sampler s) {
  EnsembleSpec e{beta, N, WeightKind::Laguerre, a, 0.0, s};
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::jacobi(int beta, int N, double a, double b, Sampler s) {
  EnsembleSpec e{beta, N, WeightKind::Jacobi, a, b, s};
  e.validate();
  return e;
}

void EnsembleSpec::validate() const {
  if (beta != 1 && beta != 2) throw InvalidParameter("beta must be 1 or 2");
  if (N < 1) throw InvalidParameter("N must be at least 1");
  if (weight != WeightKind::Gaussian && !(a > -1.0)) throw InvalidParameter("weight exponent a must exceed -1");
  if (weight == WeightKind::Jacobi && !(b > -1.0)) throw InvalidParameter("weight exponent b must exceed -1");
  if (sampler == Sampler::MetropolisOracle && N > 4) throw InvalidParameter("MetropolisOracle is limited to N <= 4");
  if (sampler == Sampler::DenseMatrix && weight != WeightKind::Gaussian) {
    // real: exponent (p - N - 1)/2 with p >= N; complex: exponent p - N
    auto ok = [&](double e) { return beta == 1 ? is_integer(2.0 * e) && e >= -0.5 : is_integer(e) && e >= 0.0; };
    if (!ok(a) || (weight == WeightKind::Jacobi && !ok(b))) {
      std::ostringstream os;
      os << "DenseMatrix sampler needs " << (beta == 1 ? "half-integer" : "integer")
         << " weight exponents, got " << describe();
      throw InvalidParameter(os.str());
    }
  }
}

double EnsembleSpec::support_lo() const {
  switch (weight) {
    case WeightKind::Gaussian: return -kInf;
    case WeightKind::Laguerre: return 0.0;
    case WeightKind::Jacobi: return -1.0;
  }
  return -kInf;
}

double EnsembleSpec::support_hi() const { return weight == WeightKind::Jacobi ? 1.0 : kInf; }

bool EnsembleSpec::in_support(double x) const {
  return weight == WeightKind::Gaussian ? std::isfinite(x) : (x > support_lo() && x < support_hi());
}

double EnsembleSpec::log_weight(double x) const {
  if (!in_support(x)) return -kInf;
  switch (weight) {
    case WeightKind::Gaussian: return -0.5 * beta * x * x;
    case WeightKind::Laguerre: return (a == 0.0 ? 0.0 : a * std::log(x)) - 0.5 * beta * x;
    case WeightKind::Jacobi:
      return (a == 0.0 ? 0.0 : a * std::log1p(-x)) + (b == 0.0 ? 0.0 : b * std::log1p(x));
  }
  return -kInf;
}

std::string EnsembleSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  const char* sym = beta == 1 ? "OE" : "UE";
  switch (weight) {
    case WeightKind::Gaussian: os << "G" << sym; break;
    case WeightKind::Laguerre: os << "L" << sym << "(a=" << a << ")"; break;
    case WeightKind::Jacobi: os << "J" << sym << "(a=" << a << ", b=" << b << ")"; break;
  }
  os << " N=" << N;
  return os.str();
}

// ---------------------------------------------------------------------------
// RandomStream

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t st = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
  std::uint64_t w[4];
  for (auto& v : w) v = splitmix64(st);
  std::seed_seq seq{static_cast<std::uint32_t>(w[0]), static_cast<std::uint32_t>(w[0] >> 32),
                    static_cast<std::uint32_t>(w[1]), static_cast<std::uint32_t>(w[1] >> 32),
                    static_cast<std::uint32_t>(w[2]), static_cast<std::uint32_t>(w[2] >> 32),
                    static_cast<std::uint32_t>(w[3]), static_cast<std::uint32_t>(w[3] >> 32)};
  engine_.seed(seq);
}

double RandomStream::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double RandomStream::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double RandomStream::gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(engine_); }

double RandomStream::chi(double k) { return k > 0.0 ? std::sqrt(2.0 * gamma(0.5 * k)) : 0.0; }

double RandomStream::beta(double p, double q) {
  const double x = gamma(p);
  const double y = gamma(q);
  return x / (x + y);
}

// ---------------------------------------------------------------------------
// Sampling

SpectrumSample sample_spectrum(const EnsembleSpec& spec, RandomStream& stream) {
  spec.validate();
  SpectrumSample out;
  switch (spec.sampler) {
    case Sampler::Tridiagonal: out.eigenvalues = tridiagonal_model(spec, stream).eigenvalues(); break;
    case Sampler::DenseMatrix: out.eigenvalues = dense_sample(spec, stream); break;
    case Sampler::MetropolisOracle: {
      Chain c(spec);
      c.burn(stream, 10000);
      out.eigenvalues = sorted(c.x);
      break;
    }
  }
  return out;
}

SpectrumSample sample_spectrum_above(const EnsembleSpec& spec, RandomStream& stream, double threshold) {
  spec.validate();
  if (spec.sampler != Sampler::Tridiagonal) throw InvalidParameter("partial spectra need the Tridiagonal sampler");
  return {tridiagonal_model(spec, stream).eigenvalues_above(threshold), 0};
}

std::vector<SpectrumSample> sample_batch_above(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed,
                                               double threshold, std::uint64_t first_index, Exec exec) {
  spec.validate();
  std::vector<SpectrumSample> out(n);
  const bool par = exec == Exec::Parallel;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64) if (par)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::uint64_t id = first_index + static_cast<std::uint64_t>(i);
    RandomStream rs(seed, id);
    out[i] = sample_spectrum_above(spec, rs, threshold);
    out[i].seed_id = id;
  }
  return out;
}

std::vector<SpectrumSample> sample_batch(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed,
                                         std::uint64_t first_index, Exec exec) {
  spec.validate();
  std::vector<SpectrumSample> out(n);
  const bool par = exec == Exec::Parallel;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64) if (par)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::uint64_t id = first_index + static_cast<std::uint64_t>(i);
    RandomStream rs(seed, id);
    out[i] = sample_spectrum(spec, rs);
    out[i].seed_id = id;
  }
  return out;
}

MetropolisResult metropolis_sample(const EnsembleSpec& spec, std::size_t n_samples, std::uint64_t seed, int chains,
                                   int burn_in, int thinning) {
  spec.validate();
  if (spec.N > 4) throw InvalidParameter("Metropolis sampling is limited to N <= 4");
  if (chains < 1 || burn_in < 0 || thinning < 1) throw InvalidParameter("invalid Metropolis settings");
  const std::size_t per = (n_samples + chains - 1) / chains;
  std::vector<std::vector<SpectrumSample>> draws(chains);
  std::vector<std::vector<double>> largest(chains);
  std::vector<double> rate(chains);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < chains; ++c) {
    RandomStream rs(seed, kMetropolisTag + static_cast<std::uint64_t>(c));
    Chain ch(spec);
    ch.burn(rs, burn_in);
    draws[c].reserve(per);
    for (std::size_t k = 0; k < per; ++k) {
      for (int t = 0; t < thinning; ++t) ch.sweep(rs);
      SpectrumSample s{sorted(ch.x), kMetropolisTag + c * per + k};
      largest[c].push_back(s.eigenvalues.back());
      draws[c].push_back(std::move(s));
    }
    rate[c] = static_cast<double>(ch.accepted) / static_cast<double>(std::max<std::size_t>(ch.proposed, 1));
  }
  MetropolisResult out;
  for (int c = 0; c < chains; ++c)
    for (auto& s : draws[c])
      if (out.samples.size() < n_samples) out.samples.push_back(std::move(s));
  out.rhat = gelman_rubin(largest);
  out.acceptance = std::accumulate(rate.begin(), rate.end(), 0.0) / chains;
  return out;
}

// ---------------------------------------------------------------------------
// Superposition and decimation

SpectrumSample superpose(const SpectrumSample& s1, const SpectrumSample& s2) {
  SpectrumSample out;
  out.eigenvalues.resize(s1.size() + s2.size());
  std::merge(s1.eigenvalues.begin(), s1.eigenvalues.end(), s2.eigenvalues.begin(), s2.eigenvalues.end(),
             out.eigenvalues.begin());
  out.seed_id = s1.seed_id;
  return out;
}

std::vector<double> decimate(const DecimationView& view) {
  const std::size_t M = view.source.size();
  const std::size_t start = view.parity == Parity::Odd ? 0 : 1;
  std::vector<double> out;
  out.reserve((M + 1) / 2);
  for (std::size_t l = start; l < M; l += 2)
    out.push_back(view.edge == LabelEdge::Right ? view.source[M - 1 - l] : view.source[l]);
  return out;
}

std::vector<double> decimated_superposition(const SpectrumSample& s1, const SpectrumSample& s2, Parity parity,
                                            LabelEdge edge) {
  const auto sup = superpose(s1, s2);
  return sorted(decimate({parity, edge, sup.eigenvalues}));
}

// ---------------------------------------------------------------------------
// Statistics

std::size_t count_in(std::span<const double> points, const Interval& J) {
  std::size_t c = 0;
  for (double x : points)
    if (x > J.lo && x < J.hi) ++c;
  return c;
}

double GapStatistics::probability(std::size_t k) const {
  return k < counts.size() && n_samples > 0 ? static_cast<double>(counts[k]) / static_cast<double>(n_samples) : 0.0;
}

GapStatistics gap_statistics(const std::vector<std::vector<double>>& samples, const Interval& J) {
  GapStatistics g{J, {}, samples.size()};
  for (const auto& s : samples) {
    const std::size_t k = count_in(s, J);
    if (g.counts.size() <= k) g.counts.resize(k + 1, 0);
    ++g.counts[k];
  }
  return g;
}

Estimate empirical_genfun(const std::vector<std::vector<double>>& samples, const Interval& J, double xi) {
  if (samples.empty()) throw InvalidParameter("empirical_genfun needs at least one sample");
  if (!(xi >= 0.0 && xi <= 1.0)) throw InvalidParameter("xi must lie in [0, 1]");
  const double n = static_cast<double>(samples.size());
  double sum = 0.0, sum2 = 0.0;
  for (const auto& s : samples) {
    const double v = std::pow(1.0 - xi, static_cast<double>(count_in(s, J)));
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  if (samples.size() < 2) return {mean, 0.0};
  const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw InvalidParameter("ks_two_sample needs non-empty samples");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / n1 - j / n2));
  }
  const double ne = std::sqrt(n1 * n2 / (n1 + n2));
  return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d), x.size(), y.size()};
}

namespace {

double pmf(const std::vector<double>& p, long k) {
  return k >= 0 && k < static_cast<long>(p.size()) ? p[k] : 0.0;
}

struct CountingSides {
  std::vector<double> direct, derived, verbatim;
};

CountingSides counting_sides(const std::vector<std::size_t>& c1, const std::vector<std::size_t>& c2, std::size_t lo,
                             std::size_t hi, std::size_t n_rows) {
  const double pairs = static_cast<double>(hi - lo);
  std::size_t kmax = 0;
  for (std::size_t i = lo; i < hi; ++i) kmax = std::max({kmax, c1[i], c2[i]});
  std::vector<std::size_t> single(kmax + 1, 0), odd(n_rows, 0);
  for (std::size_t i = lo; i < hi; ++i) {
    ++single[c1[i]];
    ++single[c2[i]];
    const std::size_t n = (c1[i] + c2[i] + 1) / 2;
    if (n < n_rows) ++odd[n];
  }
  std::vector<double> e1(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) e1[k] = static_cast<double>(single[k]) / (2.0 * pairs);
  CountingSides s{std::vector<double>(n_rows), std::vector<double>(n_rows, 0.0), std::vector<double>(n_rows, 0.0)};
  for (std::size_t n = 0; n < n_rows; ++n) s.direct[n] = static_cast<double>(odd[n]) / pairs;
  for (std::size_t n = 0; n < n_rows; ++n) {
    const long ln = static_cast<long>(n);
    double d = 0.0;
    for (long M : {2 * ln - 1, 2 * ln}) {
      for (long j = 0; j <= M; ++j) d += pmf(e1, j) * pmf(e1, M - j);
    }
    s.derived[n] = d;
    double v = 0.0;
    for (long l = 0; l <= 2 * ln; ++l) v += pmf(e1, 2 * l - 1) * (pmf(e1, l) + pmf(e1, l - 1));
    s.verbatim[n] = v;
  }
  return s;
}

}  // namespace

CountingReport counting_relation_check(const std::vector<std::vector<double>>& copy1,
                                       const std::vector<std::vector<double>>& copy2, const Interval& J) {
  if (copy1.size() != copy2.size() || copy1.empty())
    throw InvalidParameter("counting_relation_check needs equally many non-empty paired samples");
  const std::size_t P = copy1.size();
  std::vector<std::size_t> c1(P), c2(P);
  std::size_t n_rows = 1;
  for (std::size_t i = 0; i < P; ++i) {
    c1[i] = count_in(copy1[i], J);
    c2[i] = count_in(copy2[i], J);
    n_rows = std::max(n_rows, std::max(c1[i], c2[i]) + 1);
  }
  const auto full = counting_sides(c1, c2, 0, P, n_rows);

  constexpr std::size_t kBatches = 20;
  std::vector<std::vector<double>> diffs(n_rows);
  if (P >= 2 * kBatches) {
    for (std::size_t b = 0; b < kBatches; ++b) {
      const auto s = counting_sides(c1, c2, b * P / kBatches, (b + 1) * P / kBatches, n_rows);
      for (std::size_t n = 0; n < n_rows; ++n) diffs[n].push_back(s.direct[n] - s.derived[n]);
    }
  }

  CountingReport rep;
  for (std::size_t n = 0; n < n_rows; ++n) {
    CountingRow row{static_cast<int>(n), full.direct[n], full.derived[n], full.verbatim[n], 0.0};
    if (!diffs[n].empty()) {
      const double B = static_cast<double>(diffs[n].size());
      const double mu = std::accumulate(diffs[n].begin(), diffs[n].end(), 0.0) / B;
      double v = 0.0;
      for (double d : diffs[n]) v += (d - mu) * (d - mu);
      row.std_error = std::sqrt(v / (B - 1.0) / B);
    }
    const double disc = std::abs(row.direct - row.derived);
    const double z = disc == 0.0 ? 0.0 : (row.std_error > 0.0 ? disc / row.std_error : kInf);
    if (disc > rep.max_discrepancy) {
      rep.max_discrepancy = disc;
      rep.max_discrepancy_std_error = row.std_error;
    }
    rep.max_z = std::max(rep.max_z, z);
    rep.max_verbatim_discrepancy = std::max(rep.max_verbatim_discrepancy, std::abs(row.direct - row.verbatim));
    rep.derived_total += row.derived;
    rep.rows.push_back(row);
  }
  rep.pass = rep.max_z <= 3.0;
  return rep;
}

SuperpositionReport superposition_identity_check(SuperposedPair pair, double a, int N, std::size_t n_samples,
                                                 std::uint64_t seed, double ue_shift) {
  if (N < 1 || n_samples < 2) throw InvalidParameter("superposition_identity_check needs N >= 1 and >= 2 samples");
  EnsembleSpec oe, ue;
  if (pair == SuperposedPair::Laguerre) {
    if (a != 0.0) throw InvalidParameter("the Laguerre pair (e^{-x/2}, e^{-x}) has a = 0 only");
    oe = EnsembleSpec::laguerre(1, N, 0.0);
    ue = EnsembleSpec::laguerre(2, N, ue_shift);
  } else {
    const double g1 = 0.5 * (a - 1.0);
    if (!(g1 > -1.0)) throw InvalidParameter("the Jacobi pair needs (a - 1)/2 > -1");
    oe = EnsembleSpec::jacobi(1, N, g1, 0.0);
    ue = EnsembleSpec::jacobi(2, N, a + ue_shift, 0.0);
  }
  const auto copies = sample_batch(oe, 2 * n_samples, seed, 0);
  const auto unitary = sample_batch(ue, n_samples, seed, 2 * n_samples);

  std::vector<double> d1, d2, d3, u1, u2, u3;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const auto even = decimated_superposition(copies[2 * i], copies[2 * i + 1], Parity::Even, LabelEdge::Right);
    d1.push_back(even.back());
    d2.push_back(even.size() >= 2 ? even[even.size() - 2] : even.back());
    d3.push_back(even.front());
    const auto& u = unitary[i].eigenvalues;
    u1.push_back(u.back());
    u2.push_back(u.size() >= 2 ? u[u.size() - 2] : u.back());
    u3.push_back(u.front());
  }
  SuperpositionReport rep;
  rep.pair = pair;
  rep.a = a;
  rep.ue_a = ue.a;
  rep.N = N;
  rep.n_samples = n_samples;
  rep.seed = seed;
  rep.largest = ks_two_sample(d1, u1);
  rep.second_largest = ks_two_sample(d2, u2);
  rep.smallest = ks_two_sample(d3, u3);
  rep.pass = rep.largest.p_value > 1e-3 && rep.second_largest.p_value > 1e-3 && rep.smallest.p_value > 1e-3;
  return rep;
}

}  // namespace edgegap::ensembles
