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

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "edgegap/parallel.hpp"
#include "edgegap/quadrature.hpp"

namespace edgegap::ensembles {

enum class WeightKind { Gaussian, Laguerre, Jacobi };
enum class Sampler { Tridiagonal, DenseMatrix, MetropolisOracle };

/**
 * Eigenvalue density proportional to prod g(x_l) prod |x_j - x_k|^beta with
 *   Gaussian  g = e^{-beta x^2 / 2}
 *   Laguerre  g = x^a e^{-beta x / 2},        x > 0
 *   Jacobi    g = (1 - x)^a (1 + x)^b,        -1 < x < 1
 */
struct EnsembleSpec {
  int beta = 1;
  int N = 1;
  WeightKind weight = WeightKind::Gaussian;
  double a = 0.0;
  double b = 0.0;
  Sampler sampler = Sampler::Tridiagonal;

  static EnsembleSpec gaussian(int beta, int N, Sampler s = Sampler::Tridiagonal);
  static EnsembleSpec laguerre(int beta, int N, double a, Sampler s = Sampler::Tridiagonal);
  static EnsembleSpec jacobi(int beta, int N, double a, double b, Sampler s = Sampler::Tridiagonal);

  /// Throws InvalidParameter on any violated invariant.
  void validate() const;

  double support_lo() const;
  double support_hi() const;
  bool in_support(double x) const;
  /// log g(x), -inf outside the support.
  double log_weight(double x) const;
  std::string describe() const;
};

/// Independent random substream keyed by (seed, index).
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index);

  double uniform();
  double normal();
  double gamma(double shape);
  /// chi variable with k degrees of freedom (k > 0, not necessarily integer).
  double chi(double k);
  /// Beta(p, q) on (0, 1).
  double beta(double p, double q);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct SpectrumSample {
  std::vector<double> eigenvalues;  // ascending
  std::uint64_t seed_id = 0;

  std::size_t size() const { return eigenvalues.size(); }
};

SpectrumSample sample_spectrum(const EnsembleSpec& spec, RandomStream& stream);

/**
 * The eigenvalues above `threshold` of the matrix sample_spectrum would draw
 * from the same stream (Tridiagonal sampler only), found by Sturm bisection.
 * The result is the tail of the full sample, so edge statistics are unchanged.
 */
SpectrumSample sample_spectrum_above(const EnsembleSpec& spec, RandomStream& stream, double threshold);

std::vector<SpectrumSample> sample_batch_above(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed,
                                               double threshold, std::uint64_t first_index = 0,
                                               Exec exec = Exec::Parallel);

/// Samples with indices first_index .. first_index + n - 1 of the stream
/// family `seed`; the result does not depend on the thread count.
std::vector<SpectrumSample> sample_batch(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed,
                                         std::uint64_t first_index = 0, Exec exec = Exec::Parallel);

struct MetropolisResult {
  std::vector<SpectrumSample> samples;
  double rhat = 0.0;  // Gelman-Rubin statistic of the largest eigenvalue
  double acceptance = 0.0;
};

/// Random-walk Metropolis on the density itself (N <= 4): `chains` chains,
/// `burn_in` sweeps discarded, one sample every `thinning` sweeps.
MetropolisResult metropolis_sample(const EnsembleSpec& spec, std::size_t n_samples, std::uint64_t seed,
                                   int chains = 4, int burn_in = 10000, int thinning = 50);

// ---------------------------------------------------------------------------
// Superposition and decimation

SpectrumSample superpose(const SpectrumSample& s1, const SpectrumSample& s2);

enum class Parity { Odd, Even };
enum class LabelEdge {
  Right,  // label 1 is the largest point (soft edge, or x = 1)
  Left    // label 1 is the smallest point (hard edge at the left end point)
};

struct DecimationView {
  Parity parity = Parity::Odd;
  LabelEdge edge = LabelEdge::Right;
  std::span<const double> source;  // ascending
};

/// Points with the requested label parity, in label order.
std::vector<double> decimate(const DecimationView& view);

/// Superpose two independent copies and keep one parity, ascending.
std::vector<double> decimated_superposition(const SpectrumSample& s1, const SpectrumSample& s2, Parity parity,
                                            LabelEdge edge);

// ---------------------------------------------------------------------------
// Empirical statistics

using quad::Interval;

/// Number of points in the open interval J.
std::size_t count_in(std::span<const double> points, const Interval& J);

struct GapStatistics {
  Interval J;
  std::vector<std::size_t> counts;  // counts[k] = #{samples with k points in J}
  std::size_t n_samples = 0;

  double probability(std::size_t k) const;
};

GapStatistics gap_statistics(const std::vector<std::vector<double>>& samples, const Interval& J);

struct Estimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Mean of (1 - xi)^{#points in J} and its standard error.
Estimate empirical_genfun(const std::vector<std::vector<double>>& samples, const Interval& J, double xi);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

/// Kolmogorov survival function Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_q(double lambda);

struct CountingRow {
  int n = 0;
  double direct = 0.0;     // fraction of pairs whose decimated count is n
  double derived = 0.0;    // sum_{M in {2n-1, 2n}} sum_{j+k=M} E1(j) E1(k)
  double verbatim = 0.0;   // sum_{l=0}^{2n} E1(2l-1) (E1(l) + E1(l-1))
  double std_error = 0.0;  // batch-means error of direct - derived
};

struct CountingReport {
  std::vector<CountingRow> rows;
  double max_discrepancy = 0.0;  // max |direct - derived|
  double max_discrepancy_std_error = 0.0;
  double max_z = 0.0;            // max |direct - derived| / std_error
  double max_verbatim_discrepancy = 0.0;
  double derived_total = 0.0;    // sum_n derived
  bool pass = false;             // max_z <= 3
};

/**
 * Compares the distribution of the number of odd-labelled points of
 * copy1[i] u copy2[i] in J with the prediction from the single-copy counts.
 * J must touch the labelling edge so that the odd-labelled points in J are
 * the first ceil(M/2) labels.
 */
CountingReport counting_relation_check(const std::vector<std::vector<double>>& copy1,
                                       const std::vector<std::vector<double>>& copy2, const Interval& J);

enum class SuperposedPair {
  Laguerre,  // g1 = e^{-x/2},             g2 = e^{-x}
  Jacobi     // g1 = (1-x)^{(a-1)/2},      g2 = (1-x)^a,  on (-1, 1)
};

struct SuperpositionReport {
  SuperposedPair pair = SuperposedPair::Laguerre;
  double a = 0.0;
  double ue_a = 0.0;  // exponent actually used for the unitary ensemble
  int N = 0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  KsResult largest;
  KsResult second_largest;
  KsResult smallest;
  bool pass = false;  // all three p-values > 0.001
};

/**
 * even(OE_N(g1) u OE_N(g1)) against UE_N(g2), labels counted from the right.
 * `ue_shift` shifts the unitary exponent (negative control).  For the
 * Laguerre pair only a = 0 is accepted.
 */
SuperpositionReport superposition_identity_check(SuperposedPair pair, double a, int N, std::size_t n_samples,
                                                 std::uint64_t seed, double ue_shift = 0.0);

}  // namespace edgegap::ensembles
