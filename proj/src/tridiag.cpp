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
#include "edgegap/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "edgegap/error.hpp"

namespace edgegap::linalg {
namespace {

// Implicit QL with Wilkinson-type shifts (the EISPACK tql1/tql2 scheme).
// d holds the diagonal, e the sub-diagonal padded with a trailing zero.
// When z is non-empty it is the first row of the accumulated rotations.
void implicit_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  const bool track = !z.empty();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw std::runtime_error("implicit QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        bool underflow = false;
        for (; i >= l; --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (track) {
            const double zf = z[i + 1];
            z[i + 1] = s * z[i] + c * zf;
            z[i] = c * z[i] - s * zf;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void check_sizes(std::span<const double> diag, std::span<const double> offdiag) {
  if (diag.empty()) throw InvalidParameter("tridiagonal matrix must be non-empty");
  if (offdiag.size() + 1 != diag.size()) throw InvalidParameter("off-diagonal must have n-1 entries");
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> offdiag) {
  check_sizes(diag, offdiag);
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(offdiag.begin(), offdiag.end());
  e.push_back(0.0);
  std::vector<double> none;
  implicit_ql(d, e, none);
  std::sort(d.begin(), d.end());
  return d;
}

TridiagonalSpectrum tridiagonal_eigen_first_row(std::span<const double> diag, std::span<const double> offdiag) {
  check_sizes(diag, offdiag);
  const size_t n = diag.size();
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(offdiag.begin(), offdiag.end());
  e.push_back(0.0);
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;
  implicit_ql(d, e, z);

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return d[i] < d[j]; });
  TridiagonalSpectrum out;
  out.values.reserve(n);
  out.first_components.reserve(n);
  for (size_t k : order) {
    out.values.push_back(d[k]);
    out.first_components.push_back(z[k]);
  }
  return out;
}

int sturm_count_below(std::span<const double> diag, std::span<const double> offdiag, double x) {
  check_sizes(diag, offdiag);
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double e2 = i > 0 ? offdiag[i - 1] * offdiag[i - 1] : 0.0;
    q = diag[i] - x - (i > 0 ? e2 / q : 0.0);
    if (std::abs(q) < tiny) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiagonal_eigenvalues_above(std::span<const double> diag, std::span<const double> offdiag,
                                                  double threshold) {
  check_sizes(diag, offdiag);
  const int n = static_cast<int>(diag.size());
  if (n == 0) return {};
  double hi = -std::numeric_limits<double>::infinity();
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    hi = std::max(hi, diag[i] + r);
    norm = std::max(norm, std::abs(diag[i]) + r);
  }
  hi += std::numeric_limits<double>::epsilon() * norm + std::numeric_limits<double>::min();
  const int below = sturm_count_below(diag, offdiag, threshold);
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(norm, 1e-300);
  std::vector<double> out;
  out.reserve(n - below);
  for (int k = below; k < n; ++k) {
    // k-th eigenvalue (0-based, ascending): count_below(lo) <= k < count_below(hi)
    double lo = out.empty() ? threshold : out.back();
    double up = hi;
    while (up - lo > tol) {
      const double mid = 0.5 * (lo + up);
      if (mid <= lo || mid >= up) break;
      if (sturm_count_below(diag, offdiag, mid) > k) up = mid;
      else lo = mid;
    }
    out.push_back(0.5 * (lo + up));
  }
  return out;
}

}  // namespace edgegap::linalg
