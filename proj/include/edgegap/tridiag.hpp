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
#include <vector>

namespace edgegap::linalg {

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with the
/// given diagonal and sub-diagonal (size n-1), by implicit-shift QL.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> offdiag);

struct TridiagonalSpectrum {
  std::vector<double> values;            // ascending
  std::vector<double> first_components;  // first entry of each unit eigenvector
};

/// As tridiagonal_eigenvalues, additionally tracking the first row of the
/// eigenvector matrix (all that Golub-Welsch needs).
TridiagonalSpectrum tridiagonal_eigen_first_row(std::span<const double> diag, std::span<const double> offdiag);

/// Number of eigenvalues strictly below x (Sturm sequence count).
int sturm_count_below(std::span<const double> diag, std::span<const double> offdiag, double x);

/// Eigenvalues (ascending) larger than `threshold`, by bisection on the
/// Sturm count; O(n) per step, intended for the few eigenvalues near an edge.
std::vector<double> tridiagonal_eigenvalues_above(std::span<const double> diag, std::span<const double> offdiag,
                                                  double threshold);

}  // namespace edgegap::linalg
