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
#include <string>
#include <vector>

#include <json.hpp>

namespace edgegap::suite {

using Json = nlohmann::ordered_json;

/// Deliberate defects used to check that the suite can fail.
enum class Mutation {
  None,
  SoftKernelSign  // negates the discretized Airy kernel in the factorized determinant
};

struct Options {
  std::uint64_t seed = 20261015;
  Mutation mutation = Mutation::None;
};

struct CheckResult {
  int criterion = 0;
  std::string title;
  bool pass = false;
  bool stochastic = false;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  Json detail;
};

CheckResult kernel_form_equivalence(const Options& opt);     // 1
CheckResult determinant_lemma(const Options& opt);           // 2
CheckResult series_cross_check(const Options& opt);          // 3
CheckResult xi_one_consistency(const Options& opt);          // 4
CheckResult quadrature_convergence(const Options& opt);      // 5
CheckResult superposition_theorem(const Options& opt);       // 6
CheckResult soft_limit_formula(const Options& opt);          // 7
CheckResult hard_limit_formula(const Options& opt);          // 8
CheckResult uniform_estimates(const Options& opt);           // 9
CheckResult monte_carlo_closure(const Options& opt);         // 10
CheckResult brute_force_micro_oracle(const Options& opt);    // 11

/// Runs criterion k (1..11).
CheckResult run_criterion(int k, const Options& opt);

/// Criteria of a named suite: "fast" holds the deterministic ones, "full" all.
std::vector<int> suite_criteria(const std::string& name);

/// Gap probabilities E(n), n = 0..2, of odd(OE_2 u OE_2) on an interval
/// touching the right end, by direct 4-fold quadrature of the joint density
/// of the two independent pairs.
struct MicroOracle {
  std::vector<double> direct;    // 4-fold quadrature
  std::vector<double> fredholm;  // decimated kernel route
  double max_abs_diff = 0.0;
};
MicroOracle micro_oracle_laguerre(double s);
MicroOracle micro_oracle_jacobi(double a, double t);

/// Aggregate report {tool_version, seed, config, checks, pass}.
Json report_json(const std::string& name, const Options& opt, const std::vector<CheckResult>& results);

}  // namespace edgegap::suite
