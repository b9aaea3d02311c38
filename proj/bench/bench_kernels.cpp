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
// Serial against OpenMP assembly of Nystrom matrices and Monte Carlo batches.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include "edgegap/ensembles.hpp"
#include "edgegap/fredholm.hpp"
#include "edgegap/kernels.hpp"
#include "edgegap/limits.hpp"
#include "edgegap/parallel.hpp"
#include "edgegap/quadrature.hpp"

namespace {

using namespace edgegap;
using kernels::KernelSpec;

std::vector<double> nodes(int m) { return quad::soft_edge_rule(-2.0, m).nodes; }

KernelSpec scaled_laguerre(int N) {
  return limits::ScalingMap::make(limits::ScalingKind::SoftLaguerre0, N).apply(KernelSpec::decimated_laguerre(N));
}

void matrix_bench(benchmark::State& state, const KernelSpec& k, Exec exec) {
  const auto x = nodes(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::kernel_matrix(k, x, x, exec));
  state.SetComplexityN(state.range(0));
}

void BM_SoftMatrixSerial(benchmark::State& s) { matrix_bench(s, KernelSpec::soft_airy(), Exec::Serial); }
void BM_SoftMatrixParallel(benchmark::State& s) { matrix_bench(s, KernelSpec::soft_airy(), Exec::Parallel); }
void BM_SoftMatrixReference(benchmark::State& s) {
  const auto x = nodes(static_cast<int>(s.range(0)));
  const auto k = KernelSpec::soft_airy();
  for (auto _ : s) benchmark::DoNotOptimize(kernels::kernel_matrix_reference(k, x, x));
}

void BM_DecimatedLaguerreSerial(benchmark::State& s) { matrix_bench(s, scaled_laguerre(200), Exec::Serial); }
void BM_DecimatedLaguerreParallel(benchmark::State& s) { matrix_bench(s, scaled_laguerre(200), Exec::Parallel); }

void BM_GenfunSoft(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(fredholm::genfun_soft(0.0, 1.0, static_cast<int>(s.range(0))));
}

void batch_bench(benchmark::State& state, Exec exec) {
  const auto spec = ensembles::EnsembleSpec::laguerre(1, static_cast<int>(state.range(0)), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(ensembles::sample_batch(spec, 256, 1, 0, exec));
}
void BM_SampleBatchSerial(benchmark::State& s) { batch_bench(s, Exec::Serial); }
void BM_SampleBatchParallel(benchmark::State& s) { batch_bench(s, Exec::Parallel); }

}  // namespace

BENCHMARK(BM_SoftMatrixSerial)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SoftMatrixParallel)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SoftMatrixReference)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DecimatedLaguerreSerial)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecimatedLaguerreParallel)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenfunSoft)->Arg(40)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleBatchSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleBatchParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  edgegap::configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
