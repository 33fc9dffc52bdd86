// Copyright 2026 The vqsdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "vqsdp/problems.hpp"
#include "vqsdp/reference.hpp"
#include "vqsdp/simulator.hpp"
#include "vqsdp/solvers.hpp"

namespace {

using namespace vqsdp;

void BM_PrepareState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Ansatz ansatz = Ansatz::hardware_efficient(n, 4);
  RealVector theta = random_parameters(ansatz.param_count(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(prepare_state(ansatz, theta));
}
BENCHMARK(BM_PrepareState)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_ExpectExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Ansatz ansatz = Ansatz::hardware_efficient(n, 4);
  const Observable obs(HermitianOperator(random_hermitian(1 << n, 2)));
  const Vector psi = prepare_state(ansatz, random_parameters(ansatz.param_count(), 1));
  for (auto _ : state) benchmark::DoNotOptimize(obs.exact(psi));
}
BENCHMARK(BM_ExpectExact)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_GradParamShift(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Ansatz ansatz = Ansatz::hardware_efficient(n, 4);
  const Observable obs(HermitianOperator(random_hermitian(1 << n, 2)));
  RealVector theta = random_parameters(ansatz.param_count(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(grad_param_shift(ansatz, theta, obs, ShotPolicy::exact(), 0));
}
BENCHMARK(BM_GradParamShift)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_GradParamShiftSampled(benchmark::State& state) {
  Ansatz ansatz = Ansatz::hardware_efficient(2, 4);
  const Observable obs(HermitianOperator(random_hermitian(4, 2)));
  RealVector theta = random_parameters(ansatz.param_count(), 1);
  const ShotPolicy policy = ShotPolicy::sampled(state.range(0), 3);
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(grad_param_shift(ansatz, theta, obs, policy, stream++));
}
BENCHMARK(BM_GradParamShiftSampled)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_OracleMaxCutCycle(benchmark::State& state) {
  const SdpInstance inst = maxcut_sdp(Graph::cycle(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_solve(inst).optimal_value);
}
BENCHMARK(BM_OracleMaxCutCycle)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
