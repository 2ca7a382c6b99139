// Copyright 2026 The qphonon developers
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

#include "qphonon/engine.hpp"
#include "qphonon/hamiltonian.hpp"
#include "qphonon/mitigation.hpp"

namespace {

using namespace qphonon;

Circuit bound_custom(int width) {
  const Circuit ansatz = transpile_cnot_to_ecr(build_custom_ansatz(width));
  return bind_parameters(ansatz, random_parameters(ansatz.n_parameters, 7));
}

void BM_Statevector(benchmark::State& state) {
  const Circuit circuit = bound_custom(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto sv = run_statevector(circuit);
    benchmark::DoNotOptimize(sv.amplitudes.data());
  }
}
BENCHMARK(BM_Statevector)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_DensityNoisy(benchmark::State& state) {
  const Circuit circuit = bound_custom(static_cast<int>(state.range(0)));
  const NoiseModel noise = ibm_brisbane().noise_model(circuit.width);
  for (auto _ : state) {
    auto dm = run_density(circuit, noise);
    benchmark::DoNotOptimize(dm.rho.data().data());
  }
}
BENCHMARK(BM_DensityNoisy)->Arg(4)->Arg(6)->Arg(8);

void BM_FoldedDensity(benchmark::State& state) {
  const Circuit circuit = fold_gates(bound_custom(6), static_cast<int>(state.range(0)));
  NoiseModel noise;
  noise.depolarizing_p = 0.008471;
  for (auto _ : state) {
    auto dm = run_density(circuit, noise);
    benchmark::DoNotOptimize(dm.rho.data().data());
  }
}
BENCHMARK(BM_FoldedDensity)->Arg(1)->Arg(3)->Arg(5);

void BM_SampleCounts(benchmark::State& state) {
  const StateVector sv = run_statevector(bound_custom(6));
  const NoiseModel noise = ibm_brisbane().noise_model(6);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto counts = sample_bitstrings(sv, static_cast<int>(state.range(0)), &noise.readout, seed++);
    benchmark::DoNotOptimize(counts.shots);
  }
}
BENCHMARK(BM_SampleCounts)->Arg(1024)->Arg(4096)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
