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

#include "qphonon/vqe.hpp"

namespace {

using namespace qphonon;

MappedHamiltonian toy_mapped() {
  const EncodingLayout layout(3, 2);
  const auto terms = build_h3(PhononSystem::toy_model());
  const MappedHamiltonian bare = map_hamiltonian(terms, layout, 0.0);
  return map_hamiltonian(terms, layout, default_penalty_weight(bare.physical));
}

void BM_EnergyEvaluation(benchmark::State& state) {
  const MappedHamiltonian h = toy_mapped();
  const Circuit ansatz = transpile_cnot_to_ecr(build_custom_ansatz(6));
  const auto params = random_parameters(ansatz.n_parameters, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vqe_energy(params, ansatz, h, EstimatorMode::ExactExpectation, nullptr, 0, 1));
  }
}
BENCHMARK(BM_EnergyEvaluation);

void BM_LbfgsIterationBudget(benchmark::State& state) {
  const MappedHamiltonian h = toy_mapped();
  const Circuit ansatz = transpile_cnot_to_ecr(build_custom_ansatz(6));
  OptimizerSpec spec;
  spec.kind = OptimizerKind::LbfgsFd;
  spec.max_iterations = static_cast<int>(state.range(0));
  spec.seed = 2;
  for (auto _ : state) {
    auto run = minimize(ansatz, h, spec, EstimatorMode::ExactExpectation);
    benchmark::DoNotOptimize(run.best_energy);
  }
}
BENCHMARK(BM_LbfgsIterationBudget)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
