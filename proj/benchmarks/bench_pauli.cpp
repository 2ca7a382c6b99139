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

namespace {

using namespace qphonon;

MappedHamiltonian toy_mapped() {
  const EncodingLayout layout(3, 2);
  const auto terms = build_h3(PhononSystem::toy_model());
  const MappedHamiltonian bare = map_hamiltonian(terms, layout, 0.0);
  return map_hamiltonian(terms, layout, default_penalty_weight(bare.physical));
}

void BM_MapHamiltonian(benchmark::State& state) {
  const EncodingLayout layout(3, 2);
  const auto terms = build_h3(PhononSystem::toy_model());
  for (auto _ : state) {
    auto h = map_hamiltonian(terms, layout, 20.0);
    benchmark::DoNotOptimize(h.pauli.terms().data());
  }
}
BENCHMARK(BM_MapHamiltonian);

void BM_PauliExpectation(benchmark::State& state) {
  const MappedHamiltonian h = toy_mapped();
  const Circuit ansatz = transpile_cnot_to_ecr(build_custom_ansatz(6));
  const StateVector sv = run_statevector(bind_parameters(ansatz, random_parameters(24, 3)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(expectation(sv, h.pauli));
  }
}
BENCHMARK(BM_PauliExpectation);

void BM_ExactGroundEnergy(benchmark::State& state) {
  const MappedHamiltonian h = toy_mapped();
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_ground_energy(h.pauli));
  }
}
BENCHMARK(BM_ExactGroundEnergy);

void BM_ToMatrix(benchmark::State& state) {
  const MappedHamiltonian h = toy_mapped();
  for (auto _ : state) {
    auto m = h.pauli.to_matrix();
    benchmark::DoNotOptimize(m.data().data());
  }
}
BENCHMARK(BM_ToMatrix);

}  // namespace
