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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qphonon/rng.hpp"
#include "qphonon/vqe.hpp"

using namespace qphonon;

namespace {

constexpr double kPi = 3.14159265358979323846;

MappedHamiltonian toy_hamiltonian(double penalty_scale = 1.0) {
  const EncodingLayout layout(3, 2);
  const auto terms = build_h3(PhononSystem::toy_model());
  const MappedHamiltonian bare = map_hamiltonian(terms, layout, 0.0);
  return map_hamiltonian(terms, layout, penalty_scale * default_penalty_weight(bare.physical));
}

PauliSum z_observable() {
  PauliSum s(1);
  PauliTerm t;
  t.coefficient = 1.0;
  t.axes = {Axis::Z};
  s.add_term(t);
  return s;
}

const OptimizerKind kAllKinds[] = {OptimizerKind::NelderMead, OptimizerKind::Powell,
                                   OptimizerKind::Spsa, OptimizerKind::LbfgsFd,
                                   OptimizerKind::CobylaStyle};

}  // namespace

TEST_CASE("zero Hamiltonian has zero energy for any parameters") {
  const Circuit ansatz = build_custom_ansatz(4);
  const PauliSum zero(4);
  const auto params = random_parameters(ansatz.n_parameters, 3);
  CHECK(vqe_energy(params, ansatz, zero, EstimatorMode::ExactExpectation, nullptr, 0, 1) == 0.0);
}

TEST_CASE("single-qubit RY against Z reaches the analytic minimum") {
  Circuit ansatz(1);
  ansatz.rotation_param(GateKind::RY, 0, 0);
  OptimizerSpec spec;
  spec.kind = OptimizerKind::NelderMead;
  spec.seed = 4;
  const VqeRun run = minimize(ansatz, z_observable(), spec, EstimatorMode::ExactExpectation);
  CHECK(run.best_energy == doctest::Approx(-1.0).epsilon(1e-6));
  const double theta = std::remainder(run.best_parameters[0], 2.0 * kPi);
  CHECK(std::abs(std::abs(theta) - kPi) < 1e-3);
}

TEST_CASE("all five optimizers solve the two-parameter surrogate") {
  // RY then RZ against Z: energy cos(theta0), flat in theta1.
  Circuit ansatz(1);
  ansatz.rotation_param(GateKind::RY, 0, 0);
  ansatz.rotation_param(GateKind::RZ, 0, 1);
  for (const auto kind : kAllKinds) {
    OptimizerSpec spec;
    spec.kind = kind;
    spec.max_iterations = kind == OptimizerKind::Spsa ? 4000 : 400;
    spec.seed = 11;
    const VqeRun run = minimize(ansatz, z_observable(), spec, EstimatorMode::ExactExpectation,
                                nullptr, 0, std::vector<double>{0.7, -0.3});
    CAPTURE(optimizer_name(kind));
    CHECK(std::abs(run.best_energy - (-1.0)) < 1e-4);
  }
}

TEST_CASE("variational bound holds along the whole noiseless history") {
  const MappedHamiltonian h = toy_hamiltonian();
  const double reference = exact_ground_energy(h);
  const Circuit ansatz = build_custom_ansatz(6);
  OptimizerSpec spec;
  spec.kind = OptimizerKind::NelderMead;
  spec.max_iterations = 150;
  spec.seed = 21;
  const VqeRun run = minimize(ansatz, h, spec, EstimatorMode::ExactExpectation);
  for (const auto& point : run.history) CHECK(point.energy >= reference - 1e-9);
}

TEST_CASE("best energy is the history minimum") {
  const MappedHamiltonian h = toy_hamiltonian();
  const Circuit ansatz = build_custom_ansatz(6);
  OptimizerSpec spec;
  spec.kind = OptimizerKind::CobylaStyle;
  spec.max_iterations = 80;
  spec.seed = 5;
  const VqeRun run = minimize(ansatz, h, spec, EstimatorMode::ExactExpectation);
  double best = run.history.front().energy;
  for (const auto& point : run.history) best = std::min(best, point.energy);
  CHECK(run.best_energy == doctest::Approx(best));
}

TEST_CASE("quasi-Newton run reaches the reference within 1e-6 on the toy model") {
  const MappedHamiltonian h = toy_hamiltonian();
  const double reference = onehot_restricted_ground_energy(h.physical, h.layout);
  const Circuit ansatz = build_custom_ansatz(6);
  OptimizerSpec spec;
  spec.kind = OptimizerKind::LbfgsFd;
  spec.max_iterations = 600;
  spec.seed = 2;
  const VqeRun run = minimize(ansatz, h, spec, EstimatorMode::ExactExpectation);
  CHECK(std::abs(run.best_energy - reference) < 1e-6);
}

TEST_CASE("penalty-augmented optimum matches the subspace-restricted minimum") {
  const MappedHamiltonian h = toy_hamiltonian();
  const double restricted = onehot_restricted_ground_energy(h.physical, h.layout);
  CHECK(exact_ground_energy(h.pauli) == doctest::Approx(restricted).epsilon(1e-9));
}

TEST_CASE("seed determinism covers shot-mode runs") {
  const MappedHamiltonian h = toy_hamiltonian();
  const Circuit ansatz = build_custom_ansatz(6);
  OptimizerSpec spec;
  spec.kind = OptimizerKind::Spsa;
  spec.max_iterations = 40;
  spec.seed = 31;
  const NoiseModel noise = ibm_brisbane().noise_model(6);
  const VqeRun a = minimize(ansatz, h, spec, EstimatorMode::Shots, &noise, 1024);
  const VqeRun b = minimize(ansatz, h, spec, EstimatorMode::Shots, &noise, 1024);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i)
    CHECK(a.history[i].energy == b.history[i].energy);
  CHECK(a.best_energy == b.best_energy);
}

TEST_CASE("finite-difference gradient is consistent across step sizes") {
  const MappedHamiltonian h = toy_hamiltonian();
  const Circuit ansatz = build_custom_ansatz(6);
  Rng rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    const auto x = random_parameters(ansatz.n_parameters, rng.next_u64());
    auto energy_at = [&](std::vector<double> p) {
      return vqe_energy(p, ansatz, h, EstimatorMode::ExactExpectation, nullptr, 0, 1);
    };
    const double step = 1e-3;
    for (int d = 0; d < 4; ++d) {
      auto xp = x, xm = x;
      xp[static_cast<std::size_t>(d)] += step;
      xm[static_cast<std::size_t>(d)] -= step;
      const double coarse = (energy_at(xp) - energy_at(xm)) / (2.0 * step);
      xp = x;
      xm = x;
      xp[static_cast<std::size_t>(d)] += step / 10.0;
      xm[static_cast<std::size_t>(d)] -= step / 10.0;
      const double fine = (energy_at(xp) - energy_at(xm)) / (step / 5.0);
      // Central differences agree to O(step^2).
      CHECK(std::abs(coarse - fine) < 50.0 * step * step);
    }
  }
}

TEST_CASE("non-finite objectives abort the run") {
  const Objective bad = [](std::span<const double>, int) {
    return std::numeric_limits<double>::quiet_NaN();
  };
  OptimizerSpec spec;
  spec.kind = OptimizerKind::NelderMead;
  CHECK_THROWS_AS(minimize_objective(bad, 2, spec, std::vector<double>{0.0, 0.0}),
                  std::runtime_error);
}

TEST_CASE("convergence report") {
  VqeRun run;
  run.history = {{1, 5.0}, {2, 1.0005}, {3, 0.5}, {4, 1.0000005}, {5, 0.2}};
  // Monotone envelope: 5.0, 1.0005, 0.5, 0.5, 0.2 against reference 0.
  run.best_energy = 0.2;
  const ConvergenceReport report = convergence_report(run, 0.2);
  CHECK(report.envelope.size() == 5);
  CHECK(report.envelope[3] == doctest::Approx(0.5));
  CHECK(report.evaluations_to_1e3 == 5);
  CHECK(report.final_gap == doctest::Approx(0.0));

  VqeRun single;
  single.history = {{1, 0.1}};
  single.best_energy = 0.1;
  const ConvergenceReport r2 = convergence_report(single, 0.1);
  CHECK(r2.evaluations_to_1e3 == 1);
  CHECK(r2.evaluations_to_1e6 == 1);

  // Pure function of the history: identical across calls.
  const ConvergenceReport r3 = convergence_report(single, 0.1);
  CHECK(r3.envelope == r2.envelope);
  CHECK_THROWS_AS(convergence_report(VqeRun{}, 0.0), std::invalid_argument);
}

TEST_CASE("optimizer spec validation") {
  OptimizerSpec spec;
  spec.max_iterations = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.max_iterations = 10;
  spec.ftol = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("optimizer names round trip") {
  for (const auto kind : kAllKinds) CHECK(optimizer_from_name(optimizer_name(kind)) == kind);
  CHECK_THROWS_AS(optimizer_from_name("adam"), std::invalid_argument);
}
