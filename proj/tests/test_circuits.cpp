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

#include "qphonon/circuits.hpp"
#include "qphonon/engine.hpp"
#include "qphonon/rng.hpp"

using namespace qphonon;

namespace {

constexpr double kPi = 3.14159265358979323846;

// |Tr(U† V)| = dim iff U and V agree up to a global phase.
double phase_insensitive_overlap(const Matrix& u, const Matrix& v) {
  return std::abs((u.adjoint() * v).trace());
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  cdouble overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
    overlap += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return std::norm(overlap);
}

}  // namespace

TEST_CASE("layered ansatz hits the published gate counts") {
  const Circuit c = build_efficient_su2(6, 2);
  CHECK(c.n_parameters == 36);
  CHECK(c.count(GateKind::CNOT) == 30);
  CHECK(c.count(GateKind::RY) == 18);
  CHECK(c.count(GateKind::RZ) == 18);

  // 2 * width * (reps + 1) parameters and C(width, 2) * reps entanglers.
  const Circuit small = build_efficient_su2(2, 1);
  CHECK(small.n_parameters == 8);
  CHECK(small.count(GateKind::CNOT) == 1);
}

TEST_CASE("layered ansatz at zero parameters is the identity on |0...0>") {
  const Circuit c = bind_parameters(build_efficient_su2(6, 2), std::vector<double>(36, 0.0));
  const StateVector s = run_statevector(c);
  CHECK(std::abs(std::abs(s.amplitudes[0]) - 1.0) < 1e-12);
}

TEST_CASE("reduced ansatz hits the published gate counts") {
  const Circuit c = build_custom_ansatz(6);
  CHECK(c.n_parameters == 24);
  CHECK(c.count(GateKind::CNOT) == 20);
  CHECK(c.count(GateKind::CZ) == 1);
  CHECK(c.count(GateKind::RY) == 24);
  CHECK(c.count(GateKind::RZ) == 0);
  CHECK(c.count(GateKind::RX) == 0);
  // The closing two-qubit gate connects the last qubit back to the first.
  const Gate& last = c.gates.back();
  CHECK(last.kind == GateKind::CZ);
  CHECK(last.q0 == 5);
  CHECK(last.q1 == 0);
}

TEST_CASE("reduced ansatz keeps amplitudes real") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Circuit c = bind_parameters(build_custom_ansatz(6), random_parameters(24, seed));
    const StateVector s = run_statevector(c);
    for (const auto& amp : s.amplitudes) CHECK(std::abs(amp.imag()) < 1e-12);
  }
}

TEST_CASE("reduced ansatz at zero parameters is the identity on |0...0>") {
  const Circuit c = bind_parameters(build_custom_ansatz(6), std::vector<double>(24, 0.0));
  const StateVector s = run_statevector(c);
  CHECK(std::abs(std::abs(s.amplitudes[0]) - 1.0) < 1e-12);
}

TEST_CASE("ansatz constructors validate their shape") {
  CHECK_THROWS_AS(build_efficient_su2(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_efficient_su2(6, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_custom_ansatz(1), std::invalid_argument);
}

TEST_CASE("single conversion reproduces the entangling gate up to phase") {
  Circuit cnot(2);
  cnot.cnot(0, 1);
  const Circuit converted = transpile_cnot_to_ecr(cnot);
  CHECK(converted.count(GateKind::ECR) == 1);
  CHECK(converted.count(GateKind::CNOT) == 0);
  CHECK(converted.global_phase == doctest::Approx(kPi / 2.0));
  CHECK(phase_insensitive_overlap(circuit_unitary(cnot), circuit_unitary(converted)) ==
        doctest::Approx(4.0).epsilon(1e-12));

  Circuit reversed(2);
  reversed.cnot(1, 0);
  const Circuit converted_reversed = transpile_cnot_to_ecr(reversed);
  CHECK(phase_insensitive_overlap(circuit_unitary(reversed), circuit_unitary(converted_reversed)) ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("transpilation leaves CNOT-free circuits unchanged") {
  Circuit c(3);
  c.rotation(GateKind::RY, 0, 0.3);
  c.cz(0, 2);
  c.ecr(1, 2);
  const Circuit out = transpile_cnot_to_ecr(c);
  CHECK(out.gates.size() == c.gates.size());
  CHECK(out.global_phase == 0.0);
}

TEST_CASE("transpiled ansatz state matches the original up to global phase") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit ansatz = build_custom_ansatz(6);
    const Circuit bound = bind_parameters(ansatz, random_parameters(24, rng.next_u64()));
    const Circuit converted = transpile_cnot_to_ecr(bound);
    CHECK(converted.global_phase == doctest::Approx(20.0 * kPi / 2.0));
    const double fidelity = state_fidelity(run_statevector(bound), run_statevector(converted));
    CHECK(fidelity == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("bind replaces every symbolic parameter and is idempotent") {
  const Circuit ansatz = build_custom_ansatz(4);
  const auto values = random_parameters(ansatz.n_parameters, 5);
  const Circuit once = bind_parameters(ansatz, values);
  CHECK(once.fully_bound());
  const Circuit twice = bind_parameters(once, values);
  CHECK(once.to_text() == twice.to_text());
  CHECK_THROWS_AS(bind_parameters(ansatz, std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST_CASE("rotation periodicity: theta and theta + 4 pi prepare the same state") {
  const Circuit ansatz = build_custom_ansatz(6);
  auto values = random_parameters(ansatz.n_parameters, 17);
  const StateVector base = run_statevector(bind_parameters(ansatz, values));
  for (auto& v : values) v += 4.0 * kPi;
  const StateVector shifted = run_statevector(bind_parameters(ansatz, values));
  for (std::size_t i = 0; i < base.amplitudes.size(); ++i)
    CHECK(std::abs(base.amplitudes[i] - shifted.amplitudes[i]) < 1e-9);
}

TEST_CASE("circuit text round trip") {
  Circuit c(3);
  c.rotation_param(GateKind::RY, 0, 0);
  c.rotation(GateKind::RZ, 1, 0.725);
  c.cnot(0, 2);
  c.x(1);
  c.global_phase = 0.25;
  const Circuit parsed = Circuit::from_text(c.to_text());
  CHECK(parsed.to_text() == c.to_text());
  CHECK(parsed.width == 3);
  CHECK(parsed.n_parameters == 1);
  CHECK(parsed.global_phase == doctest::Approx(0.25));
}

TEST_CASE("gate validation") {
  Circuit c(2);
  CHECK_THROWS_AS(c.cnot(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(c.cnot(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(c.rotation(GateKind::X, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(c.append(Gate{GateKind::X, 0, -1, 0.0, 3}), std::invalid_argument);
}

TEST_CASE("parameter draws are deterministic and in range") {
  const auto a = random_parameters(24, 42);
  const auto b = random_parameters(24, 42);
  CHECK(a == b);
  for (double v : a) {
    CHECK(v >= -kPi);
    CHECK(v <= kPi);
  }
  const auto p = perturbed_parameters(24, 42, 0.05);
  for (double v : p) CHECK(std::abs(v) <= 0.05);
}
