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

#include <algorithm>
#include <array>
#include <cmath>

#include "qphonon/hamiltonian.hpp"
#include "qphonon/rng.hpp"

using namespace qphonon;

TEST_CASE("coupling_constant") {
  const std::array<double, 3> w = {1.0, 0.5, 0.5};
  CHECK(coupling_constant(3, 1.0, w, 1.0, true) == doctest::Approx(2.0));
  CHECK(coupling_constant(3, 1.0, w, 1.0, false) == 0.0);
  CHECK(coupling_constant(3, 1.0, w, 0.0, true) == 0.0);
  const std::array<double, 3> bad = {1.0, -0.5, 0.5};
  CHECK_THROWS_AS(coupling_constant(3, 1.0, bad, 1.0, true), std::invalid_argument);
  CHECK_THROWS_AS(coupling_constant(2, 1.0, w, 1.0, true), std::invalid_argument);
}

TEST_CASE("toy model admits exactly one triple with eight products") {
  const PhononSystem toy = PhononSystem::toy_model();
  const auto h3 = build_h3(toy);
  CHECK(h3.size() == 8);
  for (const auto& term : h3) {
    CHECK(term.factors.size() == 3);
    CHECK(term.coefficient.real() == doctest::Approx(2.0));
    CHECK(term.coefficient.imag() == 0.0);
  }
  CHECK(hermitian_closed(h3));
}

TEST_CASE("no conserving triple yields an empty interaction") {
  PhononSystem system;
  system.n_phonons = 3;
  system.mode_frequencies = {1.0, 0.3, 0.5};
  system.coupling3[{0, 1, 2}] = 1.0;
  CHECK(build_h3(system).empty());
}

TEST_CASE("conservation predicate is symmetric") {
  const PhononSystem toy = PhononSystem::toy_model();
  CHECK(toy.conserves({0, 1, 2}));
  CHECK(toy.conserves({2, 0, 1}));
  CHECK(toy.conserves({1, 2, 0}));
  CHECK(!toy.conserves({0, 0, 1}));
}

TEST_CASE("four-phonon expansion has sixteen products per quadruple") {
  PhononSystem system;
  system.n_phonons = 4;
  system.mode_frequencies = {1.5, 0.5, 0.5, 0.5};
  system.coupling4[{0, 1, 2, 3}] = 1.0;
  const auto h4 = build_h4(system);
  CHECK(h4.size() == 16);
  for (const auto& term : h4) CHECK(term.factors.size() == 4);
  CHECK(hermitian_closed(h4));

  system.coupling4[{0, 1, 2, 3}] = 0.0;
  CHECK(build_h4(system).empty());
}

TEST_CASE("penalty vanishes exactly on one-hot states and punishes the rest") {
  const EncodingLayout layout(3, 2);
  const double weight = 7.0;
  const Matrix pen = penalty_hamiltonian(layout, weight).to_matrix();
  const auto onehot = onehot_basis_states(layout);
  for (std::size_t i = 0; i < pen.rows(); ++i) {
    const bool is_onehot = std::find(onehot.begin(), onehot.end(), i) != onehot.end();
    const double value = pen(i, i).real();
    if (is_onehot)
      CHECK(std::abs(value) < 1e-12);
    else
      CHECK(value >= weight - 1e-12);
  }
}

TEST_CASE("map_hamiltonian of the empty list with zero penalty is empty") {
  const EncodingLayout layout(2, 2);
  const MappedHamiltonian h = map_hamiltonian({}, layout, 0.0);
  CHECK(h.pauli.empty());
  CHECK(h.physical.empty());
}

TEST_CASE("toy Hamiltonian maps to a Hermitian six-qubit sum") {
  const EncodingLayout layout(3, 2);
  const MappedHamiltonian h = map_hamiltonian(build_h3(PhononSystem::toy_model()), layout, 0.0);
  CHECK(h.pauli.width() == 6);
  CHECK(h.pauli.is_hermitian());
  // Eight weight-six strings over {XX, YY} blocks with coefficient 1/4.
  CHECK(h.physical.terms().size() == 8);
  for (const auto& t : h.physical.terms())
    CHECK(std::abs(t.coefficient - cdouble{0.25, 0.0}) < 1e-12);
}

TEST_CASE("unbalanced term lists are rejected") {
  const EncodingLayout layout(2, 2);
  const LadderProduct lone{{1.0, 0.0}, {create(0), create(1)}};
  CHECK_THROWS_AS(map_hamiltonian({lone}, layout, 0.0), std::runtime_error);
}

TEST_CASE("exact ground energy of elementary sums") {
  PauliSum empty(3);
  CHECK(exact_ground_energy(empty) == 0.0);

  PauliSum z(3);
  PauliTerm t;
  t.coefficient = 1.0;
  t.axes = {Axis::Z, Axis::Z, Axis::Z};
  z.add_term(t);
  CHECK(exact_ground_energy(z) == doctest::Approx(-1.0));
}

TEST_CASE("toy reference energy equals minus the coupling constant") {
  // With two retained levels, u = a† + a acts as X on each mode, so the
  // interaction is 2*XXX on the Fock space with ground energy -2.
  const EncodingLayout layout(3, 2);
  const PhononSystem toy = PhononSystem::toy_model();
  const MappedHamiltonian h = map_hamiltonian(build_h3(toy), layout, 0.0);
  CHECK(onehot_restricted_ground_energy(h.physical, layout) ==
        doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("mapped Hamiltonian restricted to one-hot equals the Fock operator") {
  const EncodingLayout layout(3, 2);
  const FockSpace space = layout.fock_space();
  const PhononSystem toy = PhononSystem::toy_model();
  const auto terms = build_h3(toy);
  const MappedHamiltonian h = map_hamiltonian(terms, layout, 0.0);

  Matrix fock(space.dimension(), space.dimension());
  for (const auto& t : terms) fock += embed(t, space);
  const Matrix restricted = restrict_to_onehot(h.physical.to_matrix(), layout);
  CHECK(frobenius_distance(restricted, fock) < 1e-10);
}

TEST_CASE("penalty keeps the global minimum physical") {
  const EncodingLayout layout(3, 2);
  const PhononSystem toy = PhononSystem::toy_model();
  const auto terms = build_h3(toy);
  const MappedHamiltonian bare = map_hamiltonian(terms, layout, 0.0);
  const double weight = default_penalty_weight(bare.physical);
  CHECK(weight == doctest::Approx(20.0));

  const MappedHamiltonian full = map_hamiltonian(terms, layout, weight);
  const double restricted = onehot_restricted_ground_energy(bare.physical, layout);
  CHECK(exact_ground_energy(full.pauli) == doctest::Approx(restricted).epsilon(1e-9));
}

TEST_CASE("ground energy is linear in a global coupling scale") {
  const EncodingLayout layout(3, 2);
  const MappedHamiltonian base =
      map_hamiltonian(build_h3(PhononSystem::toy_model(1.0)), layout, 0.0);
  for (double scale : {0.5, 2.0, 3.7}) {
    const MappedHamiltonian scaled =
        map_hamiltonian(build_h3(PhononSystem::toy_model(scale)), layout, 0.0);
    CHECK(exact_ground_energy(scaled.pauli) ==
          doctest::Approx(scale * exact_ground_energy(base.pauli)).epsilon(1e-9));
  }
}

TEST_CASE("splitting occupation factors") {
  CHECK(matrix_element_splitting({0.0, 0.0, 0.0}, 1.0) == 0.0);
  CHECK(matrix_element_splitting({1.0, 0.0, 0.0}, 1.0) == doctest::Approx(1.0));
  CHECK(matrix_element_splitting({2.0, 1.0, 3.0}, 0.5) == doctest::Approx(2.0 * 2.0 * 4.0 * 0.5));
  CHECK_THROWS_AS(matrix_element_splitting({-1.0, 0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("exact structural element of the toy splitting channel") {
  // <f|H3|i> with one quantum in the decaying mode equals the coupling
  // constant 2, so the squared element is 4.
  const PhononSystem toy = PhononSystem::toy_model();
  CHECK(structural_element_sq_exact(toy, 2) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("wick element equals the direct vacuum value on four-phonon terms") {
  PhononSystem system;
  system.n_phonons = 4;
  system.mode_frequencies = {1.5, 0.5, 0.5, 0.5};
  system.coupling4[{0, 1, 2, 3}] = 0.8;
  const FockSpace space(4, 4);
  for (const auto& term : build_h4(system)) {
    const cdouble direct = vacuum_expectation(term, space);
    const cdouble wick = h4_wick_element(term, space);
    CHECK(std::abs(direct - wick) < 1e-10);
  }

  // Repeated modes make nontrivial pairings survive (number-operator-like
  // terms such as a0 a0 a0† a0†).
  PhononSystem repeated;
  repeated.n_phonons = 3;
  repeated.mode_frequencies = {1.0, 1.0, 0.5};
  repeated.coupling4[{0, 0, 1, 1}] = 1.0;
  const FockSpace space3(3, 4);
  bool any_nonzero = false;
  for (const auto& term : build_h4(repeated)) {
    const cdouble direct = vacuum_expectation(term, space3);
    const cdouble wick = h4_wick_element(term, space3);
    CHECK(std::abs(direct - wick) < 1e-10);
    any_nonzero = any_nonzero || std::abs(wick) > 1e-12;
  }
  CHECK(any_nonzero);
}

TEST_CASE("h4_wick_element arity check") {
  const FockSpace space(1, 3);
  CHECK_THROWS_AS(h4_wick_element(LadderProduct{{1.0, 0.0}, {create(0)}}, space),
                  std::invalid_argument);
}

TEST_CASE("all-creation four-phonon term vanishes on the vacuum") {
  const FockSpace space(2, 4);
  const LadderProduct term{{1.0, 0.0}, {create(0), create(0), create(1), create(1)}};
  CHECK(std::abs(h4_wick_element(term, space)) < 1e-12);
}

TEST_CASE("system validation") {
  PhononSystem bad;
  bad.n_phonons = 2;
  bad.mode_frequencies = {1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.mode_frequencies = {1.0, -1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.mode_frequencies = {1.0, 1.0};
  bad.coupling3[{0, 1, 1}] = 1.0;
  CHECK_NOTHROW(bad.validate());
}
