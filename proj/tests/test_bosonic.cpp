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

#include <array>
#include <cmath>
#include <vector>

#include "qphonon/bosonic.hpp"
#include "qphonon/rng.hpp"

using namespace qphonon;

namespace {

bool matrix_near(const Matrix& a, const Matrix& b, double tol = 1e-12) {
  return a.rows() == b.rows() && a.cols() == b.cols() && frobenius_distance(a, b) < tol;
}

std::vector<LadderOp> all_ops(int n_modes) {
  std::vector<LadderOp> ops;
  for (int m = 0; m < n_modes; ++m) {
    ops.push_back(create(m));
    ops.push_back(annihilate(m));
  }
  return ops;
}

}  // namespace

TEST_CASE("ladder_matrix lowest truncation") {
  const Matrix adag = ladder_matrix(LadderKind::Create, 1);
  REQUIRE(adag.rows() == 2);
  CHECK(adag(1, 0) == cdouble{1.0, 0.0});
  CHECK(adag(0, 0) == cdouble{0.0, 0.0});
  CHECK(adag(0, 1) == cdouble{0.0, 0.0});
  CHECK(adag(1, 1) == cdouble{0.0, 0.0});
}

TEST_CASE("ladder_matrix annihilation entries") {
  const Matrix a = ladder_matrix(LadderKind::Annihilate, 2);
  REQUIRE(a.rows() == 3);
  CHECK(std::abs(a(0, 1) - cdouble{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(a(1, 2) - cdouble{std::sqrt(2.0), 0.0}) < 1e-15);
  CHECK(std::abs(a(1, 0)) == 0.0);
  CHECK(std::abs(a(2, 1)) == 0.0);
}

TEST_CASE("ladder_matrix rejects trivial truncation") {
  CHECK_THROWS_AS(ladder_matrix(LadderKind::Create, 0), std::invalid_argument);
}

TEST_CASE("truncated commutator diagonal") {
  for (int n_max = 1; n_max <= 8; ++n_max) {
    const Matrix adag = ladder_matrix(LadderKind::Create, n_max);
    const Matrix a = ladder_matrix(LadderKind::Annihilate, n_max);
    const Matrix comm = a * adag - adag * a;
    for (std::size_t r = 0; r < comm.rows(); ++r) {
      for (std::size_t c = 0; c < comm.cols(); ++c) {
        const cdouble expected =
            r != c ? cdouble{0.0, 0.0}
                   : (r + 1 == comm.rows() ? cdouble{-double(n_max), 0.0} : cdouble{1.0, 0.0});
        CHECK(std::abs(comm(r, c) - expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("annihilation is the adjoint of creation") {
  for (int n_max = 1; n_max <= 8; ++n_max)
    CHECK(matrix_near(ladder_matrix(LadderKind::Annihilate, n_max),
                      ladder_matrix(LadderKind::Create, n_max).adjoint()));
}

TEST_CASE("embed identity product") {
  const FockSpace space(2, 3);
  CHECK(matrix_near(embed(LadderProduct::identity(), space), Matrix::identity(9)));
}

TEST_CASE("embed raises the first tensor slot") {
  const FockSpace space(2, 2);
  const Matrix m = embed(LadderProduct{{1.0, 0.0}, {create(0)}}, space);
  // |00> -> |10>: mode 0 is the most significant digit, so index 0 -> 2.
  CHECK(std::abs(m(2, 0) - cdouble{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(m(0, 0)) == 0.0);
  CHECK(std::abs(m(3, 1) - cdouble{1.0, 0.0}) < 1e-15);
}

TEST_CASE("embed number operator") {
  const FockSpace space(1, 3);
  const Matrix m = embed(LadderProduct{{1.0, 0.0}, {create(0), annihilate(0)}}, space);
  for (int n = 0; n < 3; ++n) CHECK(std::abs(m(n, n) - cdouble{double(n), 0.0}) < 1e-12);
}

TEST_CASE("embed rejects out-of-range modes") {
  const FockSpace space(2, 2);
  CHECK_THROWS_AS(embed(LadderProduct{{1.0, 0.0}, {create(2)}}, space), std::invalid_argument);
}

TEST_CASE("vacuum expectations") {
  const FockSpace space(2, 3);
  CHECK(std::abs(vacuum_expectation({{1.0, 0.0}, {annihilate(0), create(0)}}, space) -
                 cdouble{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(vacuum_expectation({{1.0, 0.0}, {create(0), annihilate(0)}}, space)) < 1e-12);
  CHECK(std::abs(vacuum_expectation(
                     {{1.0, 0.0}, {annihilate(0), annihilate(1), create(1), create(0)}}, space) -
                 cdouble{1.0, 0.0}) < 1e-12);
}

TEST_CASE("wick pairing examples") {
  const FockSpace space(2, 3);
  const std::array<LadderOp, 4> survive = {annihilate(0), create(0), annihilate(1), create(1)};
  CHECK(std::abs(wick_expectation(survive, space) - cdouble{1.0, 0.0}) < 1e-12);
  const std::array<LadderOp, 4> vanish = {create(0), create(0), annihilate(0), annihilate(0)};
  CHECK(std::abs(wick_expectation(vanish, space)) < 1e-12);
}

TEST_CASE("wick equals the direct vacuum expectation exhaustively") {
  // The pairing identity reproduces the untruncated vacuum value; the
  // two-point functions never leave occupation 1, so the wick side is
  // level-independent. The direct side, however, passes through doubly
  // excited intermediates, so it is evaluated with at least three retained
  // levels of headroom.
  for (int modes = 1; modes <= 2; ++modes) {
    for (int levels = 2; levels <= 4; ++levels) {
      const FockSpace space(modes, levels);
      const FockSpace oracle_space(modes, std::max(levels, 3));
      const auto ops = all_ops(modes);
      for (const auto& a : ops)
        for (const auto& b : ops)
          for (const auto& c : ops)
            for (const auto& d : ops) {
              const cdouble direct =
                  vacuum_expectation(LadderProduct{{1.0, 0.0}, {a, b, c, d}}, oracle_space);
              const cdouble paired = wick_expectation({a, b, c, d}, space);
              CHECK(std::abs(direct - paired) < 1e-12);
            }
    }
  }
}

TEST_CASE("product adjoint reverses factors and swaps kinds") {
  const LadderProduct p{{0.5, 1.5}, {create(0), annihilate(1), create(1)}};
  const LadderProduct adj = p.adjoint();
  CHECK(adj.coefficient == std::conj(p.coefficient));
  REQUIRE(adj.factors.size() == 3);
  CHECK(adj.factors[0] == annihilate(1));
  CHECK(adj.factors[1] == create(1));
  CHECK(adj.factors[2] == annihilate(0));

  const FockSpace space(2, 3);
  CHECK(matrix_near(embed(adj, space), embed(p, space).adjoint()));
}

TEST_CASE("embedding commutes with product composition") {
  const FockSpace space(2, 3);
  Rng rng(31);
  const auto ops = all_ops(2);
  for (int trial = 0; trial < 30; ++trial) {
    LadderProduct p{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, {}};
    LadderProduct q{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, {}};
    for (int k = 0; k < rng.uniform_int(3) + 1; ++k)
      p.factors.push_back(ops[static_cast<std::size_t>(rng.uniform_int(int(ops.size())))]);
    for (int k = 0; k < rng.uniform_int(3) + 1; ++k)
      q.factors.push_back(ops[static_cast<std::size_t>(rng.uniform_int(int(ops.size())))]);
    CHECK(matrix_near(embed(p * q, space), embed(p, space) * embed(q, space), 1e-10));
  }
}

TEST_CASE("fock space validation") {
  CHECK_THROWS_AS(FockSpace(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(FockSpace(1, 1), std::invalid_argument);
  CHECK(FockSpace(3, 2).dimension() == 8);
  CHECK(FockSpace(2, 4).dimension() == 16);
}
