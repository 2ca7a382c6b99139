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

#include "qphonon/hamiltonian.hpp"
#include "qphonon/pauli.hpp"

using namespace qphonon;

namespace {

PauliTerm term(const std::string& axes, cdouble coeff = {1.0, 0.0}) {
  PauliTerm t;
  t.coefficient = coeff;
  for (char c : axes) t.axes.push_back(axis_from_char(c));
  return t;
}

bool matrix_near(const Matrix& a, const Matrix& b, double tol = 1e-12) {
  return a.rows() == b.rows() && a.cols() == b.cols() && frobenius_distance(a, b) < tol;
}

}  // namespace

TEST_CASE("single-qubit products carry exact phases") {
  const PauliTerm xy = multiply(term("X"), term("Y"));
  CHECK(xy.axes_string() == "Z");
  CHECK(std::abs(xy.coefficient - cdouble{0.0, 1.0}) < 1e-15);

  // Per-qubit composition: X*X = I and Z*X = iY.
  const PauliTerm mixed = multiply(term("XZ"), term("XX"));
  CHECK(mixed.axes_string() == "IY");
  CHECK(std::abs(mixed.coefficient - cdouble{0.0, 1.0}) < 1e-15);

  const PauliTerm ident = multiply(term("XZ", {0.5, -2.0}), term("II"));
  CHECK(ident.axes_string() == "XZ");
  CHECK(std::abs(ident.coefficient - cdouble{0.5, -2.0}) < 1e-15);
}

TEST_CASE("multiply agrees with dense matrix products on all pairs") {
  const char axes[] = {'I', 'X', 'Y', 'Z'};
  for (char a : axes)
    for (char b : axes) {
      const PauliTerm product = multiply(term(std::string(1, a)), term(std::string(1, b)));
      PauliSum lhs(1), rhs(1), prod(1);
      lhs.add_term(term(std::string(1, a)));
      rhs.add_term(term(std::string(1, b)));
      prod.add_term(product);
      CHECK(matrix_near(prod.to_matrix(), lhs.to_matrix() * rhs.to_matrix()));
    }
}

TEST_CASE("multiply rejects width mismatch") {
  CHECK_THROWS_AS(multiply(term("X"), term("XX")), std::invalid_argument);
}

TEST_CASE("simplify merges, cancels and orders") {
  PauliSum s(1);
  s.add_term(term("X"));
  s.add_term(term("X"));
  const PauliSum merged = s.simplified();
  REQUIRE(merged.terms().size() == 1);
  CHECK(std::abs(merged.terms()[0].coefficient - cdouble{2.0, 0.0}) < 1e-15);

  PauliSum cancel(1);
  cancel.add_term(term("X"));
  cancel.add_term(term("X", {-1.0, 0.0}));
  CHECK(cancel.simplified().empty());
}

TEST_CASE("simplify is idempotent and matrix-preserving") {
  const EncodingLayout layout(3, 2);
  const auto h3 = build_h3(PhononSystem::toy_model());
  PauliSum raw(layout.width());
  for (const auto& p : h3) {
    PauliSum encoded(layout.width());
    encoded.add_identity(p.coefficient);
    for (const auto& f : p.factors) encoded = encoded * encode_ladder(f, layout);
    raw += encoded;
  }
  const PauliSum once = raw.simplified();
  const PauliSum twice = once.simplified();
  CHECK(once.terms().size() == twice.terms().size());
  CHECK(matrix_near(raw.to_matrix(), once.to_matrix(), 1e-10));
  CHECK(once.to_text() == twice.to_text());
}

TEST_CASE("to_matrix basics") {
  PauliSum z(1);
  z.add_term(term("Z"));
  const Matrix mz = z.to_matrix();
  CHECK(std::abs(mz(0, 0) - cdouble{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(mz(1, 1) - cdouble{-1.0, 0.0}) < 1e-15);

  PauliSum xxyy(2);
  xxyy.add_term(term("XX"));
  xxyy.add_term(term("YY"));
  const Matrix m = xxyy.to_matrix();
  CHECK(std::abs(m(1, 2) - cdouble{2.0, 0.0}) < 1e-15);
  CHECK(std::abs(m(2, 1) - cdouble{2.0, 0.0}) < 1e-15);
  CHECK(std::abs(m(0, 3)) < 1e-15);
  CHECK(std::abs(m(3, 0)) < 1e-15);
}

TEST_CASE("to_matrix width guard") {
  PauliSum wide(13);
  wide.add_identity({1.0, 0.0});
  CHECK_THROWS_AS(wide.to_matrix(), std::invalid_argument);
}

TEST_CASE("hermiticity detection") {
  PauliSum real(1);
  real.add_term(term("X"));
  CHECK(real.simplified().is_hermitian());
  PauliSum imag(1);
  imag.add_term(term("X", {0.0, 1.0}));
  CHECK(!imag.simplified().is_hermitian());
}

TEST_CASE("text round trip") {
  PauliSum s(3);
  s.add_term(term("XIZ", {0.25, 0.0}));
  s.add_term(term("YYI", {-0.5, 0.125}));
  const PauliSum parsed = PauliSum::from_text(s.simplified().to_text());
  CHECK(parsed.width() == 3);
  CHECK(matrix_near(parsed.to_matrix(), s.to_matrix()));
}

TEST_CASE("layout indexing is phonon-major") {
  const EncodingLayout layout(3, 2);
  CHECK(layout.width() == 6);
  CHECK(layout.qubit_index(0, 0) == 0);
  CHECK(layout.qubit_index(0, 1) == 1);
  CHECK(layout.qubit_index(2, 1) == 5);
  CHECK_THROWS_AS(layout.qubit_index(3, 0), std::invalid_argument);
}

TEST_CASE("ladder encoding for two retained levels is a two-qubit hop") {
  // One phonon, acting on qubits (0,1): sigma-(0) sigma+(1) expands into
  // (XX + YY)/4 with the cross terms i(XY - YX)/4.
  const EncodingLayout layout(1, 2);
  const PauliSum adag = encode_ladder(create(0), layout);
  const Matrix m = adag.to_matrix();
  // Occupied level 0 is |10> = index 2; raising moves it to |01> = index 1.
  CHECK(std::abs(m(1, 2) - cdouble{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(m(2, 1)) < 1e-12);

  const PauliSum a = encode_ladder(annihilate(0), layout);
  CHECK(matrix_near(a.to_matrix(), adag.to_matrix().adjoint()));
}

TEST_CASE("ladder encoding lives on its own phonon block") {
  const EncodingLayout layout(3, 2);
  const PauliSum adag1 = encode_ladder(create(1), layout);
  for (const auto& t : adag1.terms()) {
    CHECK(t.axes[0] == Axis::I);
    CHECK(t.axes[1] == Axis::I);
    CHECK(t.axes[4] == Axis::I);
    CHECK(t.axes[5] == Axis::I);
    CHECK(t.axes[2] != Axis::I);
    CHECK(t.axes[3] != Axis::I);
  }
}

TEST_CASE("encoding matches the Fock operator on the one-hot subspace") {
  const EncodingLayout layout(2, 3);
  const FockSpace space = layout.fock_space();
  const auto basis = onehot_basis_states(layout);
  for (const LadderOp op : {create(0), annihilate(0), create(1), annihilate(1)}) {
    const Matrix full = encode_ladder(op, layout).to_matrix();
    const Matrix fock = embed(LadderProduct{{1.0, 0.0}, {op}}, space);
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (std::size_t c = 0; c < basis.size(); ++c)
        CHECK(std::abs(full(basis[r], basis[c]) - fock(r, c)) < 1e-10);
  }
}

TEST_CASE("number operator expectation equals the hot level") {
  const EncodingLayout layout(2, 3);
  const auto basis = onehot_basis_states(layout);
  const Matrix n0 = encode_number(0, layout).to_matrix();
  const Matrix n1 = encode_number(1, layout).to_matrix();
  const FockSpace space = layout.fock_space();
  for (std::size_t fock = 0; fock < basis.size(); ++fock) {
    const int level0 = int(fock / std::size_t(space.levels_per_phonon));
    const int level1 = int(fock % std::size_t(space.levels_per_phonon));
    CHECK(std::abs(n0(basis[fock], basis[fock]) - cdouble{double(level0), 0.0}) < 1e-12);
    CHECK(std::abs(n1(basis[fock], basis[fock]) - cdouble{double(level1), 0.0}) < 1e-12);
  }
}

TEST_CASE("vacuum one-hot state has zero phonons") {
  const EncodingLayout layout(3, 2);
  const auto basis = onehot_basis_states(layout);
  for (int m = 0; m < 3; ++m) {
    const Matrix n = encode_number(m, layout).to_matrix();
    CHECK(std::abs(n(basis[0], basis[0])) < 1e-12);
  }
}

TEST_CASE("encode_ladder validates the mode") {
  const EncodingLayout layout(2, 2);
  CHECK_THROWS_AS(encode_ladder(create(2), layout), std::invalid_argument);
  CHECK_THROWS_AS(encode_number(-1, layout), std::invalid_argument);
}
