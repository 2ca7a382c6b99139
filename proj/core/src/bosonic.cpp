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

#include "qphonon/bosonic.hpp"

#include <cmath>
#include <stdexcept>

namespace qphonon {

FockSpace::FockSpace(int phonons, int levels) : n_phonons(phonons), levels_per_phonon(levels) {
  if (phonons < 1) throw std::invalid_argument("FockSpace: need at least one phonon mode");
  if (levels < 2) throw std::invalid_argument("FockSpace: need at least two levels per mode");
}

std::size_t FockSpace::dimension() const {
  std::size_t d = 1;
  for (int m = 0; m < n_phonons; ++m) d *= static_cast<std::size_t>(levels_per_phonon);
  return d;
}

LadderProduct LadderProduct::adjoint() const {
  LadderProduct out;
  out.coefficient = std::conj(coefficient);
  out.factors.reserve(factors.size());
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) out.factors.push_back(it->adjoint());
  return out;
}

LadderProduct operator*(const LadderProduct& lhs, const LadderProduct& rhs) {
  LadderProduct out;
  out.coefficient = lhs.coefficient * rhs.coefficient;
  out.factors = lhs.factors;
  out.factors.insert(out.factors.end(), rhs.factors.begin(), rhs.factors.end());
  return out;
}

Matrix ladder_matrix(LadderKind kind, int n_max) {
  if (n_max < 1) throw std::invalid_argument("ladder_matrix: n_max must be at least 1");
  const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
  Matrix creation(dim, dim);
  for (int n = 0; n < n_max; ++n)
    creation(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n)) = std::sqrt(double(n) + 1.0);
  return kind == LadderKind::Create ? creation : creation.adjoint();
}

namespace {

// I ⊗ ... ⊗ op ⊗ ... ⊗ I with op in the given slot.
Matrix one_mode_operator(const Matrix& op, int mode, const FockSpace& space) {
  const std::size_t levels = static_cast<std::size_t>(space.levels_per_phonon);
  std::size_t left = 1, right = 1;
  for (int m = 0; m < mode; ++m) left *= levels;
  for (int m = mode + 1; m < space.n_phonons; ++m) right *= levels;
  return kron(kron(Matrix::identity(left), op), Matrix::identity(right));
}

}  // namespace

Matrix embed(const LadderProduct& product, const FockSpace& space) {
  for (const auto& f : product.factors)
    if (f.mode < 0 || f.mode >= space.n_phonons)
      throw std::invalid_argument("embed: ladder operator mode out of range");

  const int n_max = space.levels_per_phonon - 1;
  Matrix result = Matrix::identity(space.dimension());
  // Right-to-left application means plain left-to-right matrix products.
  for (const auto& f : product.factors)
    result = result * one_mode_operator(ladder_matrix(f.kind, n_max), f.mode, space);
  result *= product.coefficient;
  return result;
}

cdouble vacuum_expectation(const LadderProduct& product, const FockSpace& space) {
  return embed(product, space)(0, 0);
}

cdouble wick_expectation(const std::array<LadderOp, 4>& ops, const FockSpace& space) {
  auto two_point = [&](const LadderOp& a, const LadderOp& b) {
    return vacuum_expectation(LadderProduct{{1.0, 0.0}, {a, b}}, space);
  };
  return two_point(ops[0], ops[1]) * two_point(ops[2], ops[3]) +
         two_point(ops[0], ops[2]) * two_point(ops[1], ops[3]) +
         two_point(ops[0], ops[3]) * two_point(ops[1], ops[2]);
}

}  // namespace qphonon
