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

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qphonon/linalg.hpp"

namespace qphonon {

/**
 * Truncated multi-mode Fock space.
 *
 * Each of the n_phonons modes keeps levels_per_phonon states |0>..|L-1>.
 * Mode 0 is the leftmost (most significant) tensor slot, so the basis index
 * of |d0, d1, ...> is the base-L number with digit d0 first.
 */
struct FockSpace {
  int n_phonons = 1;
  int levels_per_phonon = 2;

  FockSpace(int phonons, int levels);

  std::size_t dimension() const;
};

enum class LadderKind { Create, Annihilate };

struct LadderOp {
  LadderKind kind = LadderKind::Create;
  int mode = 0;

  LadderOp adjoint() const {
    return {kind == LadderKind::Create ? LadderKind::Annihilate : LadderKind::Create, mode};
  }
  bool operator==(const LadderOp&) const = default;
};

inline LadderOp create(int mode) { return {LadderKind::Create, mode}; }
inline LadderOp annihilate(int mode) { return {LadderKind::Annihilate, mode}; }

/// Scalar multiple of an ordered product of ladder operators. The factor
/// list reads left to right in operator order, i.e. the last factor acts
/// first on a ket.
struct LadderProduct {
  cdouble coefficient{1.0, 0.0};
  std::vector<LadderOp> factors;

  static LadderProduct identity(cdouble coeff = {1.0, 0.0}) { return {coeff, {}}; }

  /// Reverses factor order and swaps kinds; conjugates the coefficient.
  LadderProduct adjoint() const;

  friend LadderProduct operator*(const LadderProduct& lhs, const LadderProduct& rhs);
};

/**
 * Matrix of a single-mode ladder operator truncated at occupation n_max,
 * i.e. an (n_max+1) x (n_max+1) matrix. The creation operator has
 * <n+1|a†|n> = sqrt(n+1); annihilation is its Hermitian conjugate.
 * n_max = 0 is rejected.
 */
Matrix ladder_matrix(LadderKind kind, int n_max);

/// Dense matrix of a ladder product on the full Fock space. Each factor
/// acts on its own mode's tensor slot; factors apply right to left.
Matrix embed(const LadderProduct& product, const FockSpace& space);

/// <vac| product |vac> with |vac> the all-ground state.
cdouble vacuum_expectation(const LadderProduct& product, const FockSpace& space);

/// Wick pairing of exactly four single ladder operators:
/// <A1A2><A3A4> + <A1A3><A2A4> + <A1A4><A2A3>, each two-point function a
/// vacuum expectation. Exact for the bosonic vacuum.
cdouble wick_expectation(const std::array<LadderOp, 4>& ops, const FockSpace& space);

}  // namespace qphonon
