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

#include <cstdint>
#include <string>
#include <vector>

#include "qphonon/bosonic.hpp"
#include "qphonon/linalg.hpp"

namespace qphonon {

enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

/// One weighted Pauli string. axes[0] addresses qubit 0, which is the
/// leftmost (most significant) position in kets and bitstrings.
struct PauliTerm {
  cdouble coefficient{1.0, 0.0};
  std::vector<Axis> axes;

  int width() const { return static_cast<int>(axes.size()); }
  std::string axes_string() const;
  static PauliTerm identity(int width, cdouble coeff = {1.0, 0.0});
  static PauliTerm single(int width, int qubit, Axis a, cdouble coeff = {1.0, 0.0});
};

/// Qubit-wise product with exact phase tracking (X*Y = iZ and cyclic).
PauliTerm multiply(const PauliTerm& lhs, const PauliTerm& rhs);

/**
 * Weighted sum of Pauli strings over a fixed register width.
 *
 * Sums are kept raw until simplified() merges like terms, drops entries
 * below tolerance and sorts the rest lexicographically, which makes the
 * representation canonical and comparisons meaningful.
 */
class PauliSum {
 public:
  explicit PauliSum(int width);

  int width() const { return width_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(PauliTerm term);
  void add_identity(cdouble coeff);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cdouble scalar);
  friend PauliSum operator+(PauliSum lhs, const PauliSum& rhs);
  friend PauliSum operator-(PauliSum lhs, const PauliSum& rhs);
  friend PauliSum operator*(const PauliSum& lhs, const PauliSum& rhs);
  friend PauliSum operator*(cdouble scalar, PauliSum sum);

  PauliSum adjoint() const;

  /// Merge like terms, drop |coeff| < tol, order terms canonically.
  PauliSum simplified(double tol = 1e-12) const;

  /// True when every coefficient is real within tol. Meaningful on
  /// simplified sums, where it is equivalent to Hermiticity.
  bool is_hermitian(double tol = 1e-10) const;

  /// Sum of |coefficient| over all terms.
  double coefficient_l1() const;

  /// Dense 2^width x 2^width matrix. Guarded at width 12.
  Matrix to_matrix() const;

  /// One term per line: "coeff_re coeff_im AXES".
  std::string to_text() const;
  static PauliSum from_text(const std::string& text);

 private:
  int width_;
  std::vector<PauliTerm> terms_;
};

/**
 * Unary (one-hot) register layout: each phonon owns a block of
 * levels_per_phonon qubits, one per retained level, blocks in phonon order.
 * Physical states keep exactly one "hot" qubit per block.
 */
struct EncodingLayout {
  int n_phonons = 1;
  int levels_per_phonon = 2;

  EncodingLayout(int phonons, int levels);

  int width() const { return n_phonons * levels_per_phonon; }
  int qubit_index(int phonon, int level) const;
  FockSpace fock_space() const { return FockSpace(n_phonons, levels_per_phonon); }
};

/// (X - iY)/2 on one qubit: maps an unoccupied level qubit to occupied.
PauliSum sigma_plus(int qubit, int width);
/// (X + iY)/2, the adjoint of sigma_plus.
PauliSum sigma_minus(int qubit, int width);
/// (I - Z)/2, projector on the occupied state of one level qubit.
PauliSum occupancy_projector(int qubit, int width);

/**
 * One-hot encoding of a single ladder operator:
 *   a†_m = sum_n sqrt(n+1) sigma-(m,n) sigma+(m,n+1)
 *   a_m  = sum_n sqrt(n)   sigma+(m,n-1) sigma-(m,n)
 * expanded into Pauli strings over the full register.
 */
PauliSum encode_ladder(const LadderOp& op, const EncodingLayout& layout);

/// Number operator of one phonon: sum_n n * occupancy(m, n).
PauliSum encode_number(int phonon, const EncodingLayout& layout);

}  // namespace qphonon
