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
#include <map>
#include <span>
#include <vector>

#include "qphonon/bosonic.hpp"
#include "qphonon/pauli.hpp"

namespace qphonon {

/**
 * A small anharmonic phonon system: one oscillator per phonon with a fixed
 * frequency, scalar third- and fourth-order coupling tables keyed by sorted
 * mode indices, and an energy-conservation predicate that admits only
 * scattering channels whose signed frequencies can balance.
 */
struct PhononSystem {
  int n_phonons = 0;
  std::vector<double> mode_frequencies;
  std::map<std::array<int, 3>, double> coupling3;  // keyed by sorted mode triple
  std::map<std::array<int, 4>, double> coupling4;  // keyed by sorted mode quadruple
  double normalizer_g = 1.0;
  double conservation_tol = 1e-9;

  void validate() const;

  /// True when some +/- signing of the three frequencies (not all equal
  /// signs) sums to zero, i.e. one mode can split into / combine from the
  /// others.
  bool conserves(const std::array<int, 3>& modes) const;
  bool conserves4(const std::array<int, 4>& modes) const;

  double phi3(const std::array<int, 3>& modes) const;
  double phi4(const std::array<int, 4>& modes) const;

  /// Three phonons at frequencies 1.0, 0.5, 0.5 with a single third-order
  /// coupling on the (0,1,2) triple. The workhorse test system.
  static PhononSystem toy_model(double phi = 1.0);
};

/// G * phi / sqrt(prod omega) when the channel conserves, else 0.
double coupling_constant(int order, double phi, std::span<const double> frequencies, double g,
                         bool conserved);

/// Third-order interaction terms: for each admitted triple, the eight-term
/// expansion of u u u with u = a† + a, each weighted by the channel's
/// coupling constant.
std::vector<LadderProduct> build_h3(const PhononSystem& system);

/// Fourth-order interaction terms, sixteen products per admitted quadruple.
std::vector<LadderProduct> build_h4(const PhononSystem& system);

/// True when the term multiset is closed under Hermitian conjugation, with
/// factors compared after a stable per-mode reordering.
bool hermitian_closed(const std::vector<LadderProduct>& terms);

struct MappedHamiltonian {
  PauliSum pauli;         // physical part plus penalty
  PauliSum physical;      // encoded interaction terms only
  EncodingLayout layout;
  double penalty_weight = 0.0;
};

/// Penalty that vanishes exactly on one-hot states and is >= weight on any
/// basis state violating one-hot occupancy:
///   weight * sum_m (sum_n occupancy(m,n) - 1)^2.
PauliSum penalty_hamiltonian(const EncodingLayout& layout, double weight);

/// 10x the coefficient L1 norm of the physical sum; keeps the global
/// minimum inside the one-hot subspace.
double default_penalty_weight(const PauliSum& physical);

/**
 * Encode ladder products into a Pauli sum over the one-hot register and add
 * the occupancy penalty. Throws if the encoded physical part is not
 * Hermitian, which signals an unbalanced term list.
 */
MappedHamiltonian map_hamiltonian(const std::vector<LadderProduct>& terms,
                                  const EncodingLayout& layout, double penalty_weight);

/// Minimum eigenvalue via dense diagonalization. Width-guarded by to_matrix.
double exact_ground_energy(const PauliSum& sum);
double exact_ground_energy(const MappedHamiltonian& h);

/// Register basis states with exactly one hot qubit per phonon block, in
/// Fock-state order (mode 0 most significant digit).
std::vector<std::size_t> onehot_basis_states(const EncodingLayout& layout);

/// Restriction of a 2^width matrix to the one-hot subspace, expressed in
/// the Fock basis order of onehot_basis_states.
Matrix restrict_to_onehot(const Matrix& m, const EncodingLayout& layout);

/// Minimum eigenvalue of the sum restricted to the one-hot subspace.
double onehot_restricted_ground_energy(const PauliSum& sum, const EncodingLayout& layout);

/// Occupation-factor form of the squared splitting matrix element:
/// n (1+n1) (1+n2) * structural_element_sq.
double matrix_element_splitting(const std::array<double, 3>& occupations,
                                double structural_element_sq);

/// |<f|H3|i>|^2 for the zero-temperature splitting channel of the system's
/// first admitted triple, evaluated directly in Fock space. Includes the
/// coupling constant.
double structural_element_sq_exact(const PhononSystem& system, int levels_per_phonon);

/// Wick-decomposed vacuum value of one four-operator term, coefficient
/// included.
cdouble h4_wick_element(const LadderProduct& term, const FockSpace& space);

}  // namespace qphonon
