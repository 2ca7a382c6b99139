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
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qphonon/circuits.hpp"
#include "qphonon/engine.hpp"
#include "qphonon/hamiltonian.hpp"

namespace qphonon {

enum class Extrapolator { Linear, Quadratic, Richardson };

const char* extrapolator_name(Extrapolator e);
Extrapolator extrapolator_from_name(const std::string& name);

struct ZneSpec {
  std::vector<int> scale_factors = {1, 3, 5};
  Extrapolator extrapolator = Extrapolator::Richardson;

  void validate() const;  // at least two distinct odd factors
};

struct MitigationPlan {
  bool readout = false;
  bool zne = false;
  bool twirling = false;
  bool dynamical_decoupling = false;
  ZneSpec zne_spec;
  int twirl_samples = 8;
  /// Fraction of the idle decoherence removed when DD is enabled.
  double dd_suppression = 1.0;

  void validate() const;
  static MitigationPlan all_off() { return {}; }
  static MitigationPlan all_on();
};

/// Signed quasi-probabilities over bitstrings; sums to 1 but individual
/// entries may be slightly negative after confusion inversion.
struct QuasiDistribution {
  std::map<std::string, double> probabilities;

  double total() const;
  /// Expectation of a Z-parity over the given qubits.
  double z_parity_expectation(std::span<const int> qubits, int width) const;
  /// Clip negatives and renormalize into a proper distribution.
  QuasiDistribution clipped() const;
};

/// Tensor-structured inversion of the per-qubit confusion model applied to
/// empirical counts. Throws when a confusion matrix is singular.
QuasiDistribution readout_mitigate(const Counts& counts,
                                   const std::vector<ReadoutConfusion>& confusion);

/**
 * Global gate folding: every two-qubit gate G becomes G (G† G)^((scale-1)/2),
 * multiplying the two-qubit gate count by the odd scale while leaving the
 * noiseless unitary unchanged. Single-qubit gates pass through.
 */
Circuit fold_gates(const Circuit& circuit, int scale);

/// Extrapolate measured (scale, value) points to scale zero.
double zne_extrapolate(std::span<const std::pair<double, double>> points, const ZneSpec& spec);

/**
 * Conjugate every two-qubit gate by a random Pauli pair chosen so the
 * noiseless action is unchanged up to global phase. Y and Z dressings are
 * emitted as RY(pi)/RZ(pi). Deterministic per seed.
 */
Circuit pauli_twirl(const Circuit& circuit, std::uint64_t seed);

struct MitigatedEnergy {
  double value = 0.0;
  double std_error = 0.0;
};

/**
 * Composite mitigated estimate of <observable> on the ansatz state under
 * the given noise model. Enabled strategies compose as: twirl ensemble
 * (or shot batches) -> per-member gate folding and ZNE extrapolation ->
 * readout inversion inside each sampled estimate; dynamical decoupling
 * suppresses the idle channel. shots is the total budget, split across the
 * ensemble and scale points; shots = 0 evaluates expectations exactly.
 */
MitigatedEnergy mitigated_energy(std::span<const double> params, const Circuit& ansatz,
                                 const PauliSum& observable, const NoiseModel& noise,
                                 const MitigationPlan& plan, int shots, std::uint64_t seed);

MitigatedEnergy mitigated_energy(std::span<const double> params, const Circuit& ansatz,
                                 const MappedHamiltonian& h, const NoiseModel& noise,
                                 const MitigationPlan& plan, int shots, std::uint64_t seed);

}  // namespace qphonon
