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
#include <optional>
#include <string>
#include <vector>

#include "qphonon/circuits.hpp"
#include "qphonon/linalg.hpp"
#include "qphonon/pauli.hpp"

namespace qphonon {

/// Pure state over 2^width amplitudes. Qubit 0 is the leftmost ket
/// position, i.e. basis index bit (width-1-q) holds qubit q.
struct StateVector {
  int width = 0;
  std::vector<cdouble> amplitudes;

  static StateVector zero_state(int width);
  double norm() const;
};

struct DensityMatrix {
  int width = 0;
  Matrix rho;

  static DensityMatrix zero_state(int width);
  static DensityMatrix from_statevector(const StateVector& psi);
  double trace_real() const;
  double purity() const;
};

/// Per-qubit readout confusion: p01 = P(measure 0 | true 1),
/// p10 = P(measure 1 | true 0). Columns of the confusion matrix sum to 1
/// by construction.
struct ReadoutConfusion {
  double p01 = 0.0;
  double p10 = 0.0;
};

/**
 * Gate-level noise model: a two-qubit depolarizing channel applied after
 * every two-qubit gate, per-qubit readout confusion, and optional idle
 * amplitude-damping/dephasing driven by T1/T2 with a fixed per-gate
 * duration table. Single-qubit gates are treated as noiseless. The idle
 * schedule is serialized: each gate occupies a global time slot during
 * which every other qubit idles; gates marked merged take no time.
 */
struct NoiseModel {
  double depolarizing_p = 0.0;
  std::vector<ReadoutConfusion> readout;  // empty = ideal readout
  std::optional<double> t1_us;
  std::optional<double> t2_us;
  double gate_time_1q_ns = 60.0;
  double gate_time_2q_ns = 660.0;
  /// 1.0 disables the idle channel entirely (dynamical-decoupling model).
  double idle_suppression = 0.0;

  void validate(int width) const;
  bool has_idle() const;
  bool has_readout() const { return !readout.empty(); }
};

/// Characterization snapshot of a device; the noise_model() subset feeds
/// the simulator, the rest is carried for reporting.
struct DevicePreset {
  std::string name;
  double ecr_error = 0.0;
  double pauli_x_error = 0.0;
  double readout_p01 = 0.0;
  double readout_p10 = 0.0;
  double t1_us = 0.0;
  double t2_us = 0.0;
  double eplg_percent = 0.0;
  double qubit_frequency_ghz = 0.0;

  NoiseModel noise_model(int width, bool include_idle = true) const;
};

const DevicePreset& ibm_brisbane();
const DevicePreset& device_preset(const std::string& name);

/// Apply one bound gate in place.
void apply_gate(StateVector& state, const Gate& g);

/// Run a fully bound circuit from |0...0>, tracking the global phase.
StateVector run_statevector(const Circuit& circuit);

/// Full unitary of a bound circuit including its global phase. Intended
/// for small widths; used heavily by equivalence tests.
Matrix circuit_unitary(const Circuit& circuit);

/// Density-matrix run of a bound circuit under the noise model. Width is
/// capped at 10 qubits.
DensityMatrix run_density(const Circuit& circuit, const NoiseModel& noise);

/// <psi|H|psi> / Tr(rho H) computed term by term. The observable must be
/// simplified and Hermitian; a non-Hermitian sum throws.
double expectation(const StateVector& state, const PauliSum& observable);
double expectation(const DensityMatrix& state, const PauliSum& observable);

struct Counts {
  std::map<std::string, int> histogram;
  int shots = 0;
};

/// Born-rule sampling in the computational basis, with independent
/// per-qubit confusion flips when a readout model is supplied.
/// Deterministic for a fixed seed.
Counts sample_bitstrings(const StateVector& state, int shots,
                         const std::vector<ReadoutConfusion>* readout, std::uint64_t seed);
Counts sample_bitstrings(const DensityMatrix& state, int shots,
                         const std::vector<ReadoutConfusion>* readout, std::uint64_t seed);

/// Single-qubit rotations that map the term's X/Y axes onto Z before a
/// computational-basis measurement.
Circuit basis_rotation_circuit(const PauliTerm& term);

/// Confusion-matrix inversion on a probability vector over bitstrings.
/// Entries may come out slightly negative; the total stays 1.
std::vector<double> invert_readout_distribution(std::vector<double> probs,
                                                const std::vector<ReadoutConfusion>& readout);

/**
 * Shot-based estimate of <H>. Shots are allocated per term proportionally
 * to |coefficient| with a floor of min_shots_per_term; identity terms are
 * added exactly. When invert_readout is set and the noise model carries
 * confusion matrices, each term's counts are unfolded before averaging.
 */
double sampled_expectation(const PauliSum& observable, const StateVector& state, int shots,
                           const NoiseModel* noise, std::uint64_t seed, bool invert_readout = false,
                           int min_shots_per_term = 64);
double sampled_expectation(const PauliSum& observable, const DensityMatrix& state, int shots,
                           const NoiseModel* noise, std::uint64_t seed, bool invert_readout = false,
                           int min_shots_per_term = 64);

/// Process fidelity of an ideal two-qubit gate against the same gate
/// followed by depolarizing noise of strength p: 1 - 15 p / 16.
double depolarizing_gate_fidelity(double p);

/// Inverse of depolarizing_gate_fidelity.
double depolarizing_p_for_fidelity(double fidelity);

}  // namespace qphonon
