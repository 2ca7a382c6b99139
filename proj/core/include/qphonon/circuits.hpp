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
#include <span>
#include <string>
#include <vector>

#include "qphonon/linalg.hpp"

namespace qphonon {

enum class GateKind { RX, RY, RZ, X, CNOT, CZ, ECR };

bool is_rotation(GateKind k);
bool is_two_qubit(GateKind k);
const char* gate_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

/// One gate instance. Rotations carry either a bound angle or a symbolic
/// parameter index (param >= 0). Two-qubit kinds use q0 as the first
/// (most significant) tensor slot; for CNOT that is the control.
struct Gate {
  GateKind kind = GateKind::X;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;
  int param = -1;
  /// Dressing gates that a compiler would merge into their neighbors;
  /// they take no time in the idle-decoherence schedule.
  bool merged = false;

  bool bound() const { return param < 0; }
};

/// Ordered parameterized gate list over a fixed-width register.
struct Circuit {
  int width = 0;
  int n_parameters = 0;
  double global_phase = 0.0;
  std::vector<Gate> gates;

  explicit Circuit(int w = 0) : width(w) {}

  void append(Gate g);
  void rotation(GateKind kind, int qubit, double angle);
  void rotation_param(GateKind kind, int qubit, int param_index);
  void x(int qubit);
  void cnot(int control, int target);
  void cz(int a, int b);
  void ecr(int a, int b);

  bool fully_bound() const;
  int count(GateKind kind) const;
  int two_qubit_count() const;

  std::string to_text() const;
  static Circuit from_text(const std::string& text);
};

/// Bound 2x2 or 4x4 unitary of a single gate.
Matrix gate_matrix(const Gate& g);

/**
 * Hardware-efficient layered ansatz: (reps+1) rotation layers of per-qubit
 * RY then RZ, with a full pairwise CNOT block between consecutive layers.
 * Width 6 with 2 reps gives 36 parameters and 30 CNOT gates.
 */
Circuit build_efficient_su2(int width, int reps);

/**
 * Reduced-depth real-amplitude ansatz: four RY layers, each followed by a
 * linear CNOT chain, closed by one CZ from the last qubit back to the
 * first. Width 6 gives 24 parameters, 20 CNOT gates and 1 CZ gate. RY-only
 * rotations keep all amplitudes real.
 */
Circuit build_custom_ansatz(int width);

/**
 * Replace every CNOT with an equivalent block of single-qubit rotations
 * around one ECR gate, adding pi/2 to the circuit's global phase per
 * conversion. Other gates pass through unchanged. The result matches the
 * original unitary up to a global phase.
 */
Circuit transpile_cnot_to_ecr(const Circuit& circuit);

/// Replace symbolic parameters with bound angles. Idempotent for circuits
/// that are already bound.
Circuit bind_parameters(const Circuit& circuit, std::span<const double> values);

/// Uniform draw in [-pi, pi] per parameter.
std::vector<double> random_parameters(int n, std::uint64_t seed);

/// Uniform draw in [-scale, scale]; a small perturbation around zero.
std::vector<double> perturbed_parameters(int n, std::uint64_t seed, double scale = 0.1);

}  // namespace qphonon
