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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qphonon/hamiltonian.hpp"
#include "qphonon/mitigation.hpp"
#include "qphonon/vqe.hpp"

namespace qphonon {

namespace constants {
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
inline constexpr double hbar = 1.054571817e-34;         // J*s
}  // namespace constants

/// Bose-Einstein occupation of a mode at toy frequency omega; frequency_scale
/// converts toy units to rad/s. Overflow-safe for large hbar*w/kT.
double occupation(double omega_toy, double temperature, double frequency_scale);

/// Per-mode specific heat kB x^2 e^x / (e^x - 1)^2 with x = hbar*w/kT, in J/K.
double specific_heat(double omega_toy, double temperature, double frequency_scale);

/// Sum of per-mode specific heats.
double system_specific_heat(std::span<const double> omegas_toy, double temperature,
                            double frequency_scale);

/// Toy-normalized scattering rate n (1+n1) (1+n2) * |element|^2.
double gamma_rate(const std::array<double, 3>& occupations, double structural_element_sq);

/// Matthiessen combination 1/(g3 + g4); throws when both rates vanish.
double lifetime(double gamma3, double gamma4);

/// v^2 c tau / V for one channel.
double kappa_point(double group_velocity, double heat_capacity, double tau, double volume);

/// Per-gate fidelity needed so that n gates keep the target total fidelity:
/// target^(1/n).
double fidelity_requirement(int n_two_qubit_gates, double target);

/// Two-qubit gate count of the fully entangled layered ansatz:
/// C(m*n, 2) * reps.
int su2_two_qubit_gate_count(int n_phonons, int modes_per_phonon, int reps);

/// Splitting channel of the first admitted triple: mode indices ordered as
/// (decaying, product, product).
std::array<int, 3> splitting_channel(const PhononSystem& system);

/// Frequency scale (rad/s per toy unit) such that the system heat capacity
/// at the anchor temperature matches the target, found by bisection.
double calibrate_frequency_scale(std::span<const double> omegas_toy, double anchor_temperature,
                                 double cv_target);

struct ThermalCalibration {
  double frequency_scale = 0.0;  // rad/s per toy frequency unit
  double kappa_norm = 0.0;       // overall conductivity normalization
  double reference_energy = 0.0; // exact physical ground energy used as anchor
};

struct ThermalAnchors {
  double temperature = 100.0;
  double cv_target = 4.1396e-23;     // J/K
  double kappa_target = 7200.133;    // toy-normalized W/mK
};

/**
 * Two-constant calibration: the frequency scale is fit to the heat-capacity
 * anchor, then the conductivity normalization is fixed so the exact-source
 * kappa at the anchor temperature hits the kappa anchor. Every other grid
 * point is a prediction.
 */
ThermalCalibration calibrate_thermal_model(const PhononSystem& system, int levels_per_phonon,
                                           const ThermalAnchors& anchors, double group_velocity,
                                           double volume);

enum class KappaSource { Exact, VqeNoiseless, VqeUnmitigated, VqeMitigated };

const char* kappa_source_name(KappaSource s);
KappaSource kappa_source_from_name(const std::string& name);

struct ThermalConfig {
  std::vector<double> temperatures = {100.0, 150.0, 200.0, 250.0, 300.0};
  double group_velocity = 8500.0;  // m/s
  double volume = 1.0;             // normalized
  ThermalAnchors anchors;
  int runs_per_source = 5;         // repeated runs for stochastic sources
};

struct ThermalPoint {
  double temperature = 0.0;
  std::array<double, 3> occupations{};  // splitting channel
  double heat_capacity = 0.0;           // J/K, all modes
  double gamma = 0.0;
  double tau = 0.0;
  double kappa = 0.0;
  double kappa_std = 0.0;
};

/// Per-run physical ground-energy estimates feeding the kappa pipeline.
struct SourceEnergies {
  KappaSource source = KappaSource::Exact;
  std::vector<double> energies;
};

/**
 * How the VQE-backed sources are run. The unmitigated source mimics a raw
 * device session: shot-based noisy optimization followed by an unmitigated
 * final measurement. The mitigated source optimizes under the noisy
 * expectation in the estimation limit and reports a final measurement
 * through the full mitigation stack.
 */
struct SourceProtocol {
  OptimizerSpec optimizer;            // noiseless source
  OptimizerSpec noisy_optimizer;      // unmitigated session
  OptimizerSpec mitigated_optimizer;  // mitigated session
  NoiseModel noise;
  MitigationPlan plan;                // final mitigated measurement
  int shots = 4096;
  int final_shots = 65536;            // final energy measurement budget
  std::uint64_t seed = 7;
};

/// Physical-part energy estimates per run for one source.
SourceEnergies estimate_source_energies(KappaSource source, const Circuit& ansatz,
                                        const MappedHamiltonian& h, const SourceProtocol& protocol,
                                        int runs);

/// Thermal sweep for one source given its per-run energy estimates.
std::vector<ThermalPoint> thermal_sweep(const ThermalConfig& config, const PhononSystem& system,
                                        const ThermalCalibration& calibration,
                                        const SourceEnergies& energies);

}  // namespace qphonon
