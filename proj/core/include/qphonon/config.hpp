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
#include <optional>
#include <string>
#include <vector>

#include "qphonon/hamiltonian.hpp"
#include "qphonon/mitigation.hpp"
#include "qphonon/thermo.hpp"
#include "qphonon/vqe.hpp"

namespace qphonon {

enum class AnsatzKind { EfficientSu2, Custom };

const char* ansatz_name(AnsatzKind k);
AnsatzKind ansatz_from_name(const std::string& name);

struct AnsatzConfig {
  AnsatzKind kind = AnsatzKind::Custom;
  int reps = 2;                 // layered-ansatz repetitions
  bool transpile_to_ecr = true; // execute on the ECR basis
};

struct NoiseConfig {
  std::optional<std::string> preset;  // e.g. "ibm_brisbane"
  std::optional<double> depolarizing_p;
  std::optional<double> readout_p01;
  std::optional<double> readout_p10;
  std::optional<double> t1_us;
  std::optional<double> t2_us;

  bool enabled() const;
  NoiseModel build(int width) const;
};

struct NoiseSweepConfig {
  std::vector<double> fidelities = {1.0, 0.99999, 0.9999, 0.999, 0.99, 0.98};
  int seeds = 5;
  int session_iterations = 1500;  // optimizer iterations per noisy session
};

struct MitigateConfig {
  int trials = 50;
};

struct VqeCommandConfig {
  std::vector<OptimizerKind> optimizers = {OptimizerKind::NelderMead, OptimizerKind::Powell,
                                           OptimizerKind::Spsa, OptimizerKind::LbfgsFd,
                                           OptimizerKind::CobylaStyle};
  bool plot = true;
  int starts = 3;  // seeded restarts per optimizer, best run kept
};

struct ThermalCommandConfig {
  ThermalConfig thermal;
  std::vector<KappaSource> sources = {KappaSource::Exact, KappaSource::VqeNoiseless,
                                      KappaSource::VqeUnmitigated, KappaSource::VqeMitigated};
  int final_shots = 65536;
};

/// One validated experiment description; every command reads from here.
struct RunConfig {
  std::uint64_t seed = 7;
  int shots = 4096;
  std::string output_dir = "out";

  PhononSystem system = PhononSystem::toy_model();
  int levels_per_phonon = 2;
  std::optional<double> penalty_weight;  // empty = automatic

  AnsatzConfig ansatz;
  OptimizerSpec optimizer;
  OptimizerSpec noisy_optimizer;
  NoiseConfig noise;
  MitigationPlan mitigation;
  NoiseSweepConfig noise_sweep;
  MitigateConfig mitigate;
  VqeCommandConfig vqe_command;
  ThermalCommandConfig kappa;

  static RunConfig defaults();

  EncodingLayout layout() const { return EncodingLayout(system.n_phonons, levels_per_phonon); }
  MappedHamiltonian build_hamiltonian() const;
  Circuit build_ansatz() const;  // transpiled when requested

  /// Canonical JSON rendering; the manifest hash is taken over this.
  std::string canonical_json() const;
};

/// Parse a JSON config; unknown keys anywhere are rejected.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace qphonon
