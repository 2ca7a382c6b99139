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

#include <string>
#include <vector>

#include "qphonon/config.hpp"

namespace qphonon {

inline constexpr const char* kVersion = "0.1.0";

/// Names of the files a command wrote, relative to its output directory.
struct CommandOutcome {
  std::vector<std::string> files;
};

// The study functions below are the experiment protocols behind the
// commands; the acceptance suite drives exactly the same code paths.

struct NoiseSweepRow {
  double fidelity = 1.0;
  AnsatzKind ansatz = AnsatzKind::Custom;
  double emin = 0.0;  // lowest seeded energy ratio E / E_ref
  double emax = 0.0;
  double mean = 0.0;
};

/// Depolarization sweep: for each ansatz and ECR fidelity, seeded noisy
/// sessions report the best physical energy seen; rows aggregate the ratio
/// to the exact reference.
std::vector<NoiseSweepRow> run_noise_sweep_study(const RunConfig& config);

struct MitigationRow {
  std::string strategy;
  double mean = 0.0;               // mean estimate over trials
  double stddev = 0.0;             // spread of estimates over trials
  double median_abs_error = 0.0;   // median |E - E_ref|
  double relative_error = 0.0;     // median error over |E_ref|
};

/// Paired-trial comparison of mitigation strategies at the configured
/// noise model, on the state from a noiseless calibration run.
std::vector<MitigationRow> run_mitigation_study(const RunConfig& config);

struct KappaSourceResult {
  KappaSource source = KappaSource::Exact;
  std::vector<double> energies;
  std::vector<ThermalPoint> points;
};

struct KappaStudy {
  ThermalCalibration calibration;
  std::vector<KappaSourceResult> sources;
};

/// Calibrated thermal-conductivity study over the configured sources.
KappaStudy run_kappa_study(const RunConfig& config);

/// Mapped-Hamiltonian dump: Pauli text file plus a term-count/Hermiticity
/// report.
CommandOutcome cmd_hamiltonian(const RunConfig& config, const std::string& out_dir);

/// Ansatz circuit dump in the line-per-gate text format.
CommandOutcome cmd_dump_circuit(const RunConfig& config, const std::string& out_dir);

/// Noiseless convergence study over the configured optimizers: history CSV
/// per optimizer, a summary, and a convergence plot.
CommandOutcome cmd_vqe(const RunConfig& config, const std::string& out_dir);

/// Depolarization sweep over an ECR-fidelity grid for both ansatz families.
CommandOutcome cmd_noise_sweep(const RunConfig& config, const std::string& out_dir);

/// Error-mitigation strategy comparison at the configured noise model.
CommandOutcome cmd_mitigate(const RunConfig& config, const std::string& out_dir);

/// Thermal-conductivity sweep per configured source, with CSV and plot.
CommandOutcome cmd_kappa(const RunConfig& config, const std::string& out_dir);

}  // namespace qphonon
