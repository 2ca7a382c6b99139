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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qphonon/circuits.hpp"
#include "qphonon/engine.hpp"
#include "qphonon/hamiltonian.hpp"

namespace qphonon {

enum class OptimizerKind { NelderMead, Powell, Spsa, LbfgsFd, CobylaStyle };

const char* optimizer_name(OptimizerKind k);
OptimizerKind optimizer_from_name(const std::string& name);

struct OptimizerSpec {
  OptimizerKind kind = OptimizerKind::LbfgsFd;
  int max_iterations = 400;
  double ftol = 1e-10;
  double ptol = 1e-9;
  double fd_step = 1e-5;
  std::uint64_t seed = 1;
  int patience = 10;

  void validate() const;
};

enum class EstimatorMode { ExactExpectation, Shots };

struct HistoryPoint {
  int evaluation = 0;  // 1-based evaluation counter
  double energy = 0.0;
};

struct VqeRun {
  std::vector<double> best_parameters;
  double best_energy = 0.0;
  std::vector<HistoryPoint> history;
  EstimatorMode mode = EstimatorMode::ExactExpectation;
  bool converged = false;
  int evaluations = 0;
};

/**
 * Energy of an observable in the state prepared by the ansatz at the given
 * parameters. Exact mode evaluates the expectation directly (statevector
 * when no noise model is given, density matrix otherwise); shot mode
 * samples with readout errors from the noise model.
 */
double vqe_energy(std::span<const double> params, const Circuit& ansatz,
                  const PauliSum& observable, EstimatorMode mode, const NoiseModel* noise,
                  int shots, std::uint64_t seed);
double vqe_energy(std::span<const double> params, const Circuit& ansatz,
                  const MappedHamiltonian& h, EstimatorMode mode, const NoiseModel* noise,
                  int shots, std::uint64_t seed);

/// Black-box scalar objective. The evaluation index makes shot-mode
/// objectives deterministic per (seed, evaluation).
using Objective = std::function<double(std::span<const double>, int evaluation)>;

/**
 * Minimize a black-box objective with the chosen optimizer, recording every
 * evaluation. NaN objective values abort the run with an exception. The
 * converged flag reports whether the best value improved by less than ftol
 * across the trailing patience window.
 */
VqeRun minimize_objective(const Objective& objective, int n_params, const OptimizerSpec& spec,
                          std::span<const double> initial);

/// VQE driver: wires vqe_energy into minimize_objective. When no initial
/// point is given, parameters start uniformly random in [-pi, pi] from the
/// optimizer seed.
VqeRun minimize(const Circuit& ansatz, const PauliSum& observable, const OptimizerSpec& spec,
                EstimatorMode mode, const NoiseModel* noise = nullptr, int shots = 4096,
                std::optional<std::vector<double>> initial = std::nullopt);
VqeRun minimize(const Circuit& ansatz, const MappedHamiltonian& h, const OptimizerSpec& spec,
                EstimatorMode mode, const NoiseModel* noise = nullptr, int shots = 4096,
                std::optional<std::vector<double>> initial = std::nullopt);

struct ConvergenceReport {
  int evaluations_to_1e3 = -1;  // first evaluation within 1e-3 of the reference
  int evaluations_to_1e6 = -1;
  double final_gap = 0.0;
  std::vector<double> envelope;  // running best energy per evaluation
};

/// Pure function of the run history against a reference energy.
ConvergenceReport convergence_report(const VqeRun& run, double reference);

}  // namespace qphonon
