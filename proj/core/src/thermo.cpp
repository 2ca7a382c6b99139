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

#include "qphonon/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "qphonon/rng.hpp"

namespace qphonon {

namespace {

double thermal_x(double omega_toy, double temperature, double frequency_scale) {
  if (!(omega_toy > 0.0)) throw std::invalid_argument("thermal model: frequency must be positive");
  if (!(temperature > 0.0)) throw std::invalid_argument("thermal model: temperature must be positive");
  if (!(frequency_scale > 0.0))
    throw std::invalid_argument("thermal model: frequency scale must be positive");
  return constants::hbar * frequency_scale * omega_toy / (constants::k_boltzmann * temperature);
}

}  // namespace

double occupation(double omega_toy, double temperature, double frequency_scale) {
  const double x = thermal_x(omega_toy, temperature, frequency_scale);
  return 1.0 / std::expm1(x);
}

double specific_heat(double omega_toy, double temperature, double frequency_scale) {
  const double x = thermal_x(omega_toy, temperature, frequency_scale);
  if (x < 1e-4) {
    // Series form near the classical limit avoids 0/0.
    return constants::k_boltzmann * (1.0 - x * x / 12.0);
  }
  const double emx = std::exp(-x);
  const double denom = 1.0 - emx;
  return constants::k_boltzmann * x * x * emx / (denom * denom);
}

double system_specific_heat(std::span<const double> omegas_toy, double temperature,
                            double frequency_scale) {
  double acc = 0.0;
  for (double w : omegas_toy) acc += specific_heat(w, temperature, frequency_scale);
  return acc;
}

double gamma_rate(const std::array<double, 3>& occupations, double structural_element_sq) {
  for (double n : occupations)
    if (n < 0.0) throw std::invalid_argument("gamma_rate: negative occupation");
  if (structural_element_sq < 0.0) throw std::invalid_argument("gamma_rate: negative element");
  return occupations[0] * (1.0 + occupations[1]) * (1.0 + occupations[2]) * structural_element_sq;
}

double lifetime(double gamma3, double gamma4) {
  if (gamma3 < 0.0 || gamma4 < 0.0) throw std::invalid_argument("lifetime: negative rate");
  const double total = gamma3 + gamma4;
  if (total <= 0.0) throw std::domain_error("lifetime: both scattering rates vanish");
  return 1.0 / total;
}

double kappa_point(double group_velocity, double heat_capacity, double tau, double volume) {
  if (!(group_velocity > 0.0) || !(heat_capacity > 0.0) || !(tau > 0.0) || !(volume > 0.0))
    throw std::invalid_argument("kappa_point: inputs must be positive");
  return group_velocity * group_velocity * heat_capacity * tau / volume;
}

double fidelity_requirement(int n_two_qubit_gates, double target) {
  if (n_two_qubit_gates < 1) throw std::invalid_argument("fidelity_requirement: gate count must be positive");
  if (!(target > 0.0) || target > 1.0)
    throw std::invalid_argument("fidelity_requirement: target must be in (0, 1]");
  return std::pow(target, 1.0 / double(n_two_qubit_gates));
}

int su2_two_qubit_gate_count(int n_phonons, int modes_per_phonon, int reps) {
  const int n = n_phonons * modes_per_phonon;
  if (n < 2 || reps < 1) throw std::invalid_argument("su2_two_qubit_gate_count: bad shape");
  return n * (n - 1) / 2 * reps;
}

std::array<int, 3> splitting_channel(const PhononSystem& system) {
  system.validate();
  for (const auto& [modes, phi] : system.coupling3) {
    (void)phi;
    if (!system.conserves(modes)) continue;
    std::array<int, 3> perm = modes;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      return system.mode_frequencies[static_cast<std::size_t>(a)] >
             system.mode_frequencies[static_cast<std::size_t>(b)];
    });
    return perm;
  }
  throw std::invalid_argument("splitting_channel: no admitted three-phonon channel");
}

double calibrate_frequency_scale(std::span<const double> omegas_toy, double anchor_temperature,
                                 double cv_target) {
  if (!(cv_target > 0.0)) throw std::invalid_argument("calibrate_frequency_scale: bad target");
  double lo = 1e9, hi = 1e15;
  const auto cv = [&](double fs) { return system_specific_heat(omegas_toy, anchor_temperature, fs); };
  if (cv(lo) < cv_target || cv(hi) > cv_target)
    throw std::invalid_argument("calibrate_frequency_scale: target outside the bracket");
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (cv(mid) > cv_target)
      lo = mid;
    else
      hi = mid;
  }
  return std::sqrt(lo * hi);
}

namespace {

std::array<double, 3> channel_occupations(const PhononSystem& system,
                                          const std::array<int, 3>& channel, double temperature,
                                          double frequency_scale) {
  std::array<double, 3> occ{};
  for (int i = 0; i < 3; ++i)
    occ[static_cast<std::size_t>(i)] =
        occupation(system.mode_frequencies[static_cast<std::size_t>(channel[static_cast<std::size_t>(i)])],
                   temperature, frequency_scale);
  return occ;
}

struct FourPhononChannel {
  std::vector<int> in_modes;
  std::vector<int> out_modes;
};

std::optional<FourPhononChannel> four_phonon_channel(const PhononSystem& system) {
  for (const auto& [modes, phi] : system.coupling4) {
    if (phi == 0.0 || !system.conserves4(modes)) continue;
    const auto& w = system.mode_frequencies;
    auto omega = [&](int m) { return w[static_cast<std::size_t>(m)]; };
    // 1 -> 3 splitting.
    for (int i = 0; i < 4; ++i) {
      double rest = 0.0;
      for (int j = 0; j < 4; ++j)
        if (j != i) rest += omega(modes[static_cast<std::size_t>(j)]);
      if (std::abs(omega(modes[static_cast<std::size_t>(i)]) - rest) <= system.conservation_tol) {
        FourPhononChannel ch;
        ch.in_modes = {modes[static_cast<std::size_t>(i)]};
        for (int j = 0; j < 4; ++j)
          if (j != i) ch.out_modes.push_back(modes[static_cast<std::size_t>(j)]);
        return ch;
      }
    }
    // 2 -> 2 redistribution.
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        double in = omega(modes[static_cast<std::size_t>(i)]) + omega(modes[static_cast<std::size_t>(j)]);
        double out = 0.0;
        for (int k = 0; k < 4; ++k)
          if (k != i && k != j) out += omega(modes[static_cast<std::size_t>(k)]);
        if (std::abs(in - out) <= system.conservation_tol) {
          FourPhononChannel ch;
          ch.in_modes = {modes[static_cast<std::size_t>(i)], modes[static_cast<std::size_t>(j)]};
          for (int k = 0; k < 4; ++k)
            if (k != i && k != j) ch.out_modes.push_back(modes[static_cast<std::size_t>(k)]);
          return ch;
        }
      }
  }
  return std::nullopt;
}

double transition_element_sq(const PhononSystem& system, int levels_per_phonon,
                             const std::vector<LadderProduct>& hamiltonian_terms,
                             const std::vector<int>& in_modes, const std::vector<int>& out_modes) {
  const FockSpace space(system.n_phonons, levels_per_phonon);
  Matrix h(space.dimension(), space.dimension());
  for (const auto& t : hamiltonian_terms) h += embed(t, space);

  std::vector<cdouble> vac(space.dimension(), cdouble{0.0, 0.0});
  vac[0] = 1.0;
  auto prepare = [&](const std::vector<int>& modes) {
    LadderProduct prep;
    for (int m : modes) prep.factors.push_back(create(m));
    auto v = embed(prep, space).apply(vac);
    double norm = 0.0;
    for (const auto& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::runtime_error("transition_element_sq: prepared state vanished");
    for (auto& x : v) x /= norm;
    return v;
  };

  const auto initial = prepare(in_modes);
  const auto final_state = prepare(out_modes);
  const auto h_initial = h.apply(initial);
  cdouble amp{0.0, 0.0};
  for (std::size_t i = 0; i < h_initial.size(); ++i) amp += std::conj(final_state[i]) * h_initial[i];
  return std::norm(amp);
}

double four_phonon_gamma(const PhononSystem& system, int levels_per_phonon, double temperature,
                         double frequency_scale) {
  const auto channel = four_phonon_channel(system);
  if (!channel) return 0.0;
  const auto element_sq =
      transition_element_sq(system, levels_per_phonon, build_h4(system), channel->in_modes,
                            channel->out_modes);
  double occ_factor = 1.0;
  for (int m : channel->in_modes)
    occ_factor *= occupation(system.mode_frequencies[static_cast<std::size_t>(m)], temperature,
                             frequency_scale);
  for (int m : channel->out_modes)
    occ_factor *= 1.0 + occupation(system.mode_frequencies[static_cast<std::size_t>(m)],
                                   temperature, frequency_scale);
  return occ_factor * element_sq;
}

}  // namespace

ThermalCalibration calibrate_thermal_model(const PhononSystem& system, int levels_per_phonon,
                                           const ThermalAnchors& anchors, double group_velocity,
                                           double volume) {
  system.validate();
  ThermalCalibration cal;
  cal.frequency_scale =
      calibrate_frequency_scale(system.mode_frequencies, anchors.temperature, anchors.cv_target);

  const EncodingLayout layout(system.n_phonons, levels_per_phonon);
  auto terms = build_h3(system);
  const auto h4 = build_h4(system);
  terms.insert(terms.end(), h4.begin(), h4.end());
  const MappedHamiltonian mapped = map_hamiltonian(terms, layout, 0.0);
  cal.reference_energy = onehot_restricted_ground_energy(mapped.physical, layout);

  const auto channel = splitting_channel(system);
  const auto occ = channel_occupations(system, channel, anchors.temperature, cal.frequency_scale);
  const double gamma3 = gamma_rate(occ, cal.reference_energy * cal.reference_energy);
  const double gamma4 =
      four_phonon_gamma(system, levels_per_phonon, anchors.temperature, cal.frequency_scale);
  const double tau = lifetime(gamma3, gamma4);
  const double cv = system_specific_heat(system.mode_frequencies, anchors.temperature,
                                         cal.frequency_scale);
  const double kappa_raw = kappa_point(group_velocity, cv, tau, volume);
  cal.kappa_norm = anchors.kappa_target / kappa_raw;
  return cal;
}

const char* kappa_source_name(KappaSource s) {
  switch (s) {
    case KappaSource::Exact: return "exact";
    case KappaSource::VqeNoiseless: return "vqe-noiseless";
    case KappaSource::VqeUnmitigated: return "vqe-unmitigated";
    case KappaSource::VqeMitigated: return "vqe-mitigated";
  }
  throw std::invalid_argument("kappa_source_name: bad source");
}

KappaSource kappa_source_from_name(const std::string& name) {
  if (name == "exact") return KappaSource::Exact;
  if (name == "vqe-noiseless") return KappaSource::VqeNoiseless;
  if (name == "vqe-unmitigated") return KappaSource::VqeUnmitigated;
  if (name == "vqe-mitigated") return KappaSource::VqeMitigated;
  throw std::invalid_argument("kappa_source_from_name: unknown source '" + name + "'");
}

SourceEnergies estimate_source_energies(KappaSource source, const Circuit& ansatz,
                                        const MappedHamiltonian& h, const SourceProtocol& protocol,
                                        int runs) {
  if (runs < 1) throw std::invalid_argument("estimate_source_energies: runs must be positive");
  SourceEnergies out;
  out.source = source;

  if (source == KappaSource::Exact) {
    out.energies = {onehot_restricted_ground_energy(h.physical, h.layout)};
    return out;
  }

  for (int r = 0; r < runs; ++r) {
    const std::uint64_t run_seed = derive_seed(protocol.seed, 100 + std::uint64_t(r));
    switch (source) {
      case KappaSource::VqeNoiseless: {
        OptimizerSpec spec = protocol.optimizer;
        spec.seed = run_seed;
        const VqeRun run = minimize(ansatz, h, spec, EstimatorMode::ExactExpectation);
        const Circuit bound = bind_parameters(ansatz, run.best_parameters);
        out.energies.push_back(expectation(run_statevector(bound), h.physical));
        break;
      }
      case KappaSource::VqeUnmitigated: {
        OptimizerSpec spec = protocol.noisy_optimizer;
        spec.seed = run_seed;
        const VqeRun run = minimize(ansatz, h, spec, EstimatorMode::Shots, &protocol.noise,
                                    protocol.shots);
        const Circuit bound = bind_parameters(ansatz, run.best_parameters);
        const DensityMatrix dm = run_density(bound, protocol.noise);
        out.energies.push_back(sampled_expectation(h.physical, dm, protocol.final_shots,
                                                   &protocol.noise, derive_seed(run_seed, 9)));
        break;
      }
      case KappaSource::VqeMitigated: {
        // Optimize against the noisy expectation in the estimation limit,
        // then report through the full mitigation stack.
        OptimizerSpec spec = protocol.mitigated_optimizer;
        spec.seed = run_seed;
        const VqeRun run =
            minimize(ansatz, h, spec, EstimatorMode::ExactExpectation, &protocol.noise);
        out.energies.push_back(mitigated_energy(run.best_parameters, ansatz, h.physical,
                                                protocol.noise, protocol.plan, protocol.final_shots,
                                                derive_seed(run_seed, 9))
                                   .value);
        break;
      }
      default:
        throw std::logic_error("estimate_source_energies: unreachable");
    }
  }
  return out;
}

std::vector<ThermalPoint> thermal_sweep(const ThermalConfig& config, const PhononSystem& system,
                                        const ThermalCalibration& calibration,
                                        const SourceEnergies& energies) {
  if (energies.energies.empty()) throw std::invalid_argument("thermal_sweep: no energy estimates");
  const auto channel = splitting_channel(system);
  const int levels = 2;  // one-hot pipeline works at two retained levels per mode

  std::vector<ThermalPoint> points;
  points.reserve(config.temperatures.size());
  for (double temperature : config.temperatures) {
    ThermalPoint p;
    p.temperature = temperature;
    p.occupations = channel_occupations(system, channel, temperature, calibration.frequency_scale);
    p.heat_capacity = system_specific_heat(system.mode_frequencies, temperature,
                                           calibration.frequency_scale);
    const double gamma4 =
        four_phonon_gamma(system, levels, temperature, calibration.frequency_scale);

    std::vector<double> kappas;
    kappas.reserve(energies.energies.size());
    double gamma_mean = 0.0, tau_mean = 0.0;
    for (double energy : energies.energies) {
      const double element_sq = std::max(energy * energy, 1e-24);
      const double gamma3 = gamma_rate(p.occupations, element_sq);
      const double tau = lifetime(gamma3, gamma4);
      const double kappa = calibration.kappa_norm *
                           kappa_point(config.group_velocity, p.heat_capacity, tau, config.volume);
      kappas.push_back(kappa);
      gamma_mean += gamma3 + gamma4;
      tau_mean += tau;
    }
    const double n = double(kappas.size());
    p.gamma = gamma_mean / n;
    p.tau = tau_mean / n;
    double mean = 0.0;
    for (double k : kappas) mean += k;
    mean /= n;
    p.kappa = mean;
    if (kappas.size() > 1) {
      double var = 0.0;
      for (double k : kappas) var += (k - mean) * (k - mean);
      p.kappa_std = std::sqrt(var / (n - 1.0));
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace qphonon
