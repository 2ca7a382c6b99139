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

#include "qphonon/mitigation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qphonon/rng.hpp"

namespace qphonon {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t bits_to_index(const std::string& bits) {
  std::size_t idx = 0;
  for (char c : bits) idx = (idx << 1) | (c == '1' ? 1 : 0);
  return idx;
}

std::string index_to_bits(std::size_t idx, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int q = 0; q < width; ++q)
    if ((idx >> (width - 1 - q)) & 1) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

// Pauli matrices indexed I, X, Y, Z for the twirl tables.
Matrix pauli_matrix(int p) {
  Matrix m(2, 2);
  switch (p) {
    case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = {0.0, -1.0}; m(1, 0) = {0.0, 1.0}; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: throw std::logic_error("pauli_matrix: bad index");
  }
  return m;
}

struct TwirlEntry {
  int post_a = 0;
  int post_b = 0;
};

// For each pre-gate Pauli pair (a ⊗ b), the Pauli pair equal to
// G (a ⊗ b) G† up to sign. Built numerically; throws for non-Clifford kinds.
std::array<TwirlEntry, 16> build_twirl_table(GateKind kind) {
  const Matrix g = gate_matrix(Gate{kind, 0, 1, 0.0, -1});
  const Matrix gd = g.adjoint();
  std::array<TwirlEntry, 16> table{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Matrix conj = g * kron(pauli_matrix(a), pauli_matrix(b)) * gd;
      bool found = false;
      for (int qa = 0; qa < 4 && !found; ++qa) {
        for (int qb = 0; qb < 4 && !found; ++qb) {
          const Matrix target = kron(pauli_matrix(qa), pauli_matrix(qb));
          for (double sign : {1.0, -1.0}) {
            Matrix scaled = target;
            scaled *= cdouble{sign, 0.0};
            if (frobenius_distance(conj, scaled) < 1e-9) {
              table[static_cast<std::size_t>(a * 4 + b)] = {qa, qb};
              found = true;
              break;
            }
          }
        }
      }
      if (!found)
        throw std::invalid_argument(std::string("pauli_twirl: no twirling table for gate ") +
                                    gate_name(kind));
    }
  }
  return table;
}

const std::array<TwirlEntry, 16>& twirl_table(GateKind kind) {
  static const auto cnot = build_twirl_table(GateKind::CNOT);
  static const auto cz = build_twirl_table(GateKind::CZ);
  static const auto ecr = build_twirl_table(GateKind::ECR);
  switch (kind) {
    case GateKind::CNOT: return cnot;
    case GateKind::CZ: return cz;
    case GateKind::ECR: return ecr;
    default:
      throw std::invalid_argument(std::string("pauli_twirl: no twirling table for gate ") +
                                  gate_name(kind));
  }
}

// Pauli dressing as native gates; Y and Z pick up only a global phase.
// Dressings merge into neighboring rotations at compile time, so they are
// marked duration-free for the idle schedule.
void append_pauli(Circuit& c, int qubit, int p) {
  Gate g;
  g.q0 = qubit;
  g.merged = true;
  switch (p) {
    case 0: return;
    case 1: g.kind = GateKind::X; break;
    case 2: g.kind = GateKind::RY; g.angle = kPi; break;
    case 3: g.kind = GateKind::RZ; g.angle = kPi; break;
    default: throw std::logic_error("append_pauli: bad index");
  }
  c.append(g);
}

}  // namespace

const char* extrapolator_name(Extrapolator e) {
  switch (e) {
    case Extrapolator::Linear: return "linear";
    case Extrapolator::Quadratic: return "quadratic";
    case Extrapolator::Richardson: return "richardson";
  }
  throw std::invalid_argument("extrapolator_name: bad kind");
}

Extrapolator extrapolator_from_name(const std::string& name) {
  if (name == "linear") return Extrapolator::Linear;
  if (name == "quadratic") return Extrapolator::Quadratic;
  if (name == "richardson") return Extrapolator::Richardson;
  throw std::invalid_argument("extrapolator_from_name: unknown extrapolator '" + name + "'");
}

void ZneSpec::validate() const {
  if (scale_factors.size() < 2)
    throw std::invalid_argument("ZneSpec: need at least two scale factors");
  for (std::size_t i = 0; i < scale_factors.size(); ++i) {
    if (scale_factors[i] < 1 || scale_factors[i] % 2 == 0)
      throw std::invalid_argument("ZneSpec: scale factors must be odd and positive");
    for (std::size_t j = i + 1; j < scale_factors.size(); ++j)
      if (scale_factors[i] == scale_factors[j])
        throw std::invalid_argument("ZneSpec: scale factors must be distinct");
  }
}

void MitigationPlan::validate() const {
  if (zne) zne_spec.validate();
  if (twirling && twirl_samples < 1)
    throw std::invalid_argument("MitigationPlan: twirl_samples must be at least 1");
  if (dd_suppression < 0.0 || dd_suppression > 1.0)
    throw std::invalid_argument("MitigationPlan: dd_suppression out of [0,1]");
}

MitigationPlan MitigationPlan::all_on() {
  MitigationPlan plan;
  plan.readout = plan.zne = plan.twirling = plan.dynamical_decoupling = true;
  return plan;
}

double QuasiDistribution::total() const {
  double acc = 0.0;
  for (const auto& [bits, p] : probabilities) acc += p;
  return acc;
}

double QuasiDistribution::z_parity_expectation(std::span<const int> qubits, int width) const {
  double acc = 0.0;
  for (const auto& [bits, p] : probabilities) {
    int ones = 0;
    for (int q : qubits) {
      if (q < 0 || q >= width) throw std::invalid_argument("z_parity_expectation: qubit out of range");
      if (bits[static_cast<std::size_t>(q)] == '1') ++ones;
    }
    acc += p * ((ones & 1) ? -1.0 : 1.0);
  }
  return acc;
}

QuasiDistribution QuasiDistribution::clipped() const {
  QuasiDistribution out;
  double total = 0.0;
  for (const auto& [bits, p] : probabilities) {
    if (p > 0.0) {
      out.probabilities[bits] = p;
      total += p;
    }
  }
  if (total > 0.0)
    for (auto& [bits, p] : out.probabilities) p /= total;
  return out;
}

QuasiDistribution readout_mitigate(const Counts& counts,
                                   const std::vector<ReadoutConfusion>& confusion) {
  if (counts.shots <= 0) throw std::invalid_argument("readout_mitigate: empty counts");
  const int width = static_cast<int>(confusion.size());
  std::vector<double> probs(std::size_t{1} << width, 0.0);
  for (const auto& [bits, n] : counts.histogram) {
    if (static_cast<int>(bits.size()) != width)
      throw std::invalid_argument("readout_mitigate: bitstring width mismatch");
    probs[bits_to_index(bits)] += double(n) / double(counts.shots);
  }
  probs = invert_readout_distribution(std::move(probs), confusion);
  QuasiDistribution out;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] != 0.0) out.probabilities[index_to_bits(i, width)] = probs[i];
  return out;
}

Circuit fold_gates(const Circuit& circuit, int scale) {
  if (scale < 1 || scale % 2 == 0)
    throw std::invalid_argument("fold_gates: scale must be an odd positive integer");
  if (!circuit.fully_bound()) throw std::invalid_argument("fold_gates: circuit has unbound parameters");
  Circuit out(circuit.width);
  out.global_phase = circuit.global_phase;
  out.n_parameters = circuit.n_parameters;
  for (const auto& g : circuit.gates) {
    out.append(g);
    if (!is_two_qubit(g.kind)) continue;
    // CNOT, CZ and ECR are involutions, so G† = G.
    for (int r = 0; r < (scale - 1) / 2; ++r) {
      out.append(g);
      out.append(g);
    }
  }
  return out;
}

double zne_extrapolate(std::span<const std::pair<double, double>> points, const ZneSpec& spec) {
  if (points.size() < 2) throw std::invalid_argument("zne_extrapolate: need at least two points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& [s, v] : points) {
    xs.push_back(s);
    ys.push_back(v);
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) throw std::invalid_argument("zne_extrapolate: duplicate scale points");

  switch (spec.extrapolator) {
    case Extrapolator::Linear: return polyfit(xs, ys, 1)[0];
    case Extrapolator::Quadratic: return polyfit(xs, ys, 2)[0];
    case Extrapolator::Richardson: return lagrange_at_zero(xs, ys);
  }
  throw std::invalid_argument("zne_extrapolate: bad extrapolator");
}

Circuit pauli_twirl(const Circuit& circuit, std::uint64_t seed) {
  if (!circuit.fully_bound()) throw std::invalid_argument("pauli_twirl: circuit has unbound parameters");
  Rng rng(seed);
  Circuit out(circuit.width);
  out.global_phase = circuit.global_phase;
  out.n_parameters = circuit.n_parameters;
  for (const auto& g : circuit.gates) {
    if (!is_two_qubit(g.kind)) {
      out.append(g);
      continue;
    }
    const auto& table = twirl_table(g.kind);
    const int a = rng.uniform_int(4);
    const int b = rng.uniform_int(4);
    const TwirlEntry post = table[static_cast<std::size_t>(a * 4 + b)];
    append_pauli(out, g.q0, a);
    append_pauli(out, g.q1, b);
    out.append(g);
    append_pauli(out, g.q0, post.post_a);
    append_pauli(out, g.q1, post.post_b);
  }
  return out;
}

namespace {

double estimate_energy(const Circuit& bound, const PauliSum& observable, const NoiseModel& noise,
                       bool invert_readout, int shots, std::uint64_t seed) {
  const DensityMatrix dm = run_density(bound, noise);
  if (shots <= 0) return expectation(dm, observable);
  return sampled_expectation(observable, dm, shots, &noise, seed, invert_readout);
}

}  // namespace

MitigatedEnergy mitigated_energy(std::span<const double> params, const Circuit& ansatz,
                                 const PauliSum& observable, const NoiseModel& noise,
                                 const MitigationPlan& plan, int shots, std::uint64_t seed) {
  plan.validate();
  NoiseModel effective = noise;
  if (plan.dynamical_decoupling)
    effective.idle_suppression = std::max(effective.idle_suppression, plan.dd_suppression);

  const Circuit bound = bind_parameters(ansatz, params);

  std::vector<int> scales = plan.zne ? plan.zne_spec.scale_factors : std::vector<int>{1};
  const int members = plan.twirling ? plan.twirl_samples : (shots > 0 ? 8 : 1);
  const int per_estimate =
      shots > 0
          ? std::max(256, shots / (members * static_cast<int>(scales.size())))
          : 0;

  std::vector<double> ensemble;
  ensemble.reserve(static_cast<std::size_t>(members));
  for (int m = 0; m < members; ++m) {
    const Circuit member_circuit =
        plan.twirling ? pauli_twirl(bound, derive_seed(seed, 1000 + std::uint64_t(m))) : bound;
    std::vector<std::pair<double, double>> points;
    points.reserve(scales.size());
    for (std::size_t si = 0; si < scales.size(); ++si) {
      const Circuit folded = scales[si] == 1 ? member_circuit : fold_gates(member_circuit, scales[si]);
      const double value =
          estimate_energy(folded, observable, effective, plan.readout, per_estimate,
                          derive_seed(seed, 17 + std::uint64_t(m) * 31 + si));
      points.emplace_back(double(scales[si]), value);
    }
    ensemble.push_back(plan.zne ? zne_extrapolate(points, plan.zne_spec) : points.front().second);
  }

  MitigatedEnergy result;
  double mean = 0.0;
  for (double v : ensemble) mean += v;
  mean /= double(ensemble.size());
  result.value = mean;
  if (ensemble.size() > 1) {
    double var = 0.0;
    for (double v : ensemble) var += (v - mean) * (v - mean);
    var /= double(ensemble.size() - 1);
    result.std_error = std::sqrt(var / double(ensemble.size()));
  }
  return result;
}

MitigatedEnergy mitigated_energy(std::span<const double> params, const Circuit& ansatz,
                                 const MappedHamiltonian& h, const NoiseModel& noise,
                                 const MitigationPlan& plan, int shots, std::uint64_t seed) {
  return mitigated_energy(params, ansatz, h.pauli, noise, plan, shots, seed);
}

}  // namespace qphonon
