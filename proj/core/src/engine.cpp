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

#include "qphonon/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qphonon/rng.hpp"

namespace qphonon {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t dim_of(int width) { return std::size_t{1} << width; }

struct Gate2x2 {
  cdouble m[2][2];
};

struct Gate4x4 {
  cdouble m[4][4];
};

Gate2x2 as2(const Matrix& u) {
  Gate2x2 g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g.m[r][c] = u(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return g;
}

Gate4x4 as4(const Matrix& u) {
  Gate4x4 g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g.m[r][c] = u(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return g;
}

// In-place 2x2 update over amplitude pairs split by one bit.
void apply1(std::vector<cdouble>& amps, int width, int qubit, const Gate2x2& u) {
  const std::size_t dim = dim_of(width);
  const std::size_t stride = std::size_t{1} << (width - 1 - qubit);
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & stride) continue;
    const cdouble a0 = amps[base];
    const cdouble a1 = amps[base | stride];
    amps[base] = u.m[0][0] * a0 + u.m[0][1] * a1;
    amps[base | stride] = u.m[1][0] * a0 + u.m[1][1] * a1;
  }
}

// In-place 4x4 update; q0 supplies the high bit of the local index.
void apply2(std::vector<cdouble>& amps, int width, int q0, int q1, const Gate4x4& u) {
  const std::size_t dim = dim_of(width);
  const std::size_t s0 = std::size_t{1} << (width - 1 - q0);
  const std::size_t s1 = std::size_t{1} << (width - 1 - q1);
  for (std::size_t base = 0; base < dim; ++base) {
    if ((base & s0) || (base & s1)) continue;
    const std::size_t i00 = base, i01 = base | s1, i10 = base | s0, i11 = base | s0 | s1;
    const cdouble v[4] = {amps[i00], amps[i01], amps[i10], amps[i11]};
    for (int r = 0; r < 4; ++r) {
      const std::size_t idx = r == 0 ? i00 : r == 1 ? i01 : r == 2 ? i10 : i11;
      amps[idx] = u.m[r][0] * v[0] + u.m[r][1] * v[1] + u.m[r][2] * v[2] + u.m[r][3] * v[3];
    }
  }
}

void apply_bound_gate(std::vector<cdouble>& amps, int width, const Gate& g) {
  const Matrix u = gate_matrix(g);
  if (is_two_qubit(g.kind))
    apply2(amps, width, g.q0, g.q1, as4(u));
  else
    apply1(amps, width, g.q0, as2(u));
}

// rho <- U rho, acting on the row index.
void left_apply1(Matrix& rho, int width, int qubit, const Gate2x2& u) {
  const std::size_t dim = dim_of(width);
  const std::size_t stride = std::size_t{1} << (width - 1 - qubit);
  for (std::size_t r = 0; r < dim; ++r) {
    if (r & stride) continue;
    for (std::size_t c = 0; c < dim; ++c) {
      const cdouble a0 = rho(r, c);
      const cdouble a1 = rho(r | stride, c);
      rho(r, c) = u.m[0][0] * a0 + u.m[0][1] * a1;
      rho(r | stride, c) = u.m[1][0] * a0 + u.m[1][1] * a1;
    }
  }
}

// rho <- rho U†, acting on the column index. Rows are walked in the outer
// loop so the inner accesses stay within one row.
void right_apply1(Matrix& rho, int width, int qubit, const Gate2x2& u) {
  const std::size_t dim = dim_of(width);
  const std::size_t stride = std::size_t{1} << (width - 1 - qubit);
  Gate2x2 w;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) w.m[i][j] = std::conj(u.m[i][j]);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (c & stride) continue;
      const cdouble a0 = rho(r, c);
      const cdouble a1 = rho(r, c | stride);
      rho(r, c) = w.m[0][0] * a0 + w.m[0][1] * a1;
      rho(r, c | stride) = w.m[1][0] * a0 + w.m[1][1] * a1;
    }
  }
}

void left_apply2(Matrix& rho, int width, int q0, int q1, const Gate4x4& u) {
  const std::size_t dim = dim_of(width);
  const std::size_t s0 = std::size_t{1} << (width - 1 - q0);
  const std::size_t s1 = std::size_t{1} << (width - 1 - q1);
  for (std::size_t r = 0; r < dim; ++r) {
    if ((r & s0) || (r & s1)) continue;
    const std::size_t i00 = r, i01 = r | s1, i10 = r | s0, i11 = r | s0 | s1;
    for (std::size_t c = 0; c < dim; ++c) {
      const cdouble v[4] = {rho(i00, c), rho(i01, c), rho(i10, c), rho(i11, c)};
      rho(i00, c) = u.m[0][0] * v[0] + u.m[0][1] * v[1] + u.m[0][2] * v[2] + u.m[0][3] * v[3];
      rho(i01, c) = u.m[1][0] * v[0] + u.m[1][1] * v[1] + u.m[1][2] * v[2] + u.m[1][3] * v[3];
      rho(i10, c) = u.m[2][0] * v[0] + u.m[2][1] * v[1] + u.m[2][2] * v[2] + u.m[2][3] * v[3];
      rho(i11, c) = u.m[3][0] * v[0] + u.m[3][1] * v[1] + u.m[3][2] * v[2] + u.m[3][3] * v[3];
    }
  }
}

void right_apply2(Matrix& rho, int width, int q0, int q1, const Gate4x4& u) {
  const std::size_t dim = dim_of(width);
  const std::size_t s0 = std::size_t{1} << (width - 1 - q0);
  const std::size_t s1 = std::size_t{1} << (width - 1 - q1);
  Gate4x4 w;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w.m[i][j] = std::conj(u.m[i][j]);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((c & s0) || (c & s1)) continue;
      const std::size_t j00 = c, j01 = c | s1, j10 = c | s0, j11 = c | s0 | s1;
      const cdouble v[4] = {rho(r, j00), rho(r, j01), rho(r, j10), rho(r, j11)};
      rho(r, j00) = w.m[0][0] * v[0] + w.m[0][1] * v[1] + w.m[0][2] * v[2] + w.m[0][3] * v[3];
      rho(r, j01) = w.m[1][0] * v[0] + w.m[1][1] * v[1] + w.m[1][2] * v[2] + w.m[1][3] * v[3];
      rho(r, j10) = w.m[2][0] * v[0] + w.m[2][1] * v[1] + w.m[2][2] * v[2] + w.m[2][3] * v[3];
      rho(r, j11) = w.m[3][0] * v[0] + w.m[3][1] * v[1] + w.m[3][2] * v[2] + w.m[3][3] * v[3];
    }
  }
}

void apply_unitary_dm(Matrix& rho, int width, const Gate& g) {
  const Matrix u = gate_matrix(g);
  if (is_two_qubit(g.kind)) {
    const Gate4x4 u4 = as4(u);
    left_apply2(rho, width, g.q0, g.q1, u4);
    right_apply2(rho, width, g.q0, g.q1, u4);
  } else {
    const Gate2x2 u2 = as2(u);
    left_apply1(rho, width, g.q0, u2);
    right_apply1(rho, width, g.q0, u2);
  }
}

// Insert a zero bit at the given position (counting from bit 0).
std::size_t insert_bit(std::size_t x, int pos) {
  const std::size_t low = x & ((std::size_t{1} << pos) - 1);
  return ((x >> pos) << (pos + 1)) | low;
}

// rho <- (1-p) rho + p (I/4 over the pair) ⊗ tr_pair(rho)
void depolarize_pair(Matrix& rho, int width, int q0, int q1, double p) {
  if (p == 0.0) return;
  const int b0 = width - 1 - q0;
  const int b1 = width - 1 - q1;
  const int lo = std::min(b0, b1), hi = std::max(b0, b1);
  const std::size_t rest_dim = dim_of(width) >> 2;
  std::vector<std::size_t> expand(rest_dim);
  for (std::size_t r = 0; r < rest_dim; ++r) expand[r] = insert_bit(insert_bit(r, lo), hi);

  const std::size_t s0 = std::size_t{1} << b0;
  const std::size_t s1 = std::size_t{1} << b1;
  auto with_pair = [&](std::size_t base, int local) {
    return base | ((local & 2) ? s0 : 0) | ((local & 1) ? s1 : 0);
  };

  // Partial trace over the pair.
  Matrix traced(rest_dim, rest_dim);
  for (std::size_t r = 0; r < rest_dim; ++r)
    for (std::size_t c = 0; c < rest_dim; ++c) {
      cdouble acc{0.0, 0.0};
      for (int l = 0; l < 4; ++l) acc += rho(with_pair(expand[r], l), with_pair(expand[c], l));
      traced(r, c) = acc;
    }

  for (std::size_t r = 0; r < rest_dim; ++r)
    for (std::size_t c = 0; c < rest_dim; ++c)
      for (int lr = 0; lr < 4; ++lr)
        for (int lc = 0; lc < 4; ++lc) {
          const std::size_t i = with_pair(expand[r], lr);
          const std::size_t j = with_pair(expand[c], lc);
          cdouble v = (1.0 - p) * rho(i, j);
          if (lr == lc) v += (p / 4.0) * traced(r, c);
          rho(i, j) = v;
        }
}

// Amplitude damping (gamma) plus extra pure dephasing (off-diagonal factor f).
void idle_channel(Matrix& rho, int width, int qubit, double gamma, double dephase_factor) {
  const std::size_t dim = dim_of(width);
  const std::size_t stride = std::size_t{1} << (width - 1 - qubit);
  const double keep = std::sqrt(1.0 - gamma) * dephase_factor;
  for (std::size_t r = 0; r < dim; ++r) {
    if (r & stride) continue;
    for (std::size_t c = 0; c < dim; ++c) {
      if (c & stride) continue;
      const std::size_t r1 = r | stride, c1 = c | stride;
      const cdouble a = rho(r, c);
      const cdouble b = rho(r, c1);
      const cdouble cc = rho(r1, c);
      const cdouble d = rho(r1, c1);
      rho(r, c) = a + gamma * d;
      rho(r, c1) = keep * b;
      rho(r1, c) = keep * cc;
      rho(r1, c1) = (1.0 - gamma) * d;
    }
  }
}

struct TermMasks {
  std::size_t flip = 0;     // X and Y positions
  std::size_t sign = 0;     // Y and Z positions
  std::size_t support = 0;  // all non-identity positions
  int n_y = 0;
};

TermMasks masks_of(const PauliTerm& term) {
  TermMasks tm;
  const int width = term.width();
  for (int q = 0; q < width; ++q) {
    const std::size_t bit = std::size_t{1} << (width - 1 - q);
    switch (term.axes[static_cast<std::size_t>(q)]) {
      case Axis::I: break;
      case Axis::X: tm.flip |= bit; tm.support |= bit; break;
      case Axis::Y: tm.flip |= bit; tm.sign |= bit; tm.support |= bit; ++tm.n_y; break;
      case Axis::Z: tm.sign |= bit; tm.support |= bit; break;
    }
  }
  return tm;
}

cdouble i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double parity_sign(std::size_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

void require_observable(const PauliSum& obs, int width) {
  if (obs.width() != width) throw std::invalid_argument("expectation: width mismatch");
  if (!obs.is_hermitian())
    throw std::invalid_argument("expectation: observable has non-real coefficients (not Hermitian)");
}

std::vector<double> probabilities_of(const StateVector& s) {
  std::vector<double> p(s.amplitudes.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(s.amplitudes[i]);
  return p;
}

std::vector<double> probabilities_of(const DensityMatrix& s) {
  const std::size_t dim = dim_of(s.width);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < dim; ++i) p[i] = std::max(0.0, s.rho(i, i).real());
  return p;
}

Counts sample_from_probs(const std::vector<double>& probs, int width, int shots,
                         const std::vector<ReadoutConfusion>* readout, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample: shots must be at least 1");
  std::vector<double> cumulative(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cumulative[i] = acc;
  }
  if (acc <= 0.0) throw std::runtime_error("sample: state has no probability mass");

  Rng rng(seed);
  Counts counts;
  counts.shots = shots;
  std::string bits(static_cast<std::size_t>(width), '0');
  for (int s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= probs.size()) idx = probs.size() - 1;
    for (int q = 0; q < width; ++q) {
      bool b = (idx >> (width - 1 - q)) & 1;
      if (readout) {
        const auto& conf = (*readout)[static_cast<std::size_t>(q)];
        const double flip_p = b ? conf.p01 : conf.p10;
        if (flip_p > 0.0 && rng.uniform() < flip_p) b = !b;
      }
      bits[static_cast<std::size_t>(q)] = b ? '1' : '0';
    }
    ++counts.histogram[bits];
  }
  return counts;
}

std::size_t bits_to_index(const std::string& bits) {
  std::size_t idx = 0;
  for (char c : bits) idx = (idx << 1) | (c == '1' ? 1 : 0);
  return idx;
}

template <typename StateT>
StateT rotated_copy(const StateT& state, const Circuit& rotation);

template <>
StateVector rotated_copy(const StateVector& state, const Circuit& rotation) {
  StateVector out = state;
  for (const auto& g : rotation.gates) apply_bound_gate(out.amplitudes, out.width, g);
  return out;
}

template <>
DensityMatrix rotated_copy(const DensityMatrix& state, const Circuit& rotation) {
  DensityMatrix out = state;
  for (const auto& g : rotation.gates) apply_unitary_dm(out.rho, out.width, g);
  return out;
}

template <typename StateT>
double sampled_expectation_impl(const PauliSum& observable, const StateT& state, int shots,
                                const NoiseModel* noise, std::uint64_t seed, bool invert_readout,
                                int min_shots_per_term) {
  require_observable(observable, state.width);
  if (shots < 1) throw std::invalid_argument("sampled_expectation: shots must be at least 1");

  const std::vector<ReadoutConfusion>* readout =
      (noise && noise->has_readout()) ? &noise->readout : nullptr;

  double value = 0.0;
  double weight_sum = 0.0;
  std::vector<std::size_t> measured;
  for (std::size_t t = 0; t < observable.terms().size(); ++t) {
    const auto& term = observable.terms()[t];
    if (masks_of(term).support == 0) {
      value += term.coefficient.real();
    } else {
      measured.push_back(t);
      weight_sum += std::abs(term.coefficient);
    }
  }

  for (std::size_t k = 0; k < measured.size(); ++k) {
    const auto& term = observable.terms()[measured[k]];
    const TermMasks tm = masks_of(term);
    const double w = std::abs(term.coefficient);
    const int term_shots =
        std::max(min_shots_per_term, static_cast<int>(std::llround(double(shots) * w / weight_sum)));

    const Circuit rotation = basis_rotation_circuit(term);
    const StateT rotated = rotated_copy(state, rotation);
    const Counts counts =
        sample_bitstrings(rotated, term_shots, readout, derive_seed(seed, k + 1));

    double mean = 0.0;
    if (invert_readout && readout) {
      std::vector<double> probs(dim_of(state.width), 0.0);
      for (const auto& [bits, n] : counts.histogram)
        probs[bits_to_index(bits)] += double(n) / double(counts.shots);
      probs = invert_readout_distribution(std::move(probs), *readout);
      for (std::size_t i = 0; i < probs.size(); ++i)
        mean += probs[i] * parity_sign(i & tm.support);
    } else {
      for (const auto& [bits, n] : counts.histogram)
        mean += double(n) / double(counts.shots) * parity_sign(bits_to_index(bits) & tm.support);
    }
    value += term.coefficient.real() * mean;
  }
  return value;
}

}  // namespace

StateVector StateVector::zero_state(int width) {
  if (width < 0 || width > 24) throw std::invalid_argument("StateVector: unsupported width");
  StateVector s;
  s.width = width;
  s.amplitudes.assign(dim_of(width), cdouble{0.0, 0.0});
  s.amplitudes[0] = 1.0;
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

DensityMatrix DensityMatrix::zero_state(int width) {
  DensityMatrix d;
  d.width = width;
  d.rho = Matrix(dim_of(width), dim_of(width));
  d.rho(0, 0) = 1.0;
  return d;
}

DensityMatrix DensityMatrix::from_statevector(const StateVector& psi) {
  DensityMatrix d;
  d.width = psi.width;
  const std::size_t dim = psi.amplitudes.size();
  d.rho = Matrix(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) d.rho(r, c) = psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
  return d;
}

double DensityMatrix::trace_real() const {
  cdouble t{0.0, 0.0};
  for (std::size_t i = 0; i < rho.rows(); ++i) t += rho(i, i);
  return t.real();
}

double DensityMatrix::purity() const {
  double acc = 0.0;
  for (std::size_t r = 0; r < rho.rows(); ++r)
    for (std::size_t c = 0; c < rho.cols(); ++c) acc += std::norm(rho(r, c));
  return acc;
}

void NoiseModel::validate(int width) const {
  if (depolarizing_p < 0.0 || depolarizing_p > 1.0)
    throw std::invalid_argument("NoiseModel: depolarizing probability out of [0,1]");
  if (!readout.empty() && static_cast<int>(readout.size()) != width)
    throw std::invalid_argument("NoiseModel: readout table must cover every qubit");
  for (const auto& r : readout) {
    if (r.p01 < 0.0 || r.p01 >= 1.0 || r.p10 < 0.0 || r.p10 >= 1.0)
      throw std::invalid_argument("NoiseModel: readout probabilities out of range");
  }
  if (t1_us.has_value() != t2_us.has_value())
    throw std::invalid_argument("NoiseModel: T1 and T2 must be given together");
  if (t1_us) {
    if (*t1_us <= 0.0 || *t2_us <= 0.0) throw std::invalid_argument("NoiseModel: T1/T2 must be positive");
    if (*t2_us > 2.0 * *t1_us + 1e-12)
      throw std::invalid_argument("NoiseModel: T2 cannot exceed 2*T1");
  }
  if (idle_suppression < 0.0 || idle_suppression > 1.0)
    throw std::invalid_argument("NoiseModel: idle suppression out of [0,1]");
  if (gate_time_1q_ns < 0.0 || gate_time_2q_ns < 0.0)
    throw std::invalid_argument("NoiseModel: negative gate duration");
}

bool NoiseModel::has_idle() const { return t1_us && t2_us && idle_suppression < 1.0; }

NoiseModel DevicePreset::noise_model(int width, bool include_idle) const {
  NoiseModel n;
  n.depolarizing_p = ecr_error;
  n.readout.assign(static_cast<std::size_t>(width), ReadoutConfusion{readout_p01, readout_p10});
  if (include_idle) {
    n.t1_us = t1_us;
    n.t2_us = t2_us;
  }
  return n;
}

const DevicePreset& ibm_brisbane() {
  static const DevicePreset preset{
      "ibm_brisbane",
      0.008471,   // ECR gate error
      0.002457,   // Pauli-X gate error (single-qubit gates stay ideal in the channel model)
      0.0148,     // P(0|1)
      0.0108,     // P(1|0)
      224.67,     // T1 (us)
      140.09,     // T2 (us)
      2.1,        // EPLG (%)
      4.906,      // qubit frequency (GHz)
  };
  return preset;
}

const DevicePreset& device_preset(const std::string& name) {
  if (name == "ibm_brisbane") return ibm_brisbane();
  throw std::invalid_argument("device_preset: unknown preset '" + name + "'");
}

void apply_gate(StateVector& state, const Gate& g) {
  if (!g.bound()) throw std::invalid_argument("apply_gate: unbound parameter");
  apply_bound_gate(state.amplitudes, state.width, g);
}

StateVector run_statevector(const Circuit& circuit) {
  if (!circuit.fully_bound()) throw std::invalid_argument("run_statevector: circuit has unbound parameters");
  StateVector s = StateVector::zero_state(circuit.width);
  for (const auto& g : circuit.gates) apply_bound_gate(s.amplitudes, s.width, g);
  if (circuit.global_phase != 0.0) {
    const cdouble phase = std::exp(cdouble{0.0, circuit.global_phase});
    for (auto& a : s.amplitudes) a *= phase;
  }
  return s;
}

Matrix circuit_unitary(const Circuit& circuit) {
  if (!circuit.fully_bound()) throw std::invalid_argument("circuit_unitary: circuit has unbound parameters");
  if (circuit.width > 10) throw std::invalid_argument("circuit_unitary: width above the 10-qubit guard");
  const std::size_t dim = dim_of(circuit.width);
  const cdouble phase = std::exp(cdouble{0.0, circuit.global_phase});
  Matrix u(dim, dim);
  std::vector<cdouble> col(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::fill(col.begin(), col.end(), cdouble{0.0, 0.0});
    col[j] = 1.0;
    for (const auto& g : circuit.gates) apply_bound_gate(col, circuit.width, g);
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = phase * col[i];
  }
  return u;
}

DensityMatrix run_density(const Circuit& circuit, const NoiseModel& noise) {
  if (circuit.width > 10) throw std::invalid_argument("run_density: width above the 10-qubit cap");
  if (!circuit.fully_bound()) throw std::invalid_argument("run_density: circuit has unbound parameters");
  noise.validate(circuit.width);

  DensityMatrix state = DensityMatrix::zero_state(circuit.width);
  const bool idle = noise.has_idle();
  double gamma_1q = 0.0, gamma_2q = 0.0, dephase_1q = 1.0, dephase_2q = 1.0;
  if (idle) {
    const double t1 = *noise.t1_us;
    const double t2 = *noise.t2_us;
    const double pure_rate = std::max(0.0, 1.0 / t2 - 1.0 / (2.0 * t1));
    const double scale = (1.0 - noise.idle_suppression) * 1e-3;  // ns -> us
    const double dt1 = noise.gate_time_1q_ns * scale;
    const double dt2 = noise.gate_time_2q_ns * scale;
    gamma_1q = 1.0 - std::exp(-dt1 / t1);
    gamma_2q = 1.0 - std::exp(-dt2 / t1);
    dephase_1q = std::exp(-dt1 * pure_rate);
    dephase_2q = std::exp(-dt2 * pure_rate);
  }

  for (const auto& g : circuit.gates) {
    apply_unitary_dm(state.rho, state.width, g);
    const bool two = is_two_qubit(g.kind);
    if (two && noise.depolarizing_p > 0.0)
      depolarize_pair(state.rho, state.width, g.q0, g.q1, noise.depolarizing_p);
    if (idle && !g.merged) {
      const double gamma = two ? gamma_2q : gamma_1q;
      const double dephase = two ? dephase_2q : dephase_1q;
      for (int q = 0; q < state.width; ++q) {
        if (q == g.q0 || (two && q == g.q1)) continue;
        idle_channel(state.rho, state.width, q, gamma, dephase);
      }
    }
  }
  return state;
}

double expectation(const StateVector& state, const PauliSum& observable) {
  require_observable(observable, state.width);
  cdouble acc{0.0, 0.0};
  for (const auto& term : observable.terms()) {
    const TermMasks tm = masks_of(term);
    cdouble val{0.0, 0.0};
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
      const cdouble phase = i_power(tm.n_y) * parity_sign(i & tm.sign);
      val += std::conj(state.amplitudes[i ^ tm.flip]) * phase * state.amplitudes[i];
    }
    acc += term.coefficient * val;
  }
  return acc.real();
}

double expectation(const DensityMatrix& state, const PauliSum& observable) {
  require_observable(observable, state.width);
  cdouble acc{0.0, 0.0};
  for (const auto& term : observable.terms()) {
    const TermMasks tm = masks_of(term);
    cdouble val{0.0, 0.0};
    const std::size_t dim = dim_of(state.width);
    for (std::size_t i = 0; i < dim; ++i) {
      const cdouble phase = i_power(tm.n_y) * parity_sign(i & tm.sign);
      val += state.rho(i, i ^ tm.flip) * phase;
    }
    acc += term.coefficient * val;
  }
  return acc.real();
}

Counts sample_bitstrings(const StateVector& state, int shots,
                         const std::vector<ReadoutConfusion>* readout, std::uint64_t seed) {
  return sample_from_probs(probabilities_of(state), state.width, shots, readout, seed);
}

Counts sample_bitstrings(const DensityMatrix& state, int shots,
                         const std::vector<ReadoutConfusion>* readout, std::uint64_t seed) {
  return sample_from_probs(probabilities_of(state), state.width, shots, readout, seed);
}

Circuit basis_rotation_circuit(const PauliTerm& term) {
  Circuit c(term.width());
  for (int q = 0; q < term.width(); ++q) {
    switch (term.axes[static_cast<std::size_t>(q)]) {
      case Axis::X: c.rotation(GateKind::RY, q, -kPi / 2.0); break;
      case Axis::Y: c.rotation(GateKind::RX, q, kPi / 2.0); break;
      default: break;
    }
  }
  return c;
}

std::vector<double> invert_readout_distribution(std::vector<double> probs,
                                                const std::vector<ReadoutConfusion>& readout) {
  const int width = static_cast<int>(readout.size());
  if (probs.size() != dim_of(width))
    throw std::invalid_argument("invert_readout_distribution: size mismatch");
  for (int q = 0; q < width; ++q) {
    const auto& conf = readout[static_cast<std::size_t>(q)];
    const double det = 1.0 - conf.p01 - conf.p10;
    if (det <= 1e-9)
      throw std::invalid_argument("invert_readout_distribution: confusion matrix is singular");
    const double inv00 = (1.0 - conf.p01) / det;
    const double inv01 = -conf.p01 / det;
    const double inv10 = -conf.p10 / det;
    const double inv11 = (1.0 - conf.p10) / det;
    const std::size_t stride = std::size_t{1} << (width - 1 - q);
    for (std::size_t base = 0; base < probs.size(); ++base) {
      if (base & stride) continue;
      const double v0 = probs[base];
      const double v1 = probs[base | stride];
      probs[base] = inv00 * v0 + inv01 * v1;
      probs[base | stride] = inv10 * v0 + inv11 * v1;
    }
  }
  return probs;
}

double sampled_expectation(const PauliSum& observable, const StateVector& state, int shots,
                           const NoiseModel* noise, std::uint64_t seed, bool invert_readout,
                           int min_shots_per_term) {
  return sampled_expectation_impl(observable, state, shots, noise, seed, invert_readout,
                                  min_shots_per_term);
}

double sampled_expectation(const PauliSum& observable, const DensityMatrix& state, int shots,
                           const NoiseModel* noise, std::uint64_t seed, bool invert_readout,
                           int min_shots_per_term) {
  return sampled_expectation_impl(observable, state, shots, noise, seed, invert_readout,
                                  min_shots_per_term);
}

double depolarizing_gate_fidelity(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing_gate_fidelity: p out of [0,1]");
  return 1.0 - 15.0 * p / 16.0;
}

double depolarizing_p_for_fidelity(double fidelity) {
  if (fidelity < 1.0 / 16.0 || fidelity > 1.0)
    throw std::invalid_argument("depolarizing_p_for_fidelity: fidelity out of range");
  return 16.0 * (1.0 - fidelity) / 15.0;
}

}  // namespace qphonon
