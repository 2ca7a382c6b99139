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

#include "qphonon/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qphonon {

void PhononSystem::validate() const {
  if (n_phonons < 1) throw std::invalid_argument("PhononSystem: need at least one phonon");
  if (static_cast<int>(mode_frequencies.size()) != n_phonons)
    throw std::invalid_argument("PhononSystem: one frequency per phonon required");
  for (double w : mode_frequencies)
    if (!(w > 0.0)) throw std::invalid_argument("PhononSystem: frequencies must be positive");
  auto check_modes = [&](const auto& table) {
    for (const auto& [modes, phi] : table) {
      (void)phi;
      for (int m : modes)
        if (m < 0 || m >= n_phonons) throw std::invalid_argument("PhononSystem: coupling mode out of range");
      if (!std::is_sorted(modes.begin(), modes.end()))
        throw std::invalid_argument("PhononSystem: coupling keys must be sorted");
    }
  };
  check_modes(coupling3);
  check_modes(coupling4);
}

namespace {

template <std::size_t N>
bool signed_balance(const std::array<double, N>& omega, double tol) {
  // Try every +/- signing except the two all-equal ones.
  for (unsigned mask = 1; mask + 1 < (1u << N); ++mask) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) acc += (mask & (1u << i)) ? -omega[i] : omega[i];
    if (std::abs(acc) <= tol) return true;
  }
  return false;
}

}  // namespace

bool PhononSystem::conserves(const std::array<int, 3>& modes) const {
  std::array<double, 3> w{};
  for (int i = 0; i < 3; ++i) w[static_cast<std::size_t>(i)] = mode_frequencies.at(static_cast<std::size_t>(modes[static_cast<std::size_t>(i)]));
  return signed_balance(w, conservation_tol);
}

bool PhononSystem::conserves4(const std::array<int, 4>& modes) const {
  std::array<double, 4> w{};
  for (int i = 0; i < 4; ++i) w[static_cast<std::size_t>(i)] = mode_frequencies.at(static_cast<std::size_t>(modes[static_cast<std::size_t>(i)]));
  return signed_balance(w, conservation_tol);
}

double PhononSystem::phi3(const std::array<int, 3>& modes) const {
  auto key = modes;
  std::sort(key.begin(), key.end());
  auto it = coupling3.find(key);
  return it == coupling3.end() ? 0.0 : it->second;
}

double PhononSystem::phi4(const std::array<int, 4>& modes) const {
  auto key = modes;
  std::sort(key.begin(), key.end());
  auto it = coupling4.find(key);
  return it == coupling4.end() ? 0.0 : it->second;
}

PhononSystem PhononSystem::toy_model(double phi) {
  PhononSystem s;
  s.n_phonons = 3;
  s.mode_frequencies = {1.0, 0.5, 0.5};
  s.coupling3[{0, 1, 2}] = phi;
  s.normalizer_g = 1.0;
  return s;
}

double coupling_constant(int order, double phi, std::span<const double> frequencies, double g,
                         bool conserved) {
  if (order != 3 && order != 4) throw std::invalid_argument("coupling_constant: order must be 3 or 4");
  if (static_cast<int>(frequencies.size()) != order)
    throw std::invalid_argument("coupling_constant: order does not match frequency count");
  double prod = 1.0;
  for (double w : frequencies) {
    if (!(w > 0.0)) throw std::invalid_argument("coupling_constant: frequencies must be positive");
    prod *= w;
  }
  if (!conserved) return 0.0;
  return g * phi / std::sqrt(prod);
}

namespace {

template <std::size_t N>
std::vector<LadderProduct> expand_displacement_product(const std::array<int, N>& modes, double weight) {
  std::vector<LadderProduct> out;
  if (weight == 0.0) return out;
  out.reserve(std::size_t{1} << N);
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    LadderProduct p;
    p.coefficient = {weight, 0.0};
    for (std::size_t i = 0; i < N; ++i) {
      const int mode = modes[i];
      p.factors.push_back((mask & (1u << i)) ? annihilate(mode) : create(mode));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<LadderProduct> build_h3(const PhononSystem& system) {
  system.validate();
  std::vector<LadderProduct> terms;
  for (const auto& [modes, phi] : system.coupling3) {
    if (phi == 0.0 || !system.conserves(modes)) continue;
    const std::array<double, 3> w = {system.mode_frequencies[static_cast<std::size_t>(modes[0])],
                                     system.mode_frequencies[static_cast<std::size_t>(modes[1])],
                                     system.mode_frequencies[static_cast<std::size_t>(modes[2])]};
    const double h = coupling_constant(3, phi, w, system.normalizer_g, true);
    auto expanded = expand_displacement_product(modes, h);
    terms.insert(terms.end(), expanded.begin(), expanded.end());
  }
  return terms;
}

std::vector<LadderProduct> build_h4(const PhononSystem& system) {
  system.validate();
  std::vector<LadderProduct> terms;
  for (const auto& [modes, phi] : system.coupling4) {
    if (phi == 0.0 || !system.conserves4(modes)) continue;
    const std::array<double, 4> w = {system.mode_frequencies[static_cast<std::size_t>(modes[0])],
                                     system.mode_frequencies[static_cast<std::size_t>(modes[1])],
                                     system.mode_frequencies[static_cast<std::size_t>(modes[2])],
                                     system.mode_frequencies[static_cast<std::size_t>(modes[3])]};
    const double h = coupling_constant(4, phi, w, system.normalizer_g, true);
    auto expanded = expand_displacement_product(modes, h);
    terms.insert(terms.end(), expanded.begin(), expanded.end());
  }
  return terms;
}

namespace {

// Factors stably sorted by mode; valid as a canonical form because factors
// on distinct modes commute.
std::string canonical_key(const LadderProduct& p) {
  auto factors = p.factors;
  std::stable_sort(factors.begin(), factors.end(),
                   [](const LadderOp& a, const LadderOp& b) { return a.mode < b.mode; });
  std::ostringstream os;
  for (const auto& f : factors) os << (f.kind == LadderKind::Create ? 'c' : 'a') << f.mode << ';';
  return os.str();
}

}  // namespace

bool hermitian_closed(const std::vector<LadderProduct>& terms) {
  std::vector<std::pair<std::string, cdouble>> pool;
  pool.reserve(terms.size());
  for (const auto& t : terms) pool.emplace_back(canonical_key(t), t.coefficient);
  std::vector<bool> used(pool.size(), false);
  for (const auto& t : terms) {
    const auto adj = t.adjoint();
    const std::string key = canonical_key(adj);
    bool found = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i] || pool[i].first != key) continue;
      if (std::abs(pool[i].second - adj.coefficient) > 1e-12) continue;
      used[i] = true;
      found = true;
      break;
    }
    if (!found) return false;
  }
  return true;
}

PauliSum penalty_hamiltonian(const EncodingLayout& layout, double weight) {
  if (weight < 0.0) throw std::invalid_argument("penalty_hamiltonian: negative weight");
  const int width = layout.width();
  PauliSum total(width);
  for (int m = 0; m < layout.n_phonons; ++m) {
    PauliSum defect(width);
    defect.add_identity({-1.0, 0.0});
    for (int n = 0; n < layout.levels_per_phonon; ++n)
      defect += occupancy_projector(layout.qubit_index(m, n), width);
    total += defect * defect;
  }
  total *= cdouble{weight, 0.0};
  return total.simplified();
}

double default_penalty_weight(const PauliSum& physical) { return 10.0 * physical.coefficient_l1(); }

MappedHamiltonian map_hamiltonian(const std::vector<LadderProduct>& terms,
                                  const EncodingLayout& layout, double penalty_weight) {
  if (penalty_weight < 0.0) throw std::invalid_argument("map_hamiltonian: negative penalty weight");
  const int width = layout.width();
  PauliSum physical(width);
  for (const auto& term : terms) {
    PauliSum encoded(width);
    encoded.add_identity(term.coefficient);
    for (const auto& f : term.factors) encoded = encoded * encode_ladder(f, layout);
    physical += encoded;
  }
  physical = physical.simplified();
  if (!physical.is_hermitian())
    throw std::runtime_error("map_hamiltonian: encoded interaction is not Hermitian; term list is unbalanced");

  PauliSum full = physical;
  if (penalty_weight > 0.0) full += penalty_hamiltonian(layout, penalty_weight);
  return MappedHamiltonian{full.simplified(), physical, layout, penalty_weight};
}

double exact_ground_energy(const PauliSum& sum) {
  if (sum.empty()) return 0.0;
  return min_hermitian_eigenvalue(sum.to_matrix());
}

double exact_ground_energy(const MappedHamiltonian& h) { return exact_ground_energy(h.pauli); }

std::vector<std::size_t> onehot_basis_states(const EncodingLayout& layout) {
  const int width = layout.width();
  const auto space = layout.fock_space();
  const std::size_t dim = space.dimension();
  std::vector<std::size_t> out;
  out.reserve(dim);
  for (std::size_t fock = 0; fock < dim; ++fock) {
    std::size_t idx = 0;
    std::size_t rem = fock;
    for (int m = layout.n_phonons - 1; m >= 0; --m) {
      const int level = static_cast<int>(rem % static_cast<std::size_t>(layout.levels_per_phonon));
      rem /= static_cast<std::size_t>(layout.levels_per_phonon);
      const int qubit = layout.qubit_index(m, level);
      idx |= std::size_t{1} << (width - 1 - qubit);
    }
    out.push_back(idx);
  }
  return out;
}

Matrix restrict_to_onehot(const Matrix& m, const EncodingLayout& layout) {
  const auto basis = onehot_basis_states(layout);
  Matrix out(basis.size(), basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < basis.size(); ++c) out(r, c) = m(basis[r], basis[c]);
  return out;
}

double onehot_restricted_ground_energy(const PauliSum& sum, const EncodingLayout& layout) {
  return min_hermitian_eigenvalue(restrict_to_onehot(sum.to_matrix(), layout));
}

double matrix_element_splitting(const std::array<double, 3>& occupations,
                                double structural_element_sq) {
  for (double n : occupations)
    if (n < 0.0) throw std::invalid_argument("matrix_element_splitting: negative occupation");
  if (structural_element_sq < 0.0)
    throw std::invalid_argument("matrix_element_splitting: negative squared element");
  return occupations[0] * (1.0 + occupations[1]) * (1.0 + occupations[2]) * structural_element_sq;
}

double structural_element_sq_exact(const PhononSystem& system, int levels_per_phonon) {
  system.validate();
  const FockSpace space(system.n_phonons, levels_per_phonon);

  // First admitted triple, split so the highest-frequency member decays.
  for (const auto& [modes, phi] : system.coupling3) {
    (void)phi;
    if (!system.conserves(modes)) continue;
    std::array<int, 3> perm = modes;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      return system.mode_frequencies[static_cast<std::size_t>(a)] >
             system.mode_frequencies[static_cast<std::size_t>(b)];
    });
    const int lam = perm[0], lam1 = perm[1], lam2 = perm[2];

    const auto h3 = build_h3(system);
    Matrix h(space.dimension(), space.dimension());
    for (const auto& t : h3) h += embed(t, space);

    std::vector<cdouble> vac(space.dimension(), cdouble{0.0, 0.0});
    vac[0] = 1.0;
    auto normalize = [](std::vector<cdouble>& v) {
      double norm = 0.0;
      for (const auto& x : v) norm += std::norm(x);
      norm = std::sqrt(norm);
      if (norm == 0.0) throw std::runtime_error("structural element: state vanished");
      for (auto& x : v) x /= norm;
    };

    auto initial = embed(LadderProduct{{1.0, 0.0}, {create(lam)}}, space).apply(vac);
    normalize(initial);
    auto final_state = embed(LadderProduct{{1.0, 0.0}, {create(lam1), create(lam2)}}, space).apply(vac);
    normalize(final_state);

    auto h_initial = h.apply(initial);
    cdouble amp{0.0, 0.0};
    for (std::size_t i = 0; i < h_initial.size(); ++i) amp += std::conj(final_state[i]) * h_initial[i];
    return std::norm(amp);
  }
  return 0.0;
}

cdouble h4_wick_element(const LadderProduct& term, const FockSpace& space) {
  if (term.factors.size() != 4)
    throw std::invalid_argument("h4_wick_element: expected exactly four ladder operators");
  const std::array<LadderOp, 4> ops = {term.factors[0], term.factors[1], term.factors[2],
                                       term.factors[3]};
  return term.coefficient * wick_expectation(ops, space);
}

}  // namespace qphonon
