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

#include "qphonon/circuits.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qphonon/rng.hpp"

namespace qphonon {

bool is_rotation(GateKind k) { return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ; }

bool is_two_qubit(GateKind k) { return k == GateKind::CNOT || k == GateKind::CZ || k == GateKind::ECR; }

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::X: return "X";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::ECR: return "ECR";
  }
  throw std::invalid_argument("gate_name: bad kind");
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "RX") return GateKind::RX;
  if (name == "RY") return GateKind::RY;
  if (name == "RZ") return GateKind::RZ;
  if (name == "X") return GateKind::X;
  if (name == "CNOT") return GateKind::CNOT;
  if (name == "CZ") return GateKind::CZ;
  if (name == "ECR") return GateKind::ECR;
  throw std::invalid_argument("gate_kind_from_name: unknown gate '" + name + "'");
}

void Circuit::append(Gate g) {
  if (g.q0 < 0 || g.q0 >= width) throw std::invalid_argument("Circuit::append: qubit out of range");
  if (is_two_qubit(g.kind)) {
    if (g.q1 < 0 || g.q1 >= width) throw std::invalid_argument("Circuit::append: qubit out of range");
    if (g.q1 == g.q0) throw std::invalid_argument("Circuit::append: two-qubit gate needs distinct qubits");
  } else if (g.q1 != -1) {
    throw std::invalid_argument("Circuit::append: single-qubit gate with second qubit");
  }
  if (!is_rotation(g.kind) && g.param >= 0)
    throw std::invalid_argument("Circuit::append: only rotations take parameters");
  if (g.param >= 0 && g.param >= n_parameters) n_parameters = g.param + 1;
  gates.push_back(g);
}

void Circuit::rotation(GateKind kind, int qubit, double angle) {
  if (!is_rotation(kind)) throw std::invalid_argument("Circuit::rotation: kind is not a rotation");
  append(Gate{kind, qubit, -1, angle, -1});
}

void Circuit::rotation_param(GateKind kind, int qubit, int param_index) {
  if (!is_rotation(kind)) throw std::invalid_argument("Circuit::rotation_param: kind is not a rotation");
  if (param_index < 0) throw std::invalid_argument("Circuit::rotation_param: negative parameter index");
  append(Gate{kind, qubit, -1, 0.0, param_index});
}

void Circuit::x(int qubit) { append(Gate{GateKind::X, qubit, -1, 0.0, -1}); }
void Circuit::cnot(int control, int target) { append(Gate{GateKind::CNOT, control, target, 0.0, -1}); }
void Circuit::cz(int a, int b) { append(Gate{GateKind::CZ, a, b, 0.0, -1}); }
void Circuit::ecr(int a, int b) { append(Gate{GateKind::ECR, a, b, 0.0, -1}); }

bool Circuit::fully_bound() const {
  for (const auto& g : gates)
    if (!g.bound()) return false;
  return true;
}

int Circuit::count(GateKind kind) const {
  int n = 0;
  for (const auto& g : gates)
    if (g.kind == kind) ++n;
  return n;
}

int Circuit::two_qubit_count() const {
  int n = 0;
  for (const auto& g : gates)
    if (is_two_qubit(g.kind)) ++n;
  return n;
}

std::string Circuit::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "# width " << width << " params " << n_parameters << " global_phase " << global_phase << "\n";
  for (const auto& g : gates) {
    os << gate_name(g.kind) << " " << g.q0;
    if (is_two_qubit(g.kind)) os << " " << g.q1;
    if (is_rotation(g.kind)) {
      if (g.bound())
        os << " " << g.angle;
      else
        os << " p" << g.param;
    }
    os << "\n";
  }
  return os.str();
}

Circuit Circuit::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Circuit c(0);
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line);
      std::string hash, kw;
      int width = 0, params = 0;
      double gphase = 0.0;
      hs >> hash >> kw >> width >> kw >> params >> kw >> gphase;
      c = Circuit(width);
      c.global_phase = gphase;
      c.n_parameters = params;
      have_header = true;
      continue;
    }
    if (!have_header) throw std::invalid_argument("Circuit::from_text: missing header line");
    std::istringstream ls(line);
    std::string name;
    ls >> name;
    const GateKind kind = gate_kind_from_name(name);
    Gate g;
    g.kind = kind;
    ls >> g.q0;
    if (is_two_qubit(kind)) ls >> g.q1;
    if (is_rotation(kind)) {
      std::string tok;
      ls >> tok;
      if (!tok.empty() && tok[0] == 'p')
        g.param = std::stoi(tok.substr(1));
      else
        g.angle = std::stod(tok);
    }
    const int saved_params = c.n_parameters;
    c.append(g);
    if (c.n_parameters < saved_params) c.n_parameters = saved_params;
  }
  return c;
}

Matrix gate_matrix(const Gate& g) {
  if (!g.bound()) throw std::invalid_argument("gate_matrix: unbound parameter");
  const double h = g.angle / 2.0;
  switch (g.kind) {
    case GateKind::RX: {
      Matrix m(2, 2);
      m(0, 0) = std::cos(h);
      m(0, 1) = cdouble{0.0, -std::sin(h)};
      m(1, 0) = cdouble{0.0, -std::sin(h)};
      m(1, 1) = std::cos(h);
      return m;
    }
    case GateKind::RY: {
      Matrix m(2, 2);
      m(0, 0) = std::cos(h);
      m(0, 1) = -std::sin(h);
      m(1, 0) = std::sin(h);
      m(1, 1) = std::cos(h);
      return m;
    }
    case GateKind::RZ: {
      Matrix m(2, 2);
      m(0, 0) = std::exp(cdouble{0.0, -h});
      m(1, 1) = std::exp(cdouble{0.0, h});
      return m;
    }
    case GateKind::X: {
      Matrix m(2, 2);
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      return m;
    }
    case GateKind::CNOT: {
      Matrix m(4, 4);
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      m(2, 3) = 1.0;
      m(3, 2) = 1.0;
      return m;
    }
    case GateKind::CZ: {
      Matrix m = Matrix::identity(4);
      m(3, 3) = -1.0;
      return m;
    }
    case GateKind::ECR: {
      // (IX - XY)/sqrt(2)
      const double s = 1.0 / std::sqrt(2.0);
      Matrix m(4, 4);
      m(0, 1) = s;
      m(0, 3) = cdouble{0.0, s};
      m(1, 0) = s;
      m(1, 2) = cdouble{0.0, -s};
      m(2, 1) = cdouble{0.0, s};
      m(2, 3) = s;
      m(3, 0) = cdouble{0.0, -s};
      m(3, 2) = s;
      return m;
    }
  }
  throw std::invalid_argument("gate_matrix: bad kind");
}

Circuit build_efficient_su2(int width, int reps) {
  if (width < 2) throw std::invalid_argument("build_efficient_su2: width must be at least 2");
  if (reps < 1) throw std::invalid_argument("build_efficient_su2: reps must be at least 1");
  Circuit c(width);
  int p = 0;
  for (int layer = 0; layer <= reps; ++layer) {
    for (int q = 0; q < width; ++q) c.rotation_param(GateKind::RY, q, p++);
    for (int q = 0; q < width; ++q) c.rotation_param(GateKind::RZ, q, p++);
    if (layer == reps) break;
    for (int a = 0; a < width; ++a)
      for (int b = a + 1; b < width; ++b) c.cnot(a, b);
  }
  return c;
}

Circuit build_custom_ansatz(int width) {
  if (width < 2) throw std::invalid_argument("build_custom_ansatz: width must be at least 2");
  constexpr int kLayers = 4;
  Circuit c(width);
  int p = 0;
  for (int layer = 0; layer < kLayers; ++layer) {
    for (int q = 0; q < width; ++q) c.rotation_param(GateKind::RY, q, p++);
    for (int q = 0; q + 1 < width; ++q) c.cnot(q, q + 1);
  }
  c.cz(width - 1, 0);
  return c;
}

Circuit transpile_cnot_to_ecr(const Circuit& circuit) {
  Circuit out(circuit.width);
  out.n_parameters = circuit.n_parameters;
  out.global_phase = circuit.global_phase;
  const double q = M_PI / 2.0;
  for (const auto& g : circuit.gates) {
    if (g.kind != GateKind::CNOT) {
      out.append(g);
      continue;
    }
    const int c = g.q0, t = g.q1;
    out.rotation(GateKind::RY, c, q);
    out.rotation(GateKind::RY, t, -q);
    out.x(t);
    out.ecr(c, t);
    out.rotation(GateKind::RY, c, -q);
    out.rotation(GateKind::RY, t, q);
    out.rotation(GateKind::RX, t, q);
    out.rotation(GateKind::RZ, c, q);
    out.global_phase += q;
  }
  return out;
}

Circuit bind_parameters(const Circuit& circuit, std::span<const double> values) {
  if (static_cast<int>(values.size()) != circuit.n_parameters)
    throw std::invalid_argument("bind: parameter count mismatch");
  Circuit out = circuit;
  for (auto& g : out.gates) {
    if (g.param >= 0) {
      g.angle = values[static_cast<std::size_t>(g.param)];
      g.param = -1;
    }
  }
  return out;
}

std::vector<double> random_parameters(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = rng.uniform(-M_PI, M_PI);
  return out;
}

std::vector<double> perturbed_parameters(int n, std::uint64_t seed, double scale) {
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = rng.uniform(-scale, scale);
  return out;
}

}  // namespace qphonon
