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

#include "qphonon/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qphonon {

char axis_char(Axis a) {
  switch (a) {
    case Axis::I: return 'I';
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  throw std::invalid_argument("axis_char: bad axis");
}

Axis axis_from_char(char c) {
  switch (c) {
    case 'I': return Axis::I;
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
  }
  throw std::invalid_argument(std::string("axis_from_char: bad axis character '") + c + "'");
}

std::string PauliTerm::axes_string() const {
  std::string s;
  s.reserve(axes.size());
  for (Axis a : axes) s.push_back(axis_char(a));
  return s;
}

PauliTerm PauliTerm::identity(int width, cdouble coeff) {
  PauliTerm t;
  t.coefficient = coeff;
  t.axes.assign(static_cast<std::size_t>(width), Axis::I);
  return t;
}

PauliTerm PauliTerm::single(int width, int qubit, Axis a, cdouble coeff) {
  if (qubit < 0 || qubit >= width) throw std::invalid_argument("PauliTerm::single: qubit out of range");
  PauliTerm t = identity(width, coeff);
  t.axes[static_cast<std::size_t>(qubit)] = a;
  return t;
}

namespace {

struct AxisProduct {
  Axis axis;
  cdouble phase;
};

// Single-qubit products: row * column. X*Y = iZ, Y*Z = iX, Z*X = iY, and the
// reversed orders pick up -i.
AxisProduct axis_product(Axis a, Axis b) {
  static const cdouble one{1.0, 0.0}, pi{0.0, 1.0}, mi{0.0, -1.0};
  if (a == Axis::I) return {b, one};
  if (b == Axis::I) return {a, one};
  if (a == b) return {Axis::I, one};
  switch (a) {
    case Axis::X: return b == Axis::Y ? AxisProduct{Axis::Z, pi} : AxisProduct{Axis::Y, mi};
    case Axis::Y: return b == Axis::Z ? AxisProduct{Axis::X, pi} : AxisProduct{Axis::Z, mi};
    case Axis::Z: return b == Axis::X ? AxisProduct{Axis::Y, pi} : AxisProduct{Axis::X, mi};
    default: break;
  }
  throw std::logic_error("axis_product: unreachable");
}

Matrix axis_matrix(Axis a) {
  Matrix m(2, 2);
  switch (a) {
    case Axis::I: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case Axis::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case Axis::Y: m(0, 1) = {0.0, -1.0}; m(1, 0) = {0.0, 1.0}; break;
    case Axis::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

}  // namespace

PauliTerm multiply(const PauliTerm& lhs, const PauliTerm& rhs) {
  if (lhs.width() != rhs.width()) throw std::invalid_argument("PauliTerm multiply: width mismatch");
  PauliTerm out;
  out.coefficient = lhs.coefficient * rhs.coefficient;
  out.axes.resize(lhs.axes.size());
  for (std::size_t q = 0; q < lhs.axes.size(); ++q) {
    const auto p = axis_product(lhs.axes[q], rhs.axes[q]);
    out.axes[q] = p.axis;
    out.coefficient *= p.phase;
  }
  return out;
}

PauliSum::PauliSum(int width) : width_(width) {
  if (width < 0) throw std::invalid_argument("PauliSum: negative width");
}

void PauliSum::add_term(PauliTerm term) {
  if (term.width() != width_) throw std::invalid_argument("PauliSum::add_term: width mismatch");
  terms_.push_back(std::move(term));
}

void PauliSum::add_identity(cdouble coeff) { terms_.push_back(PauliTerm::identity(width_, coeff)); }

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.width_ != width_) throw std::invalid_argument("PauliSum +=: width mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (other.width_ != width_) throw std::invalid_argument("PauliSum -=: width mismatch");
  for (auto t : other.terms_) {
    t.coefficient = -t.coefficient;
    terms_.push_back(std::move(t));
  }
  return *this;
}

PauliSum& PauliSum::operator*=(cdouble scalar) {
  for (auto& t : terms_) t.coefficient *= scalar;
  return *this;
}

PauliSum operator+(PauliSum lhs, const PauliSum& rhs) {
  lhs += rhs;
  return lhs;
}

PauliSum operator-(PauliSum lhs, const PauliSum& rhs) {
  lhs -= rhs;
  return lhs;
}

PauliSum operator*(const PauliSum& lhs, const PauliSum& rhs) {
  if (lhs.width() != rhs.width()) throw std::invalid_argument("PauliSum *: width mismatch");
  PauliSum out(lhs.width());
  for (const auto& a : lhs.terms())
    for (const auto& b : rhs.terms()) out.add_term(multiply(a, b));
  return out;
}

PauliSum operator*(cdouble scalar, PauliSum sum) {
  sum *= scalar;
  return sum;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(width_);
  for (auto t : terms_) {
    t.coefficient = std::conj(t.coefficient);
    out.terms_.push_back(std::move(t));
  }
  return out;
}

PauliSum PauliSum::simplified(double tol) const {
  std::map<std::vector<Axis>, cdouble> merged;
  for (const auto& t : terms_) merged[t.axes] += t.coefficient;
  PauliSum out(width_);
  for (auto& [axes, coeff] : merged) {
    if (std::abs(coeff) < tol) continue;
    out.terms_.push_back(PauliTerm{coeff, axes});
  }
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& t : terms_)
    if (std::abs(t.coefficient.imag()) > tol) return false;
  return true;
}

double PauliSum::coefficient_l1() const {
  double acc = 0.0;
  for (const auto& t : terms_) acc += std::abs(t.coefficient);
  return acc;
}

Matrix PauliSum::to_matrix() const {
  if (width_ > 12) throw std::invalid_argument("PauliSum::to_matrix: width above the 12-qubit guard");
  const std::size_t dim = std::size_t{1} << width_;
  Matrix out(dim, dim);
  for (const auto& t : terms_) {
    Matrix m = Matrix::identity(1);
    for (Axis a : t.axes) m = kron(m, axis_matrix(a));
    m *= t.coefficient;
    out += m;
  }
  return out;
}

std::string PauliSum::to_text() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& t : terms_) os << t.coefficient.real() << " " << t.coefficient.imag() << " " << t.axes_string() << "\n";
  return os.str();
}

PauliSum PauliSum::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<PauliTerm> terms;
  int width = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    std::string axes;
    if (!(ls >> re >> im >> axes)) throw std::invalid_argument("PauliSum::from_text: malformed line: " + line);
    PauliTerm t;
    t.coefficient = {re, im};
    for (char c : axes) t.axes.push_back(axis_from_char(c));
    if (width < 0) width = t.width();
    if (t.width() != width) throw std::invalid_argument("PauliSum::from_text: inconsistent widths");
    terms.push_back(std::move(t));
  }
  PauliSum out(width < 0 ? 0 : width);
  for (auto& t : terms) out.add_term(std::move(t));
  return out;
}

EncodingLayout::EncodingLayout(int phonons, int levels) : n_phonons(phonons), levels_per_phonon(levels) {
  if (phonons < 1 || levels < 2) throw std::invalid_argument("EncodingLayout: bad shape");
}

int EncodingLayout::qubit_index(int phonon, int level) const {
  if (phonon < 0 || phonon >= n_phonons) throw std::invalid_argument("EncodingLayout: phonon out of range");
  if (level < 0 || level >= levels_per_phonon) throw std::invalid_argument("EncodingLayout: level out of range");
  return phonon * levels_per_phonon + level;
}

PauliSum sigma_plus(int qubit, int width) {
  PauliSum s(width);
  s.add_term(PauliTerm::single(width, qubit, Axis::X, {0.5, 0.0}));
  s.add_term(PauliTerm::single(width, qubit, Axis::Y, {0.0, -0.5}));
  return s;
}

PauliSum sigma_minus(int qubit, int width) {
  PauliSum s(width);
  s.add_term(PauliTerm::single(width, qubit, Axis::X, {0.5, 0.0}));
  s.add_term(PauliTerm::single(width, qubit, Axis::Y, {0.0, 0.5}));
  return s;
}

PauliSum occupancy_projector(int qubit, int width) {
  PauliSum s(width);
  s.add_identity({0.5, 0.0});
  s.add_term(PauliTerm::single(width, qubit, Axis::Z, {-0.5, 0.0}));
  return s;
}

PauliSum encode_ladder(const LadderOp& op, const EncodingLayout& layout) {
  if (op.mode < 0 || op.mode >= layout.n_phonons)
    throw std::invalid_argument("encode_ladder: mode out of range");
  const int width = layout.width();
  PauliSum out(width);
  const int levels = layout.levels_per_phonon;
  if (op.kind == LadderKind::Create) {
    for (int n = 0; n + 1 < levels; ++n) {
      const double amp = std::sqrt(double(n) + 1.0);
      PauliSum hop = sigma_minus(layout.qubit_index(op.mode, n), width) *
                     sigma_plus(layout.qubit_index(op.mode, n + 1), width);
      hop *= cdouble{amp, 0.0};
      out += hop;
    }
  } else {
    for (int n = 1; n < levels; ++n) {
      const double amp = std::sqrt(double(n));
      PauliSum hop = sigma_plus(layout.qubit_index(op.mode, n - 1), width) *
                     sigma_minus(layout.qubit_index(op.mode, n), width);
      hop *= cdouble{amp, 0.0};
      out += hop;
    }
  }
  return out.simplified();
}

PauliSum encode_number(int phonon, const EncodingLayout& layout) {
  if (phonon < 0 || phonon >= layout.n_phonons)
    throw std::invalid_argument("encode_number: phonon out of range");
  const int width = layout.width();
  PauliSum out(width);
  for (int n = 1; n < layout.levels_per_phonon; ++n) {
    PauliSum proj = occupancy_projector(layout.qubit_index(phonon, n), width);
    proj *= cdouble{double(n), 0.0};
    out += proj;
  }
  return out.simplified();
}

}  // namespace qphonon
