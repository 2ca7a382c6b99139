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

#include "qphonon/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace qphonon {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cdouble{0.0, 0.0}) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(cdouble scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cdouble Matrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
  cdouble t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool Matrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

std::vector<cdouble> Matrix::apply(std::span<const cdouble> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<cdouble> out(rows_, cdouble{0.0, 0.0});
  for (std::size_t r = 0; r < rows_; ++r) {
    cdouble acc{0.0, 0.0};
    const cdouble* row = &data_[r * cols_];
    for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) {
  lhs += rhs;
  return lhs;
}

Matrix operator-(Matrix lhs, const Matrix& rhs) {
  lhs -= rhs;
  return lhs;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw std::invalid_argument("matrix shape mismatch in *");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t r = 0; r < lhs.rows(); ++r) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const cdouble a = lhs(r, k);
      if (a == cdouble{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < rhs.cols(); ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

Matrix operator*(cdouble scalar, Matrix m) {
  m *= scalar;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cdouble v = a(ar, ac);
      if (v == cdouble{0.0, 0.0}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
    }
  return out;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch in frobenius_distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const cdouble d = a.data()[i] - b.data()[i];
    acc += std::norm(d);
  }
  return std::sqrt(acc);
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues of non-square matrix");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd em(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) em(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolver failed");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  std::sort(out.begin(), out.end());
  return out;
}

double min_hermitian_eigenvalue(const Matrix& m) { return hermitian_eigenvalues(m).front(); }

std::vector<double> solve_linear_real(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  if (a.size() != n * n) throw std::invalid_argument("solve_linear_real: bad shapes");
  Eigen::MatrixXd ea(n, n);
  Eigen::VectorXd eb(n);
  for (std::size_t r = 0; r < n; ++r) {
    eb(static_cast<Eigen::Index>(r)) = b[r];
    for (std::size_t c = 0; c < n; ++c)
      ea(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a[r * n + c];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ea);
  if (!lu.isInvertible()) throw std::runtime_error("solve_linear_real: singular system");
  Eigen::VectorXd x = lu.solve(eb);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x(static_cast<Eigen::Index>(i));
  return out;
}

std::vector<double> polyfit(std::span<const double> xs, std::span<const double> ys, int degree) {
  if (degree < 0) throw std::invalid_argument("polyfit: negative degree");
  if (xs.size() != ys.size()) throw std::invalid_argument("polyfit: size mismatch");
  const std::size_t n = xs.size();
  const std::size_t k = static_cast<std::size_t>(degree) + 1;
  if (n < k) throw std::invalid_argument("polyfit: underdetermined fit");
  Eigen::MatrixXd vand(n, k);
  Eigen::VectorXd rhs(n);
  for (std::size_t r = 0; r < n; ++r) {
    rhs(static_cast<Eigen::Index>(r)) = ys[r];
    double p = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      vand(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = p;
      p *= xs[r];
    }
  }
  Eigen::VectorXd sol = vand.colPivHouseholderQr().solve(rhs);
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = sol(static_cast<Eigen::Index>(i));
  return out;
}

double lagrange_at_zero(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("lagrange_at_zero: bad points");
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      const double denom = xs[i] - xs[j];
      if (denom == 0.0) throw std::invalid_argument("lagrange_at_zero: duplicate abscissae");
      w *= (0.0 - xs[j]) / denom;
    }
    acc += w * ys[i];
  }
  return acc;
}

}  // namespace qphonon
