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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qphonon {

using cdouble = std::complex<double>;

/**
 * Dense complex matrix with row-major storage.
 *
 * Sized for the small Hilbert spaces this project works with (at most a few
 * thousand rows); no attempt is made at sparse or blocked storage.
 */
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cdouble> data() const { return data_; }
  std::span<cdouble> data() { return data_; }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(cdouble scalar);

  Matrix adjoint() const;
  Matrix transpose() const;
  cdouble trace() const;

  /// Largest absolute entry; handy for tolerance checks.
  double max_abs() const;

  bool is_hermitian(double tol = 1e-10) const;

  /// Matrix-vector product.
  std::vector<cdouble> apply(std::span<const cdouble> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(cdouble scalar, Matrix m);

/// Kronecker product, left factor most significant.
Matrix kron(const Matrix& a, const Matrix& b);

/// Frobenius norm of (a - b).
double frobenius_distance(const Matrix& a, const Matrix& b);

/// Eigenvalues of a Hermitian matrix, ascending. Throws if not square.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

double min_hermitian_eigenvalue(const Matrix& m);

/// Solves the real linear system A x = b (A row-major n*n). Throws on
/// singular input.
std::vector<double> solve_linear_real(std::vector<double> a, std::vector<double> b);

/// Least-squares polynomial fit; returns coefficients c0..c_degree.
std::vector<double> polyfit(std::span<const double> xs, std::span<const double> ys, int degree);

/// Value at x=0 of the unique polynomial through all given points.
double lagrange_at_zero(std::span<const double> xs, std::span<const double> ys);

}  // namespace qphonon
