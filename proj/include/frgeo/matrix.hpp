#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace frgeo {

// Dense row-major matrix of doubles. Sized for truncations of a few hundred;
// no sparsity, no views.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  Matrix transposed() const;
  bool all_finite() const;
  double frobenius_norm() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
// Dense product via the kernel layer.
Matrix operator*(const Matrix& a, const Matrix& b);
// a * b^T without materializing the transpose.
Matrix mul_nt(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);

// Real symmetric matrix. Entries are symmetrized as (M + M^T)/2 at
// construction so entries(i,j) == entries(j,i) holds exactly afterwards;
// non-finite input is rejected.
class SymMatrix {
 public:
  explicit SymMatrix(Matrix m);

  static SymMatrix zero(std::size_t n);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diag(const std::vector<double>& d);
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t dim() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }
  const double* data() const { return m_.data(); }

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double s);

 private:
  struct exact_tag {};
  SymMatrix(Matrix m, exact_tag) : m_(std::move(m)) {}

  Matrix m_;

  friend SymMatrix sym_exact(Matrix m);
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);

// Wraps a matrix that is symmetric by construction without re-symmetrizing,
// so sign symmetries (e.g. commutator antisymmetry) survive bit-exactly.
// The caller is responsible for exact symmetry.
SymMatrix sym_exact(Matrix m);

// (m + m^T)/2 for products that are symmetric only up to rounding.
SymMatrix symmetrize(const Matrix& m);

}  // namespace frgeo
