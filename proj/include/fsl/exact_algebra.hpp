#pragma once

// Exact integer and rational linear algebra. Everything is arbitrary
// precision (GMP); there is no floating point anywhere in the library.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fsl/error.hpp"

namespace fsl {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()) {
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InputError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix diagonal(std::span<const T> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  /// Builds from a list of rows; all rows must have the same length.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Builds from a list of column vectors of length `rows`.
  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw InputError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const T& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(source, j) != 0) (*this)(target, j) += factor * (*this)(source, j);
  }

  /// col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const T& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, source) != 0) (*this)(i, target) += factor * (*this)(i, source);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix sum shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix difference shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector shape mismatch");
  std::vector<T> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0) y[i] += a(i, j) * x[j];
  return y;
}

template <class T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
/// nullopt unless every entry is an integer.
std::optional<IntMatrix> to_integer(const RatMatrix& m);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

bool is_unimodular(const IntMatrix& m);
/// Inverse of a unimodular matrix; nullopt when |det| != 1.
std::optional<IntMatrix> inverse_unimodular(const IntMatrix& m);
/// Inverse over Q; nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

// ---------------------------------------------------------------------------
// Smith normal form and finite abelian groups

struct SmithDecomposition {
  IntMatrix U;  ///< unimodular, rows x rows
  IntMatrix D;  ///< diagonal, d_1 | d_2 | ... | d_r, then zeros
  IntMatrix V;  ///< unimodular, cols x cols
  std::size_t rank = 0;

  /// The first min(rows, cols) diagonal entries of D.
  IntVector diagonal() const;
};

/// U * M * V = D with nonnegative diagonal and the divisibility chain.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Finite abelian group in invariant-factor form Z/d_1 + ... + Z/d_k with
/// 1 < d_1 | d_2 | ... | d_k. Any list of positive orders is accepted and
/// normalized on construction.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(const IntVector& orders);

  const IntVector& invariant_factors() const noexcept { return factors_; }
  Integer order() const;
  bool is_trivial() const noexcept { return factors_.empty(); }
  std::string to_string() const;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

 private:
  IntVector factors_;
};

struct Cokernel {
  std::size_t free_rank = 0;
  FinAbGroup torsion;
};

/// Cokernel of M : Z^cols -> Z^rows.
Cokernel cokernel(const IntMatrix& m);

/// dim over Z/2 of G (x) Z/2, i.e. the number of even invariant factors.
std::size_t dim_mod2_tensor(const FinAbGroup& g);

// ---------------------------------------------------------------------------
// Integer lattices

/// Basis (as columns of V) of {x in Z^cols : M x = 0}.
std::vector<IntVector> integer_kernel_basis(const IntMatrix& m);

/// Basis of the lattice spanned by the columns of `generators`, returned as
/// the columns of a matrix with full column rank.
IntMatrix lattice_basis(const IntMatrix& generators);

// ---------------------------------------------------------------------------
// Rational linear algebra

struct Echelon {
  RatMatrix reduced;                    ///< reduced row echelon form
  std::vector<std::size_t> pivot_cols;  ///< one per nonzero row
};

Echelon row_reduce(RatMatrix m);
std::size_t rank(const RatMatrix& m);
std::vector<RatVector> kernel_basis(const RatMatrix& m);
bool linearly_independent(const std::vector<RatVector>& vectors, std::size_t dim);

/// Congruence diagonalization of a symmetric matrix: transformᵀ · G · transform
/// is diagonal with the returned entries. Zero entries span the radical.
struct CongruenceDiagonalization {
  RatVector diagonal;
  RatMatrix transform;
};

CongruenceDiagonalization diagonalize_symmetric(const RatMatrix& g);

std::string to_string(const Rational& q);

}  // namespace fsl
