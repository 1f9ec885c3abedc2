#pragma once

// Column-sparse matrices for simplicial coboundaries, with exact rational
// column reduction (lowest-pivot, as in persistence computations).

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "fsl/exact_algebra.hpp"

namespace fsl {

/// Sorted by index, no explicit zeros.
using SparseRatVector = std::vector<std::pair<std::size_t, Rational>>;

class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  /// entry(i, j) += value
  void add(std::size_t i, std::size_t j, const Integer& value);

  const std::map<std::size_t, Integer>& column(std::size_t j) const { return columns_[j]; }
  Integer at(std::size_t i, std::size_t j) const;

  IntMatrix to_dense() const;
  bool is_zero() const;

  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::vector<std::map<std::size_t, Integer>> columns_;
};

SparseRatVector to_sparse(const RatVector& v);
RatVector to_dense(const SparseRatVector& v, std::size_t dim);
/// v += factor * w
void axpy(SparseRatVector& v, const Rational& factor, const SparseRatVector& w);
SparseRatVector apply(const SparseIntMatrix& m, const SparseRatVector& x);

/// Incrementally built echelon basis keyed by the largest nonzero index.
class EchelonBasis {
 public:
  /// Reduces v against the basis in place; returns true when v becomes 0.
  bool reduce(SparseRatVector& v) const;
  /// Inserts the reduced form of v; returns false if v was dependent.
  bool insert(SparseRatVector v);
  std::size_t size() const noexcept { return by_low_.size(); }

 private:
  std::map<std::size_t, SparseRatVector> by_low_;
};

std::size_t sparse_rank(const SparseIntMatrix& m);

/// Basis of {x : m x = 0} over Q.
std::vector<SparseRatVector> sparse_kernel(const SparseIntMatrix& m);

}  // namespace fsl
