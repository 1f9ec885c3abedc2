#include "fsl/sparse.hpp"

namespace fsl {

void SparseIntMatrix::add(std::size_t i, std::size_t j, const Integer& value) {
  if (i >= rows_ || j >= columns_.size()) throw InternalError("sparse index out of range");
  if (value == 0) return;
  auto& col = columns_[j];
  auto [it, inserted] = col.try_emplace(i, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) col.erase(it);
  }
}

Integer SparseIntMatrix::at(std::size_t i, std::size_t j) const {
  auto it = columns_[j].find(i);
  return it == columns_[j].end() ? Integer(0) : it->second;
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix d(rows_, columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const auto& [i, x] : columns_[j]) d(i, j) = x;
  return d;
}

bool SparseIntMatrix::is_zero() const {
  for (const auto& c : columns_)
    if (!c.empty()) return false;
  return true;
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("sparse product shape mismatch");
  SparseIntMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (const auto& [k, x] : b.columns_[j])
      for (const auto& [i, y] : a.columns_[k]) c.add(i, j, x * y);
  return c;
}

SparseRatVector to_sparse(const RatVector& v) {
  SparseRatVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.emplace_back(i, v[i]);
  return s;
}

RatVector to_dense(const SparseRatVector& v, std::size_t dim) {
  RatVector d(dim);
  for (const auto& [i, x] : v) d.at(i) = x;
  return d;
}

void axpy(SparseRatVector& v, const Rational& factor, const SparseRatVector& w) {
  if (factor == 0 || w.empty()) return;
  SparseRatVector out;
  out.reserve(v.size() + w.size());
  auto a = v.begin();
  auto b = w.begin();
  while (a != v.end() || b != w.end()) {
    if (b == w.end() || (a != v.end() && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == v.end() || b->first < a->first) {
      out.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational s = a->second + factor * b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  v = std::move(out);
}

SparseRatVector apply(const SparseIntMatrix& m, const SparseRatVector& x) {
  std::map<std::size_t, Rational> acc;
  for (const auto& [j, xj] : x)
    for (const auto& [i, mij] : m.column(j)) acc[i] += xj * Rational(mij);
  SparseRatVector y;
  for (auto& [i, v] : acc)
    if (v != 0) y.emplace_back(i, std::move(v));
  return y;
}

bool EchelonBasis::reduce(SparseRatVector& v) const {
  while (!v.empty()) {
    auto it = by_low_.find(v.back().first);
    if (it == by_low_.end()) return false;
    Rational f = -v.back().second / it->second.back().second;
    axpy(v, f, it->second);
  }
  return true;
}

bool EchelonBasis::insert(SparseRatVector v) {
  if (reduce(v)) return false;
  const std::size_t low = v.back().first;
  by_low_.emplace(low, std::move(v));
  return true;
}

namespace {

SparseRatVector column_as_rational(const SparseIntMatrix& m, std::size_t j) {
  SparseRatVector v;
  for (const auto& [i, x] : m.column(j)) v.emplace_back(i, Rational(x));
  return v;
}

}  // namespace

std::size_t sparse_rank(const SparseIntMatrix& m) {
  EchelonBasis basis;
  for (std::size_t j = 0; j < m.cols(); ++j) basis.insert(column_as_rational(m, j));
  return basis.size();
}

std::vector<SparseRatVector> sparse_kernel(const SparseIntMatrix& m) {
  // Column reduction with a record of the combination producing each column.
  std::map<std::size_t, std::pair<SparseRatVector, SparseRatVector>> pivots;
  std::vector<SparseRatVector> kernel;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SparseRatVector v = column_as_rational(m, j);
    SparseRatVector track{{j, Rational(1)}};
    while (!v.empty()) {
      auto it = pivots.find(v.back().first);
      if (it == pivots.end()) break;
      Rational f = -v.back().second / it->second.first.back().second;
      axpy(v, f, it->second.first);
      axpy(track, f, it->second.second);
    }
    if (v.empty()) {
      kernel.push_back(std::move(track));
    } else {
      const std::size_t low = v.back().first;
      pivots.emplace(low, std::make_pair(std::move(v), std::move(track)));
    }
  }
  return kernel;
}

}  // namespace fsl
