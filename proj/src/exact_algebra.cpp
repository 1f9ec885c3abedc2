#include "fsl/exact_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace fsl {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

std::optional<IntMatrix> to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) return std::nullopt;
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  if (!m.square()) throw InputError("determinant of a non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(p, k);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      a.add_row_multiple(i, k, -f);
    }
  }
  return det;
}

bool is_unimodular(const IntMatrix& m) {
  if (!m.square()) return false;
  return abs(determinant(m)) == 1;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.square()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    a.swap_rows(p, k);
    inv.swap_rows(p, k);
    Rational s = 1 / a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= s;
      inv(k, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = -a(i, k);
      a.add_row_multiple(i, k, f);
      inv.add_row_multiple(i, k, f);
    }
  }
  return inv;
}

std::optional<IntMatrix> inverse_unimodular(const IntMatrix& m) {
  if (!m.square()) return std::nullopt;
  auto inv = inverse(to_rational(m));
  if (!inv) return std::nullopt;
  auto r = to_integer(*inv);
  if (!r) return std::nullopt;
  return r;
}

// ---------------------------------------------------------------------------

IntVector SmithDecomposition::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(r);
  IntMatrix v = IntMatrix::identity(c);
  std::size_t rank = 0;

  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    bool found = true;
    for (;;) {
      // min-abs pivot in the active block
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a(i, j) != 0 && (pi == r || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == r) {
        found = false;
        break;
      }
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        a.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        a.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: the pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (!found) break;
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < r; ++j) u(t, j) = -u(t, j);
    }
    ++rank;
  }
  return SmithDecomposition{std::move(u), std::move(a), std::move(v), rank};
}

FinAbGroup::FinAbGroup(const IntVector& orders) {
  for (const auto& d : orders)
    if (d <= 0) throw InputError("group orders must be positive");
  std::vector<Integer> ds(orders.begin(), orders.end());
  if (ds.empty()) return;
  auto snf = smith_normal_form(IntMatrix::diagonal(std::span<const Integer>(ds)));
  for (const auto& d : snf.diagonal())
    if (d > 1) factors_.push_back(d);
}

Integer FinAbGroup::order() const {
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

std::string FinAbGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " + " : "") << "Z/" << factors_[i];
  return os.str();
}

Cokernel cokernel(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  IntVector tors;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) > 1) tors.push_back(snf.D(i, i));
  return Cokernel{m.rows() - snf.rank, FinAbGroup(tors)};
}

std::size_t dim_mod2_tensor(const FinAbGroup& g) {
  std::size_t n = 0;
  for (const auto& d : g.invariant_factors())
    if (mpz_even_p(d.get_mpz_t())) ++n;
  return n;
}

std::vector<IntVector> integer_kernel_basis(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  std::vector<IntVector> basis;
  for (std::size_t j = snf.rank; j < m.cols(); ++j) basis.push_back(snf.V.column(j));
  return basis;
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  auto snf = smith_normal_form(generators);
  auto uinv = inverse_unimodular(snf.U);
  ensure(uinv.has_value(), "SNF produced a non-unimodular U");
  IntMatrix b(generators.rows(), snf.rank);
  for (std::size_t j = 0; j < snf.rank; ++j)
    for (std::size_t i = 0; i < generators.rows(); ++i) b(i, j) = (*uinv)(i, j) * snf.D(j, j);
  return b;
}

// ---------------------------------------------------------------------------

Echelon row_reduce(RatMatrix m) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    Rational s = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= s;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != row && m(i, col) != 0) m.add_row_multiple(i, row, -Rational(m(i, col)));
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

std::size_t rank(const RatMatrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  auto e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool linearly_independent(const std::vector<RatVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return true;
  if (vectors.size() > dim) return false;
  RatMatrix m(vectors.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) throw InputError("vector length mismatch");
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vectors[i][j];
  }
  return rank(m) == vectors.size();
}

CongruenceDiagonalization diagonalize_symmetric(const RatMatrix& g) {
  if (!g.square()) throw InputError("Gram matrix must be square");
  const std::size_t n = g.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g(i, j) != g(j, i)) throw PreconditionError("matrix is not symmetric");

  RatMatrix a = g;
  RatMatrix p = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        a.swap_rows(k, j);
        a.swap_cols(k, j);
        p.swap_cols(k, j);
      } else {
        // all remaining diagonal entries vanish: x_k <- x_k + x_j
        j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) continue;  // row k is zero, part of the radical
        a.add_col_multiple(k, j, 1);
        a.add_row_multiple(k, j, 1);
        p.add_col_multiple(k, j, 1);
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j) == 0) continue;
      Rational f = a(k, j) / a(k, k);
      a.add_col_multiple(j, k, -f);
      a.add_row_multiple(j, k, -f);
      p.add_col_multiple(j, k, -f);
    }
  }
  CongruenceDiagonalization out;
  out.diagonal.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(a(i, i));
  out.transform = std::move(p);
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace fsl
