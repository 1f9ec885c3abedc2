#include "fsl/forms.hpp"

namespace fsl {

EpsSymmetricForm::EpsSymmetricForm(int epsilon, RatMatrix gram) : epsilon_(epsilon), gram_(std::move(gram)) {
  if (epsilon_ != 1 && epsilon_ != -1) throw InputError("epsilon must be +1 or -1");
  if (!gram_.square()) throw InputError("Gram matrix must be square");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = i; j < gram_.cols(); ++j)
      if (gram_(j, i) != epsilon_ * gram_(i, j))
        throw InputError(epsilon_ == 1 ? "Gram matrix is not symmetric" : "Gram matrix is not skew-symmetric");
}

EpsSymmetricForm EpsSymmetricForm::diagonal(const std::vector<long>& entries) {
  RatMatrix g(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return EpsSymmetricForm(1, std::move(g));
}

EpsSymmetricForm EpsSymmetricForm::identity(std::size_t n) { return EpsSymmetricForm(1, RatMatrix::identity(n)); }

EpsSymmetricForm EpsSymmetricForm::hyperbolic(std::size_t g, int epsilon) {
  RatMatrix m(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    m(i, g + i) = 1;
    m(g + i, i) = epsilon;
  }
  return EpsSymmetricForm(epsilon, std::move(m));
}

Rational EpsSymmetricForm::operator()(const RatVector& x, const RatVector& y) const {
  if (x.size() != rank() || y.size() != rank()) throw InputError("vector length does not match form rank");
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j)
      if (y[j] != 0) s += x[i] * gram_(i, j) * y[j];
  }
  return s;
}

long signature(const EpsSymmetricForm& f) {
  if (f.epsilon() != 1) throw PreconditionError("signature is undefined for a skew-symmetric form");
  long s = 0;
  for (const auto& d : diagonalize_symmetric(f.gram()).diagonal) s += sgn(d);
  return s;
}

std::vector<RatVector> radical(const EpsSymmetricForm& f) { return kernel_basis(f.gram()); }

bool is_nondegenerate(const EpsSymmetricForm& f) { return rank(f.gram()) == f.rank(); }

EpsSymmetricForm orthogonal_sum(const EpsSymmetricForm& a, const EpsSymmetricForm& b) {
  if (a.epsilon() != b.epsilon()) throw PreconditionError("orthogonal sum of forms with different epsilon");
  return EpsSymmetricForm(a.epsilon(), block_diagonal(a.gram(), b.gram()));
}

EpsSymmetricForm sublagrangian_reduce(const EpsSymmetricForm& f, const std::vector<RatVector>& l) {
  const std::size_t n = f.rank();
  for (const auto& v : l)
    if (v.size() != n) throw InputError("sublagrangian vector has the wrong length");
  if (!linearly_independent(l, n)) throw PreconditionError("sublagrangian vectors are not independent");
  for (const auto& a : l)
    for (const auto& b : l)
      if (f(a, b) != 0) throw PreconditionError("subspace is not isotropic");
  if (!is_nondegenerate(f)) throw PreconditionError("sublagrangian reduction needs a nondegenerate form");
  if (l.empty()) return f;

  // L^⊥ = ker(Lᵀ G)
  RatMatrix lg(l.size(), n);
  for (std::size_t r = 0; r < l.size(); ++r)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (l[r][i] != 0) lg(r, j) += l[r][i] * f.gram()(i, j);
  auto perp = kernel_basis(lg);

  std::vector<RatVector> span = l;
  std::vector<RatVector> complement;
  for (const auto& v : perp) {
    span.push_back(v);
    if (linearly_independent(span, n))
      complement.push_back(v);
    else
      span.pop_back();
  }
  ensure(complement.size() + 2 * l.size() == n, "L^perp/L has the wrong dimension");

  RatMatrix c = RatMatrix::from_columns(complement, n);
  RatMatrix g = c.transpose() * f.gram() * c;
  return EpsSymmetricForm(f.epsilon(), std::move(g));
}

bool is_isometry(const EpsSymmetricForm& f, const IntMatrix& a) {
  if (a.rows() != f.rank() || a.cols() != f.rank()) throw InputError("isometry dimension does not match form");
  RatMatrix ar = to_rational(a);
  if (!(ar.transpose() * f.gram() * ar == f.gram())) return false;
  return abs(determinant(a)) == 1;
}

Isometry::Isometry(EpsSymmetricForm form, IntMatrix a) : form_(std::move(form)), a_(std::move(a)) {
  if (!is_isometry(form_, a_)) throw PreconditionError("matrix is not an isometry of the form");
}

Isometry Isometry::compose(const Isometry& other) const {
  if (!(other.form_ == form_)) throw PreconditionError("composing isometries of different forms");
  return Isometry(form_, a_ * other.a_);
}

Isometry Isometry::inverse() const {
  auto inv = inverse_unimodular(a_);
  ensure(inv.has_value(), "isometry without integral inverse");
  return Isometry(form_, *inv);
}

namespace {

bool is_standard_symplectic(const EpsSymmetricForm& f) {
  if (f.epsilon() != -1 || f.rank() % 2 != 0) return false;
  return f == EpsSymmetricForm::hyperbolic(f.rank() / 2, -1);
}

bool is_diagonal_unit(const EpsSymmetricForm& f) {
  if (f.epsilon() != 1) return false;
  for (std::size_t i = 0; i < f.rank(); ++i)
    for (std::size_t j = 0; j < f.rank(); ++j) {
      const auto& x = f.gram()(i, j);
      if (i == j ? (x != 1 && x != -1) : x != 0) return false;
    }
  return true;
}

IntMatrix symplectic_step(std::size_t g, SplitMix64& rng) {
  const std::size_t n = 2 * g;
  IntMatrix a = IntMatrix::identity(n);
  switch (rng.uniform(0, 3)) {
    case 0:
    case 1: {
      // transvection x -> x + c·ω(v,x)·v,  ω(v,x) = vᵀJx
      IntVector v(n);
      bool nonzero = false;
      while (!nonzero) {
        for (auto& x : v) {
          x = rng.uniform(-1, 1);
          if (x != 0) nonzero = true;
        }
      }
      const long c = rng.coin() ? 1 : -1;
      IntVector vj(n);  // row vector vᵀJ
      for (std::size_t i = 0; i < g; ++i) {
        vj[g + i] = v[i];
        vj[i] = -v[g + i];
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) += c * v[i] * vj[j];
      break;
    }
    case 2: {
      // swap two hyperbolic pairs
      auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g) - 1));
      auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g) - 1));
      a.swap_cols(i, j);
      a.swap_cols(g + i, g + j);
      break;
    }
    default: {
      // rotate one pair: e -> f, f -> -e (or negate the pair)
      auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(g) - 1));
      if (rng.coin()) {
        a(i, i) = 0;
        a(g + i, g + i) = 0;
        a(g + i, i) = 1;
        a(i, g + i) = -1;
      } else {
        a(i, i) = -1;
        a(g + i, g + i) = -1;
      }
      break;
    }
  }
  return a;
}

IntMatrix diagonal_step(const EpsSymmetricForm& f, SplitMix64& rng) {
  const std::size_t n = f.rank();
  IntMatrix a = IntMatrix::identity(n);
  std::vector<long> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = f.gram()(i, i) > 0 ? 1 : -1;
  const long kind = rng.uniform(0, 2);
  if (kind == 0) {
    auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    a(i, i) = -1;
    return a;
  }
  if (kind == 1) {
    auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    if (d[i] == d[j]) a.swap_cols(i, j);
    return a;
  }
  // reflection x -> x - (2B(v,x)/B(v,v)) v, integral when B(v,v) ∈ {±1, ±2}
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<long> v(n);
    long q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = rng.uniform(-1, 1);
      q += d[i] * v[i] * v[i];
    }
    if (q != 1 && q != -1 && q != 2 && q != -2) continue;
    const long c = 2 / q;  // ±2 or ±1
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= c * v[i] * d[j] * v[j];
    return a;
  }
  return a;
}

}  // namespace

Isometry random_isometry(const EpsSymmetricForm& f, SplitMix64& rng, std::size_t steps) {
  const bool symplectic = is_standard_symplectic(f);
  if (!symplectic && !is_diagonal_unit(f))
    throw PreconditionError("random isometries need a standard hyperbolic or diagonal ±1 form");
  IntMatrix a = IntMatrix::identity(f.rank());
  if (f.rank() == 0) return Isometry(f, a);
  for (std::size_t s = 0; s < steps; ++s)
    a = (symplectic ? symplectic_step(f.rank() / 2, rng) : diagonal_step(f, rng)) * a;
  return Isometry(f, std::move(a));
}

Isometry random_isometry(const EpsSymmetricForm& f, std::uint64_t seed, std::size_t steps) {
  SplitMix64 rng(seed);
  return random_isometry(f, rng, steps);
}

std::pair<int, int> det_plus_minus(const EpsSymmetricForm& f, const IntMatrix& a) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < f.rank(); ++i) {
    for (std::size_t j = 0; j < f.rank(); ++j)
      if (i != j && f.gram()(i, j) != 0) throw PreconditionError("det± needs a diagonal form");
    if (f.gram()(i, i) > 0)
      pos.push_back(i);
    else if (f.gram()(i, i) < 0)
      neg.push_back(i);
    else
      throw PreconditionError("det± needs a nondegenerate form");
  }
  auto block_sign = [&](const std::vector<std::size_t>& idx) {
    IntMatrix b(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = a(idx[i], idx[j]);
    return sgn(determinant(b));
  };
  return {block_sign(pos), block_sign(neg)};
}

IntMatrix random_unimodular(std::size_t n, SplitMix64& rng, std::size_t steps) {
  IntMatrix a = IntMatrix::identity(n);
  if (n == 0) return a;
  for (std::size_t s = 0; s < steps; ++s) {
    auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    if (i == j) {
      if (rng.coin())
        for (std::size_t k = 0; k < n; ++k) a(i, k) = -a(i, k);
      continue;
    }
    if (rng.uniform(0, 3) == 0)
      a.swap_rows(i, j);
    else
      a.add_row_multiple(i, j, Integer(rng.uniform(-2, 2)));
  }
  return a;
}

}  // namespace fsl
