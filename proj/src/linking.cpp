#include "fsl/linking.hpp"

#include <algorithm>
#include <sstream>

namespace fsl {

Rational frac(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - f;
}

LinkingForm::LinkingForm(int epsilon, IntVector orders, RatMatrix values)
    : epsilon_(epsilon), orders_(std::move(orders)), values_(std::move(values)) {
  if (epsilon_ != 1 && epsilon_ != -1) throw InputError("epsilon must be +1 or -1");
  const std::size_t n = orders_.size();
  if (values_.rows() != n || values_.cols() != n) throw InputError("linking matrix does not match the generator count");
  for (const auto& d : orders_)
    if (d <= 0) throw InputError("generator orders must be positive");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) values_(i, j) = frac(values_(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational a = orders_[i] * values_(i, j);
      if (a.get_den() != 1) throw InputError("d_i * l(g_i, g_j) is not integral");
      if (frac(values_(i, j) - epsilon_ * values_(j, i)) != 0)
        throw InputError("linking values are not epsilon-symmetric mod 1");
    }
}

Integer LinkingForm::order() const {
  Integer n = 1;
  for (const auto& d : orders_) n *= d;
  return n;
}

Rational LinkingForm::operator()(const IntVector& x, const IntVector& y) const {
  if (x.size() != generators() || y.size() != generators()) throw InputError("vector length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (x[i] != 0 && y[j] != 0) s += x[i] * values_(i, j) * y[j];
  return frac(s);
}

std::string LinkingForm::to_string() const {
  std::ostringstream os;
  os << "(" << group().to_string() << ", [";
  for (std::size_t i = 0; i < values_.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < values_.cols(); ++j) os << (j ? " " : "") << values_(i, j).get_str();
  }
  os << "], " << (epsilon_ == 1 ? "+" : "-") << ")";
  return os.str();
}

namespace {

IntMatrix diag_orders(const IntVector& d) { return IntMatrix::diagonal(std::span<const Integer>(d)); }

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix intersect(const IntMatrix& b1, const IntMatrix& b2) {
  IntMatrix neg = b2;
  for (std::size_t i = 0; i < neg.rows(); ++i)
    for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
  auto ker = integer_kernel_basis(hcat(b1, neg));
  IntMatrix gens(b1.rows(), ker.size());
  for (std::size_t k = 0; k < ker.size(); ++k) {
    IntVector a(ker[k].begin(), ker[k].begin() + static_cast<std::ptrdiff_t>(b1.cols()));
    auto x = b1 * a;
    for (std::size_t i = 0; i < x.size(); ++i) gens(i, k) = x[i];
  }
  return lattice_basis(gens);
}

Integer common_denominator(const RatMatrix& m) {
  Integer q = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), m(i, j).get_den_mpz_t());
  return q;
}

/// Basis of {x in Z^n : M x in Z^m} for a rational m x n matrix M.
IntMatrix integral_preimage(const RatMatrix& m) {
  const Integer q = common_denominator(m);
  IntMatrix big(m.rows(), m.cols() + m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) big(i, j) = Rational(m(i, j) * q).get_num();
    big(i, m.cols() + i) = -q;
  }
  auto ker = integer_kernel_basis(big);
  IntMatrix gens(m.cols(), ker.size());
  for (std::size_t k = 0; k < ker.size(); ++k)
    for (std::size_t i = 0; i < m.cols(); ++i) gens(i, k) = ker[k][i];
  return lattice_basis(gens);
}

Integer lattice_index(const IntMatrix& b) { return abs(determinant(b)); }

/// The form restricted to S and pushed to S/R, for lattices R ⊆ S of full rank.
LinkingForm quotient(const LinkingForm& t, const IntMatrix& s, const IntMatrix& r) {
  auto sinv = inverse(to_rational(s));
  ensure(sinv.has_value(), "sublattice is not of full rank");
  auto c = to_integer(*sinv * to_rational(r));
  ensure(c.has_value(), "R is not contained in S");
  auto snf = smith_normal_form(*c);
  auto uinv = inverse_unimodular(snf.U);
  ensure(uinv.has_value(), "SNF produced a non-unimodular U");
  IntMatrix w = s * *uinv;

  IntVector orders;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < snf.D.rows(); ++i) {
    ensure(snf.D(i, i) != 0, "quotient of lattices is infinite");
    if (snf.D(i, i) > 1) {
      orders.push_back(snf.D(i, i));
      keep.push_back(i);
    }
  }
  RatMatrix wr = to_rational(w);
  RatMatrix vals = wr.transpose() * t.values() * wr;
  RatMatrix sub(keep.size(), keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b) sub(a, b) = vals(keep[a], keep[b]);
  return LinkingForm(t.epsilon(), std::move(orders), std::move(sub));
}

}  // namespace

bool LinkingForm::is_nondegenerate() const {
  if (orders_.empty()) return true;
  // kernel of the adjoint: {x : Λᵀx integral}
  auto k = integral_preimage(values_.transpose());
  return lattice_index(k) == order();
}

std::vector<Integer> prime_factors(Integer n) {
  std::vector<Integer> ps;
  if (n < 0) n = -n;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::optional<Integer> primary_prime(const LinkingForm& t) {
  auto ps = prime_factors(t.order());
  if (ps.empty()) return std::nullopt;
  if (ps.size() > 1) throw PreconditionError("linking form is not p-primary");
  return ps.front();
}

std::vector<std::pair<Integer, LinkingForm>> p_primary_parts(const LinkingForm& t) {
  std::vector<std::pair<Integer, LinkingForm>> parts;
  const std::size_t n = t.generators();
  Integer exponent = 1;
  for (const auto& d : t.orders()) mpz_lcm(exponent.get_mpz_t(), exponent.get_mpz_t(), d.get_mpz_t());
  const IntMatrix d = diag_orders(t.orders());
  for (const auto& p : prime_factors(t.order())) {
    Integer m = exponent;
    while (m % p == 0) m /= p;
    IntMatrix mi = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) mi(i, i) = m;
    IntMatrix s = lattice_basis(hcat(mi, d));  // mT, the p-primary part
    parts.emplace_back(p, quotient(t, s, d));
  }
  return parts;
}

ReductionStep reduction_step_detailed(const LinkingForm& t) {
  auto p = primary_prime(t);
  if (!p) return ReductionStep{t, 1};
  const std::size_t n = t.generators();
  const IntMatrix d = diag_orders(t.orders());

  IntMatrix pi = IntMatrix::identity(n);
  IntMatrix torsion_p(n, n);  // T[p] = {x : px in D Z^n}
  for (std::size_t i = 0; i < n; ++i) {
    pi(i, i) = *p;
    Integer g;
    mpz_gcd(g.get_mpz_t(), t.orders()[i].get_mpz_t(), p->get_mpz_t());
    torsion_p(i, i) = t.orders()[i] / g;
  }
  IntMatrix pt = lattice_basis(hcat(pi, d));
  IntMatrix l = intersect(pt, torsion_p);
  const Integer l_order = lattice_index(d) / lattice_index(l);
  if (l_order == 1) return ReductionStep{t, 1};

  // L^⊥ = {x : xᵀ Λ l integral for every basis vector l of L}
  RatMatrix adj = (t.values() * to_rational(l)).transpose();
  IntMatrix perp = integral_preimage(adj);
  LinkingForm reduced = quotient(t, perp, l);
  return ReductionStep{std::move(reduced), l_order};
}

LinkingForm reduction_step(const LinkingForm& t) {
  auto step = reduction_step_detailed(t);
  if (t.is_nondegenerate()) ensure(step.result.is_nondegenerate(), "reduction step lost nondegeneracy");
  return std::move(step.result);
}

ElementaryReduction reduce_to_elementary(const LinkingForm& t) {
  ElementaryReduction out{primary_prime(t), {}, t};
  if (!out.prime) return out;
  // |T| strictly decreases, so log_p |T| + 1 steps always suffice
  std::size_t cap = 1;
  for (Integer n = t.order(); n > 1; n /= *out.prime) ++cap;
  for (std::size_t it = 0;; ++it) {
    if (it > cap) throw InternalError("linking reduction exceeded its iteration bound");
    auto step = reduction_step_detailed(out.result);
    if (step.sublagrangian_order == 1) break;
    ensure(step.result.order() < out.result.order(), "linking reduction did not decrease the order");
    out.result = step.result;
    out.steps.push_back(std::move(step));
  }
  const FinAbGroup g = out.result.group();
  for (const auto& d : g.invariant_factors())
    ensure(d == *out.prime, "reduced form is not elementary");
  return out;
}

FpForm as_fp_form(const LinkingForm& t, std::optional<Integer> prime) {
  auto p = primary_prime(t);
  if (p && prime && *p != *prime) throw PreconditionError("linking form is not primary for the given prime");
  if (!p) p = prime;
  FpForm out{p.value_or(Integer(2)), t.epsilon(), IntMatrix(t.generators(), t.generators())};
  for (const auto& d : t.orders())
    if (d != out.p) throw PreconditionError("linking form is not on an elementary abelian group in generator form");
  for (std::size_t i = 0; i < t.generators(); ++i)
    for (std::size_t j = 0; j < t.generators(); ++j) {
      Rational a = t.values()(i, j) * out.p;
      ensure(a.get_den() == 1, "elementary linking value with denominator other than p");
      out.gram(i, j) = a.get_num();
    }
  return out;
}

std::string WittDatum::group() const {
  switch (kind) {
    case Kind::odd_symmetric:
      return p % 4 == 3 ? "Z/4" : "Z/2+Z/2";
    case Kind::odd_symplectic:
      return "0";
    case Kind::two:
      return "Z/2";
  }
  return "";
}

int WittDatum::z4_element() const {
  if (kind != Kind::odd_symmetric || p % 4 != 3) return -1;
  return rank_mod2 + (disc_square ? 0 : 2);
}

std::string WittDatum::to_string() const {
  std::ostringstream os;
  os << "W(F_" << p << "): ";
  switch (kind) {
    case Kind::odd_symmetric:
      os << "rank " << rank_mod2 << " mod 2, disc " << (disc_square ? "square" : "nonsquare");
      if (z4_element() >= 0) os << ", element " << z4_element() << " of Z/4";
      break;
    case Kind::odd_symplectic:
      os << "symplectic, trivial";
      break;
    case Kind::two:
      os << "rank " << rank_mod2 << " mod 2";
      break;
  }
  return os.str();
}

WittDatum witt_class_fp(const FpForm& g) {
  const std::size_t r = g.gram.rows();
  Integer det = determinant(g.gram);
  Integer detp;
  mpz_fdiv_r(detp.get_mpz_t(), det.get_mpz_t(), g.p.get_mpz_t());
  if (r > 0 && detp == 0) throw PreconditionError("form over F_p is degenerate");
  WittDatum w{WittDatum::Kind::two, g.p, static_cast<int>(r % 2), true};
  if (g.p == 2) return w;
  if (g.epsilon == -1) {
    w.kind = WittDatum::Kind::odd_symplectic;
    return w;
  }
  w.kind = WittDatum::Kind::odd_symmetric;
  Integer disc = ((r * (r - 1) / 2) % 2 == 0) ? detp : Integer(g.p - detp);
  w.disc_square = r == 0 || mpz_legendre(disc.get_mpz_t(), g.p.get_mpz_t()) == 1;
  return w;
}

int derham_of_linking(const LinkingForm& t) { return static_cast<int>(dim_mod2_tensor(t.group()) % 2); }

int mapping_torus_derham(const Isometry& phi) {
  const auto& a = phi.matrix();
  IntMatrix m = IntMatrix::identity(a.rows()) - a;
  return static_cast<int>(dim_mod2_tensor(cokernel(m).torsion) % 2);
}

LinkingForm hyperbolic_linking(long p, int epsilon) {
  RatMatrix v(2, 2);
  v(0, 1) = Rational(1, p);
  v(1, 0) = Rational(epsilon, p);
  return LinkingForm(epsilon, {Integer(p), Integer(p)}, std::move(v));
}

LinkingForm orthogonal_sum(const LinkingForm& a, const LinkingForm& b) {
  if (a.epsilon() != b.epsilon()) throw PreconditionError("orthogonal sum of linking forms with different epsilon");
  IntVector orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  return LinkingForm(a.epsilon(), std::move(orders), block_diagonal(a.values(), b.values()));
}

LinkingForm random_linking_form(SplitMix64& rng, const RandomLinkingOptions& opt) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(opt.max_generators)));
    IntVector d;
    long total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      long p = rng.pick(opt.primes);
      long q = p;
      for (int e = static_cast<int>(rng.uniform(1, opt.max_exponent)); e > 1; --e) q *= p;
      if (total * q > opt.max_order) break;
      total *= q;
      d.emplace_back(q);
    }
    if (d.empty()) continue;
    const std::size_t m = d.size();
    RatMatrix v(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
        Rational x(Integer(rng.uniform(0, g.get_si() - 1)), g);
        x.canonicalize();
        v(i, j) = x;
        v(j, i) = opt.epsilon * x;
      }
      if (opt.epsilon == 1) {
        Rational x(Integer(rng.uniform(0, d[i].get_si() - 1)), d[i]);
        x.canonicalize();
        v(i, i) = x;
      } else if (d[i] % 2 == 0 && rng.coin()) {
        v(i, i) = Rational(1, 2);
      }
    }
    LinkingForm t(opt.epsilon, std::move(d), std::move(v));
    if (t.is_nondegenerate()) return t;
  }
  throw InternalError("could not generate a nondegenerate linking form");
}

}  // namespace fsl
