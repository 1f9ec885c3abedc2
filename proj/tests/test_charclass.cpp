#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fsl/charclass.hpp"
#include "fsl/error.hpp"
#include "fsl/rng.hpp"
#include "oracles.hpp"

using namespace fsl;

namespace {

Rational fact(unsigned n) {
  Integer f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

/// e_1..e_n of the given values (e_j = 0 past the number of values).
std::vector<Rational> elementary(const std::vector<Rational>& r, unsigned n) {
  std::vector<Rational> e(n + 1);
  e[0] = 1;
  for (const auto& x : r)
    for (unsigned j = n; j >= 1; --j) e[j] += e[j - 1] * x;
  return e;
}

/// Evaluate a polynomial in family f with f_j ↦ values[j].
Rational evaluate(const GradedPoly& poly, Family f, const std::vector<Rational>& values) {
  std::map<Monomial::Key, GradedPoly> images;
  for (unsigned j = 1; j <= poly.truncation(); ++j)
    images.emplace(Monomial::key(f, j),
                   GradedPoly::constant(j < values.size() ? values[j] : Rational(0), Domain::rational, poly.truncation()));
  const GradedPoly v = poly.in_domain(Domain::rational).substitute(images);
  for (const auto& [m, c] : v.terms()) REQUIRE(m.is_one());
  return v.coefficient(Monomial());
}

Rational power_sum(const std::vector<Rational>& r, unsigned i) {
  Rational s = 0;
  for (const auto& x : r) {
    Rational p = 1;
    for (unsigned k = 0; k < i; ++k) p *= x;
    s += p;
  }
  return s;
}

/// Bernoulli numbers B_0..B_n from Σ_{k<m+1} C(m+1,k) B_k = 0.
std::vector<Rational> bernoulli(unsigned n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    Rational s = 0;
    Integer c = 1;  // C(m+1, k)
    for (unsigned k = 0; k < m; ++k) {
      s += Rational(c) * b[k];
      c = c * (m + 1 - k) / (k + 1);
    }
    b[m] = -s / Rational(m + 1);
  }
  return b;
}

/// Coefficients of √z/tanh√z = Σ 2^{2n} B_{2n} z^n / (2n)!.
std::vector<Rational> l_series(unsigned n) {
  const auto b = bernoulli(2 * n);
  std::vector<Rational> q(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    Integer two = 1;
    two <<= 2 * k;
    q[k] = Rational(two) * b[2 * k] / fact(2 * k);
  }
  return q;
}

std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

GradedPoly w(unsigned i, unsigned n) { return GradedPoly::variable(Family::w, i, Domain::f2, n); }

/// e_k(t_1 + t_1², ..., t_m + t_m²) in F_2[t].
GradedPoly split_total_sq_of_e(unsigned k, unsigned m, unsigned n) {
  std::vector<GradedPoly> e(k + 1, GradedPoly(Domain::f2, n));
  e[0] = GradedPoly::constant(1, Domain::f2, n);
  for (unsigned i = 1; i <= m; ++i) {
    const GradedPoly t = GradedPoly::variable(Family::t, i, Domain::f2, n);
    const GradedPoly sqt = t + t * t;
    for (unsigned j = k; j >= 1; --j) e[j] += e[j - 1] * sqt;
  }
  return e[k];
}

/// w_j ↦ e_j(t_1..t_m).
std::map<Monomial::Key, GradedPoly> split_w(unsigned m, unsigned n) {
  std::map<Monomial::Key, GradedPoly> images;
  std::vector<GradedPoly> e(n + 1, GradedPoly(Domain::f2, n));
  e[0] = GradedPoly::constant(1, Domain::f2, n);
  for (unsigned i = 1; i <= m; ++i) {
    const GradedPoly t = GradedPoly::variable(Family::t, i, Domain::f2, n);
    for (unsigned j = n; j >= 1; --j) e[j] += e[j - 1] * t;
  }
  for (unsigned j = 1; j <= n; ++j) images.emplace(Monomial::key(Family::w, j), e[j]);
  return images;
}

}  // namespace

TEST_CASE("monomials and polynomial arithmetic") {
  const auto p1 = GradedPoly::variable(Family::p, 1);
  const auto p2 = GradedPoly::variable(Family::p, 2);
  CHECK((p1 * p1).max_weight() == 2);
  CHECK((p1 + p2).to_string() == "p1 + p2");
  CHECK((p1 - p1).is_zero());
  CHECK(Monomial::var(Family::x, 0, 3).weight() == 3);
  CHECK(Monomial::var(Family::p, 3).weight() == 3);
  GradedPoly small(Domain::rational, 2);
  small.add_term(Monomial::var(Family::p, 3), 1);
  CHECK(small.is_zero());  // above truncation
  GradedPoly f2(Domain::f2);
  f2.add_term(Monomial::var(Family::w, 1), 3);
  CHECK(f2.coefficient(Monomial::var(Family::w, 1)) == 1);
  f2.add_term(Monomial::var(Family::w, 1), 1);
  CHECK(f2.is_zero());
}

TEST_CASE("Z_(2) closure is enforced") {
  GradedPoly z(Domain::z2_local);
  CHECK_NOTHROW(z.add_term(Monomial(), Rational(1, 3)));
  CHECK_THROWS(z.add_term(Monomial(), Rational(1, 2)));
  CHECK(nu2(Rational(12, 5)) == 2);
  CHECK(nu2(Rational(3, 8)) == -3);
  CHECK(divisible_by_4_locally(Rational(4, 3)));
  CHECK_FALSE(divisible_by_4_locally(Rational(2, 3)));
  CHECK(mod2(Rational(5, 3)) == 1);
  CHECK_THROWS(mod2(Rational(1, 2)));
}

TEST_CASE("inverse total class") {
  const auto wt = universal_total(Family::w, Domain::f2, 6);
  const auto inv = inverse_total(wt);
  CHECK((wt * inv) == GradedPoly::constant(1, Domain::f2, 6));
  const auto pt = universal_total(Family::p, Domain::rational, 8);
  CHECK((pt * inverse_total(pt)) == GradedPoly::constant(1, Domain::rational, 8));
}

TEST_CASE("Newton polynomials: one variable and rational roots") {
  for (unsigned i = 1; i <= 8; ++i) {
    // one root t: e_1 = t, others 0 gives t^i
    CHECK(evaluate(newton_polynomial(i), Family::e, {0, 1}) == 1);
    CHECK(evaluate(newton_polynomial(i), Family::e, {0, 3}) == power_sum({3}, i));
  }
  SplitMix64 rng(41);
  for (int t = 0; t < 30; ++t) {
    std::vector<Rational> roots;
    const long m = rng.uniform(1, 5);
    for (long k = 0; k < m; ++k) roots.push_back(oracle::ratio(rng.uniform(-6, 6), rng.uniform(1, 4)));
    for (unsigned i = 1; i <= 9; ++i)
      CHECK(evaluate(newton_polynomial(i), Family::e, elementary(roots, i)) == power_sum(roots, i));
  }
  CHECK(newton_polynomial(2).to_string() == "-2*e2 + e1^2");
  CHECK_THROWS_AS(newton_polynomial(0), InputError);
}

TEST_CASE("Chern character and Adams naturality on roots") {
  CHECK(chern_character(1).to_string() == "c1");
  SplitMix64 rng(42);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> roots, doubled;
    const long m = rng.uniform(1, 4);
    for (long k = 0; k < m; ++k) {
      roots.emplace_back(rng.uniform(-5, 5));
      doubled.push_back(roots.back() * 2);
    }
    for (unsigned i = 1; i <= 8; ++i) {
      const auto ch = chern_character(i);
      const Rational v = evaluate(ch, Family::c, elementary(roots, i));
      CHECK(v == power_sum(roots, i) / fact(i));
      Integer two = 1;
      two <<= i;
      CHECK(evaluate(ch, Family::c, elementary(doubled, i)) == Rational(two) * v);
    }
  }
}

TEST_CASE("tilde ph against Pontryagin roots") {
  CHECK(tilde_ph(1).in_domain(Domain::rational) == GradedPoly::variable(Family::p, 1) * Rational(4));
  SplitMix64 rng(43);
  for (unsigned i = 1; i <= 6; ++i) {
    const GradedPoly f = tilde_ph(i);
    CHECK(f.is_2_integral());
    CHECK(f.divisible_by_4_locally());
    for (int t = 0; t < 5; ++t) {
      std::vector<Rational> z;
      const long m = rng.uniform(1, 4);
      for (long k = 0; k < m; ++k) z.emplace_back(rng.uniform(-4, 4));
      Integer two = 1;
      two <<= 2 * i + 1;
      CHECK(evaluate(f, Family::p, elementary(z, i)) == Rational(two) * power_sum(z, i) / fact(2 * i));
    }
  }
  CHECK(ch_psi2_real_divisibility(2));
  CHECK(ch_psi2_real_divisibility(3));
}

TEST_CASE("L-genus: known polynomials and the Bernoulli series oracle") {
  CHECK(l_polynomial(1) == GradedPoly::variable(Family::p, 1) * Rational(1, 3));
  const auto p1 = GradedPoly::variable(Family::p, 1);
  const auto p2 = GradedPoly::variable(Family::p, 2);
  CHECK(l_polynomial(2) == (p2 * Rational(7) - p1 * p1) * Rational(1, 45));
  const auto q = l_series(8);
  const auto l = MultiplicativeSequence::l_genus(8);
  CHECK(l.series() == q);

  // Π Q(a_j s): coefficient of s^k must equal L_k(e(a))
  SplitMix64 rng(44);
  for (int t = 0; t < 10; ++t) {
    std::vector<Rational> a;
    const long m = rng.uniform(1, 4);
    for (long k = 0; k < m; ++k) a.push_back(oracle::ratio(rng.uniform(-3, 3), rng.uniform(1, 2)));
    std::vector<Rational> prod(9);
    prod[0] = 1;
    for (const auto& x : a) {
      std::vector<Rational> scaled(9);
      Rational pw = 1;
      for (unsigned k = 0; k <= 8; ++k, pw *= x) scaled[k] = q[k] * pw;
      prod = series_mul(prod, scaled);
    }
    for (unsigned k = 1; k <= 8; ++k) CHECK(evaluate(l.polynomial(k), Family::p, elementary(a, k)) == prod[k]);
  }
}

TEST_CASE("L-genus is multiplicative under Whitney sum") {
  // p(E ⊕ F) = p(E) p(F) with p(E) in p, p(F) in e standing for a second set
  const unsigned n = 8;
  const auto l = MultiplicativeSequence::l_genus(n);
  const auto pe = universal_total(Family::p, Domain::rational, n);
  const auto pf = universal_total(Family::e, Domain::rational, n);
  const auto sum = pe * pf;
  std::map<Monomial::Key, GradedPoly> to_sum, to_f;
  for (unsigned j = 1; j <= n; ++j) {
    to_sum.emplace(Monomial::key(Family::p, j), sum.homogeneous(j));
    to_f.emplace(Monomial::key(Family::p, j), GradedPoly::variable(Family::e, j, Domain::rational, n));
  }
  const auto le = l.total();
  CHECK(le.substitute(to_sum) == le * le.substitute(to_f));
}

TEST_CASE("L polynomials are 2-integral and give signature 1 on CP^2k") {
  for (unsigned k = 1; k <= 6; ++k) CHECK(l_polynomial(k).is_2_integral());
  for (unsigned k = 1; k <= 5; ++k) CHECK(hirzebruch_signature_cp(k) == 1);
}

TEST_CASE("power sums and Legendre") {
  for (unsigned i = 1; i <= 10; ++i) CHECK(power_sum_congruence_check(i));
  CHECK(legendre_check(6).nu2 == 2);
  CHECK(legendre_check(6).s2 == 2);
  for (unsigned long i = 1; i <= 200; ++i) {
    // ν₂(i!) by the direct sum ⌊i/2⌋ + ⌊i/4⌋ + ...
    long fact2 = 0;
    for (unsigned long q = 2; q <= i; q *= 2) fact2 += static_cast<long>(i / q);
    CHECK(legendre_check(i).nu2 == static_cast<long>(i) - fact2);
    CHECK(legendre_check(i).nu2 == legendre_check(i).s2);
  }
  CHECK_FALSE(legendre_sweep(5000).has_value());
}

TEST_CASE("Steenrod squares agree with the splitting principle") {
  const unsigned n = 10;
  const unsigned m = 5;
  const SteenrodAction s(n);
  const auto images = split_w(m, n);
  for (unsigned k = 1; k <= 5; ++k) {
    const GradedPoly total = split_total_sq_of_e(k, m, n);
    for (unsigned i = 0; i <= k && k + i <= n; ++i) {
      const GradedPoly lhs = s.sq(i, w(k, n)).substitute(images);
      CHECK(lhs == total.homogeneous(k + i));
    }
  }
}

TEST_CASE("Steenrod squares: Sq0, instability, Cartan") {
  const unsigned n = 12;
  const SteenrodAction s(n);
  SplitMix64 rng(45);
  for (int t = 0; t < 25; ++t) {
    // random monomials a, b in w's
    auto random_mono = [&]() {
      GradedPoly f = GradedPoly::constant(1, Domain::f2, n);
      const long factors = rng.uniform(1, 2);
      for (long j = 0; j < factors; ++j) f = f * w(static_cast<unsigned>(rng.uniform(1, 3)), n);
      return f;
    };
    const GradedPoly a = random_mono();
    const GradedPoly b = random_mono();
    const unsigned da = a.max_weight();
    CHECK(s.sq(0, a) == a);
    CHECK(s.sq(da, a) == a * a);
    CHECK(s.sq(da + 1, a).is_zero());
    for (unsigned k = 0; k <= 4; ++k) {
      GradedPoly rhs(Domain::f2, n);
      for (unsigned i = 0; i <= k; ++i) rhs += s.sq(i, a) * s.sq(k - i, b);
      CHECK(s.sq(k, a * b) == rhs);
    }
  }
  // Sq on x: Sq^1 x^2 = 0, Sq^1 x^3 = x^4
  const auto x = GradedPoly::variable(Family::x, 0, Domain::f2, n);
  CHECK(s.sq(1, x * x).is_zero());
  CHECK(s.sq(1, x * x * x) == x.pow(4));
}

TEST_CASE("Wu class") {
  const unsigned n = 8;
  const auto wt = universal_total(Family::w, Domain::f2, n);
  const auto v = wu_class(wt, n);
  CHECK(v.homogeneous(1) == w(1, n));
  CHECK(v.homogeneous(2) == w(2, n));
  const SteenrodAction s(n);
  CHECK(s.total(v) == inverse_total(wt));
  CHECK(thom_identity_check(6));
  for (unsigned k = 0; k <= 2; ++k) CHECK(adem_check(k, 6));
}

TEST_CASE("de Rham class lives in degrees 1 mod 4") {
  const unsigned n = 13;
  const auto v = wu_class(universal_total(Family::w, Domain::f2, n), n);
  const auto d = derham_class(v, n);
  for (const auto& [m, c] : d.terms()) CHECK(m.weight() % 4 == 1);
  CHECK_FALSE(d.homogeneous(5).is_zero());
}

TEST_CASE("real projective spaces") {
  const auto x = GradedPoly::variable(Family::x, 0, Domain::f2, 3);
  CHECK(rp_tangent_sw(3) == GradedPoly::constant(1, Domain::f2, 3));  // (1+x)^4
  CHECK(rp_tangent_sw(2) == GradedPoly::constant(1, Domain::f2, 2) + x.with_truncation(2) + x.pow(2).with_truncation(2));
  for (unsigned k = 1; k <= 5; ++k) CHECK(rp_dold_integral(k) == 1);
}
