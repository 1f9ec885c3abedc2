#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fsl/linking.hpp"
#include "oracles.hpp"

using namespace fsl;

namespace {

LinkingForm cyclic(long d, long num, long den, int eps = 1) {
  RatMatrix v(1, 1);
  v(0, 0) = oracle::ratio(num, den);
  return LinkingForm(eps, IntVector{Integer(d)}, v);
}

/// All elements of T as coefficient vectors.
std::vector<IntVector> elements(const LinkingForm& t) {
  std::vector<IntVector> out{IntVector(t.generators(), 0)};
  for (std::size_t i = 0; i < t.generators(); ++i) {
    std::vector<IntVector> next;
    for (const auto& x : out)
      for (long k = 0; k < t.orders()[i]; ++k) {
        IntVector y = x;
        y[i] = k;
        next.push_back(y);
      }
    out = std::move(next);
  }
  return out;
}

bool brute_nondegenerate(const LinkingForm& t) {
  const auto all = elements(t);
  for (const auto& x : all) {
    bool zero = true;
    for (auto v : x) zero = zero && v == 0;
    if (zero) continue;
    bool pairs = false;
    for (const auto& y : all) pairs = pairs || frac(t(x, y)) != 0;
    if (!pairs) return false;
  }
  return true;
}

/// Multiset of ℓ(x, x) over T: an isometry invariant.
std::map<Rational, long> self_values(const LinkingForm& t) {
  std::map<Rational, long> m;
  for (const auto& x : elements(t)) ++m[frac(t(x, x))];
  return m;
}

/// |L^⊥/L| and the ℓ(x,x) distribution on L^⊥/L by enumeration, for
/// L = pT ∩ T[p].
std::pair<long, std::map<Rational, long>> brute_reduction(const LinkingForm& t, long p) {
  const auto all = elements(t);
  auto reduce = [&](IntVector x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] %= t.orders()[i];
      if (x[i] < 0) x[i] += t.orders()[i];
    }
    return x;
  };
  std::set<IntVector> pt, tp;
  for (const auto& x : all) {
    IntVector px = x;
    for (auto& v : px) v *= p;
    pt.insert(reduce(px));
    bool torsion = true;
    for (std::size_t i = 0; i < x.size(); ++i) torsion = torsion && (x[i] * p) % t.orders()[i] == 0;
    if (torsion) tp.insert(x);
  }
  std::vector<IntVector> l;
  for (const auto& x : pt)
    if (tp.count(x)) l.push_back(x);
  std::vector<IntVector> perp;
  for (const auto& x : all) {
    bool ok = true;
    for (const auto& y : l) ok = ok && frac(t(x, y)) == 0;
    if (ok) perp.push_back(x);
  }
  const long order = static_cast<long>(perp.size() / l.size());
  // ℓ(x,x) is constant on cosets x + L for x ∈ L^⊥; weight by 1/|L|
  std::map<Rational, long> values;
  for (const auto& x : perp) ++values[frac(t(x, x))];
  for (auto& [k, v] : values) v /= static_cast<long>(l.size());
  return {order, values};
}

}  // namespace

TEST_CASE("linking form validation") {
  CHECK_THROWS_AS(cyclic(4, 1, 8), InputError);         // 4·(1/8) not integral
  CHECK_THROWS_AS(cyclic(0, 0, 1), InputError);         // order must be positive
  CHECK_THROWS_AS(LinkingForm(1, IntVector{2, 2}, RatMatrix{{0, Rational(1, 2)}, {0, 0}}), InputError);
  CHECK(cyclic(4, 5, 4).values()(0, 0) == Rational(1, 4));  // reduced mod 1
  CHECK(cyclic(2, 1, 2, -1).is_nondegenerate());
  CHECK_FALSE(cyclic(4, 1, 2, -1).is_nondegenerate());
}

TEST_CASE("nondegeneracy agrees with enumeration") {
  SplitMix64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const long d1 = rng.pick(std::vector<long>{2, 3, 4, 6, 9});
    const long d2 = rng.pick(std::vector<long>{2, 3, 4, 6});
    const int eps = rng.coin() ? 1 : -1;
    const long g = std::gcd(d1, d2);
    RatMatrix v(2, 2);
    auto self = [&](long d) {
      if (eps == 1) return oracle::ratio(rng.uniform(0, d - 1), d);
      return d % 2 == 0 ? oracle::ratio(rng.uniform(0, 1), 2) : Rational(0);
    };
    v(0, 0) = self(d1);
    v(1, 1) = self(d2);
    v(0, 1) = oracle::ratio(rng.uniform(0, g - 1), g);
    v(1, 0) = eps * v(0, 1);
    const LinkingForm f(eps, IntVector{d1, d2}, v);
    CHECK(f.is_nondegenerate() == brute_nondegenerate(f));
  }
}

TEST_CASE("p-primary parts") {
  const auto parts = p_primary_parts(cyclic(6, 1, 6));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first == 2);
  CHECK(parts[0].second.order() == 2);
  CHECK(self_values(parts[0].second) == self_values(cyclic(2, 1, 2)));
  CHECK(parts[1].first == 3);
  CHECK(self_values(parts[1].second) == self_values(cyclic(3, 2, 3)));

  const auto five = p_primary_parts(cyclic(5, 1, 5));
  REQUIRE(five.size() == 1);
  CHECK(five[0].first == 5);
  CHECK(self_values(five[0].second) == self_values(cyclic(5, 1, 5)));

  const LinkingForm diag(1, IntVector{2, 3}, RatMatrix{{Rational(1, 2), 0}, {0, Rational(1, 3)}});
  CHECK(p_primary_parts(diag).size() == 2);

  SplitMix64 rng(32);
  for (int t = 0; t < 30; ++t) {
    RandomLinkingOptions opt;
    opt.max_order = 200;
    const LinkingForm f = random_linking_form(rng, opt);
    Integer product = 1;
    std::map<Rational, long> combined{{Rational(0), 1}};
    for (const auto& [p, part] : p_primary_parts(f)) {
      product *= part.order();
      CHECK(part.is_nondegenerate());
      CHECK(primary_prime(part) == p);
      // orthogonal sum: ℓ(x+y, x+y) = ℓ(x,x) + ℓ(y,y)
      std::map<Rational, long> next;
      for (const auto& [a, ca] : combined)
        for (const auto& [b, cb] : self_values(part)) next[frac(a + b)] += ca * cb;
      combined = next;
    }
    CHECK(product == f.order());
    CHECK(combined == self_values(f));
  }
}

TEST_CASE("reduction step examples") {
  CHECK(reduction_step(cyclic(4, 1, 4)).is_trivial());
  const auto same = reduction_step_detailed(cyclic(2, 1, 2));
  CHECK(same.sublagrangian_order == 1);
  CHECK(same.result.order() == 2);
  // the degenerate skew example still reduces to (Z/2, 1/2)
  const auto skew = reduction_step(cyclic(4, 1, 2, -1));
  CHECK(skew.orders() == IntVector{2});
  CHECK(skew.values()(0, 0) == Rational(1, 2));
  CHECK(skew.epsilon() == -1);
}

TEST_CASE("reduction step agrees with enumeration of L-perp / L") {
  SplitMix64 rng(33);
  int checked = 0;
  for (int t = 0; t < 80 && checked < 40; ++t) {
    RandomLinkingOptions opt;
    opt.epsilon = rng.coin() ? 1 : -1;
    opt.max_order = 600;
    opt.max_generators = 2;
    const LinkingForm f = random_linking_form(rng, opt);
    for (const auto& [p, part] : p_primary_parts(f)) {
      if (part.order() > 400) continue;
      const auto [order, values] = brute_reduction(part, p.get_si());
      const LinkingForm r = reduction_step(part);
      CHECK(r.order() == order);
      CHECK(self_values(r) == values);
      CHECK(r.is_nondegenerate());
      ++checked;
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("reduce to elementary") {
  const auto nine = reduce_to_elementary(cyclic(9, 1, 9));
  CHECK(nine.result.is_trivial());
  CHECK(nine.steps.size() == 1);
  const auto three = reduce_to_elementary(cyclic(3, 1, 3));
  CHECK(three.steps.empty());
  CHECK(three.result.orders() == IntVector{3});
  const auto skew = reduce_to_elementary(cyclic(4, 1, 2, -1));
  CHECK(skew.result.orders() == IntVector{2});
  CHECK(skew.result.values()(0, 0) == Rational(1, 2));
  CHECK(reduce_to_elementary(cyclic(4, 1, 4)).result.is_trivial());
  CHECK_THROWS_AS(reduce_to_elementary(cyclic(6, 1, 6)), PreconditionError);
}

TEST_CASE("as_fp_form") {
  auto g = as_fp_form(cyclic(3, 2, 3));
  CHECK(g.p == 3);
  CHECK(g.gram == IntMatrix{{2}});
  const LinkingForm h(1, IntVector{5, 5}, RatMatrix{{0, Rational(1, 5)}, {Rational(1, 5), 0}});
  CHECK(as_fp_form(h).gram == IntMatrix{{0, 1}, {1, 0}});
  CHECK(as_fp_form(cyclic(2, 1, 2)).gram == IntMatrix{{1}});
  CHECK_THROWS_AS(as_fp_form(cyclic(9, 1, 9)), PreconditionError);
  CHECK(as_fp_form(LinkingForm::trivial(1), Integer(7)).p == 7);
}

TEST_CASE("Witt classes over F_p") {
  const auto hyp = witt_class_fp(FpForm{3, 1, IntMatrix{{1, 0}, {0, 2}}});
  CHECK(hyp.rank_mod2 == 0);
  CHECK(hyp.disc_square);
  CHECK(hyp.is_trivial());
  const auto one = witt_class_fp(FpForm{3, 1, IntMatrix{{1}}});
  CHECK(one.rank_mod2 == 1);
  CHECK(one.group() == "Z/4");
  CHECK_FALSE(oracle::has_isotropic_vector(IntMatrix{{1}}, 3));
  CHECK(oracle::has_isotropic_vector(IntMatrix{{1, 0}, {0, 2}}, 3));
  const auto two5 = witt_class_fp(FpForm{5, 1, IntMatrix{{2}}});
  CHECK(two5.rank_mod2 == 1);
  CHECK_FALSE(two5.disc_square);
  CHECK(two5.group() == "Z/2+Z/2");
  CHECK(witt_class_fp(FpForm{2, 1, IntMatrix{{1}}}).kind == WittDatum::Kind::two);
  CHECK_THROWS_AS(witt_class_fp(FpForm{3, 1, IntMatrix{{0}}}), PreconditionError);
}

TEST_CASE("Witt datum: hyperbolic iff anisotropic part empty, checked by enumeration") {
  // rank-2 forms over F_p: Witt-trivial iff isotropic
  for (long p : {3L, 5L, 7L}) {
    for (long a = 1; a < p; ++a)
      for (long b = 1; b < p; ++b) {
        const IntMatrix g{{a, 0}, {0, b}};
        CHECK(witt_class_fp(FpForm{p, 1, g}).is_trivial() == oracle::has_isotropic_vector(g, p));
        const auto w = witt_class_fp(FpForm{p, 1, g});
        CHECK(w.disc_square == oracle::is_square_mod(-a * b, p));
      }
  }
}

TEST_CASE("Witt stability under adding a hyperbolic plane") {
  SplitMix64 rng(34);
  for (int t = 0; t < 100; ++t) {
    RandomLinkingOptions opt;
    opt.primes = {3, 5, 7};
    opt.max_order = 2000;
    const LinkingForm f = random_linking_form(rng, opt);
    for (const auto& [p, part] : p_primary_parts(f)) {
      const auto w = witt_class_fp(as_fp_form(reduce_to_elementary(part).result, p));
      const auto s = orthogonal_sum(part, hyperbolic_linking(p.get_si(), 1));
      const auto ws = witt_class_fp(as_fp_form(reduce_to_elementary(s).result, p));
      CHECK(w.rank_mod2 == ws.rank_mod2);
      CHECK(w.disc_square == ws.disc_square);
    }
  }
}

TEST_CASE("de Rham bit of linking forms") {
  CHECK(derham_of_linking(cyclic(2, 1, 2)) == 1);
  CHECK(derham_of_linking(cyclic(3, 1, 3)) == 0);
  const LinkingForm z2z4(1, IntVector{2, 4}, RatMatrix{{Rational(1, 2), 0}, {0, Rational(1, 4)}});
  CHECK(derham_of_linking(z2z4) == 0);
}

TEST_CASE("skew 2-primary: de Rham bit survives reduction (100 trials)") {
  SplitMix64 rng(35);
  int seen = 0;
  for (int t = 0; t < 100; ++t) {
    RandomLinkingOptions opt;
    opt.epsilon = -1;
    opt.primes = {2};
    opt.max_order = 4096;
    const LinkingForm f = random_linking_form(rng, opt);
    const LinkingForm r = reduction_step(f);
    CHECK(r.is_nondegenerate());
    CHECK(derham_of_linking(r) == derham_of_linking(f));
    ++seen;
  }
  CHECK(seen == 100);
}

TEST_CASE("termination bound and strict decrease") {
  SplitMix64 rng(36);
  for (int t = 0; t < 100; ++t) {
    RandomLinkingOptions opt;
    opt.epsilon = rng.coin() ? 1 : -1;
    const LinkingForm f = random_linking_form(rng, opt);
    for (const auto& [p, part] : p_primary_parts(f)) {
      const auto red = reduce_to_elementary(part);
      Integer prev = part.order();
      for (const auto& s : red.steps) {
        CHECK(s.result.order() < prev);
        CHECK(s.sublagrangian_order > 1);
        prev = s.result.order();
      }
      std::size_t cap = 1;
      for (Integer n = part.order(); n > 1; n /= p) ++cap;
      CHECK(red.steps.size() <= cap);
    }
  }
}

TEST_CASE("mapping torus de Rham invariant r1") {
  CHECK(mapping_torus_derham(Isometry(EpsSymmetricForm::identity(2), IntMatrix::identity(2))) == 0);
  CHECK(mapping_torus_derham(Isometry(EpsSymmetricForm::diagonal({1}), IntMatrix{{-1}})) == 1);
  CHECK(mapping_torus_derham(Isometry(EpsSymmetricForm::diagonal({-1}), IntMatrix{{-1}})) == 1);
  CHECK(mapping_torus_derham(Isometry(EpsSymmetricForm::identity(2), IntMatrix{{0, -1}, {1, 0}})) == 1);
}

TEST_CASE("r1 agrees with determinantal divisors and is a homomorphism on symmetric forms") {
  SplitMix64 rng(37);
  auto oracle_r1 = [](const IntMatrix& a) {
    const IntMatrix m = IntMatrix::identity(a.rows()) - a;
    long even = 0;
    for (const auto& d : oracle::invariant_factors_by_minors(m)) even += d % 2 == 0;
    return static_cast<int>(even % 2);
  };
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
    std::vector<long> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(rng.coin() ? 1 : -1);
    const auto f = EpsSymmetricForm::diagonal(d);
    const Isometry a = random_isometry(f, rng, static_cast<std::size_t>(rng.uniform(0, 8)));
    const Isometry b = random_isometry(f, rng, static_cast<std::size_t>(rng.uniform(0, 8)));
    CHECK(mapping_torus_derham(a) == oracle_r1(a.matrix()));
    CHECK(mapping_torus_derham(a.compose(b)) == (mapping_torus_derham(a) ^ mapping_torus_derham(b)));
  }
}

TEST_CASE("r1 is not additive on the symplectic group") {
  // outside its domain: T = [[1,1],[0,1]] has r1 = 0, ψ has r1 = 1, Tψ has r1 = 0
  const auto h = EpsSymmetricForm::hyperbolic(1, -1);
  const Isometry t(h, IntMatrix{{1, 1}, {0, 1}});
  const Isometry psi(h, IntMatrix{{1, 1}, {-2, -1}});
  CHECK(mapping_torus_derham(t) == 0);
  CHECK(mapping_torus_derham(psi) == 1);
  CHECK(mapping_torus_derham(t.compose(psi)) == 0);
}

TEST_CASE("r1 of -I depends on the parity of the rank") {
  CHECK(mapping_torus_derham(Isometry(EpsSymmetricForm::diagonal({1, 1}), IntMatrix{{-1, 0}, {0, -1}})) == 0);
  CHECK(mapping_torus_derham(Isometry(EpsSymmetricForm::diagonal({1, -1, 1}), IntMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}})) == 1);
}
