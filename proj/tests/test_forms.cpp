#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fsl/forms.hpp"
#include "oracles.hpp"

using namespace fsl;

namespace {

RatMatrix e8_gram() {
  return to_rational(IntMatrix{{2, -1, 0, 0, 0, 0, 0, 0},
                               {-1, 2, -1, 0, 0, 0, 0, 0},
                               {0, -1, 2, -1, 0, 0, 0, 0},
                               {0, 0, -1, 2, -1, 0, 0, 0},
                               {0, 0, 0, -1, 2, -1, 0, -1},
                               {0, 0, 0, 0, -1, 2, -1, 0},
                               {0, 0, 0, 0, 0, -1, 2, 0},
                               {0, 0, 0, 0, -1, 0, 0, 2}});
}

RatMatrix random_symmetric(SplitMix64& rng, std::size_t n, long bound) {
  RatMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = rng.uniform(-bound, bound);
  return g;
}

/// Small integer vector v != 0 with B(v,v) = 0, entries in [-5, 5].
std::optional<RatVector> find_isotropic(const EpsSymmetricForm& f, SplitMix64& rng) {
  for (int attempt = 0; attempt < 4000; ++attempt) {
    RatVector v(f.rank());
    bool nz = false;
    for (auto& x : v) {
      x = rng.uniform(-5, 5);
      nz = nz || x != 0;
    }
    if (nz && f(v, v) == 0) return v;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("signature examples") {
  CHECK(signature(EpsSymmetricForm::identity(3)) == 3);
  CHECK(signature(EpsSymmetricForm::hyperbolic(1, 1)) == 0);
  const EpsSymmetricForm e8(1, e8_gram());
  CHECK(determinant(e8.gram()) == 1);
  CHECK(signature(e8) == 8);
  CHECK(oracle::signature_by_eigen_signs(e8.gram()) == 8);
  CHECK_THROWS_AS(signature(EpsSymmetricForm::hyperbolic(1, -1)), PreconditionError);
  // degenerate: radical ignored
  CHECK(signature(EpsSymmetricForm::diagonal({1, 0, -1, 1})) == 1);
}

TEST_CASE("form validation") {
  CHECK_THROWS_AS(EpsSymmetricForm(1, RatMatrix{{0, 1}, {2, 0}}), InputError);
  CHECK_THROWS_AS(EpsSymmetricForm(-1, RatMatrix{{1, 0}, {0, 1}}), InputError);
  CHECK_THROWS_AS(EpsSymmetricForm(2, RatMatrix{{1}}), InputError);
  CHECK_NOTHROW(EpsSymmetricForm(-1, RatMatrix{{0, 3}, {-3, 0}}));
}

TEST_CASE("radical") {
  CHECK(radical(EpsSymmetricForm::diagonal({1, 0})).size() == 1);
  CHECK(radical(EpsSymmetricForm::identity(2)).empty());
  const auto r = radical(EpsSymmetricForm(1, RatMatrix{{2, 4}, {4, 8}}));
  REQUIRE(r.size() == 1);
  // proportional to (2, -1)
  CHECK(r[0][0] * Rational(-1) == r[0][1] * Rational(2));
  CHECK(is_nondegenerate(EpsSymmetricForm::identity(2)));
  CHECK_FALSE(is_nondegenerate(EpsSymmetricForm::diagonal({1, 0})));
}

TEST_CASE("orthogonal sum") {
  const auto s = orthogonal_sum(EpsSymmetricForm::diagonal({1}), EpsSymmetricForm::diagonal({-1}));
  CHECK(s.gram() == RatMatrix{{1, 0}, {0, -1}});
  CHECK(signature(s) == 0);
  const EpsSymmetricForm e8(1, e8_gram());
  CHECK(signature(orthogonal_sum(e8, e8)) == 16);
  const EpsSymmetricForm empty(1, RatMatrix());
  CHECK(orthogonal_sum(e8, empty) == e8);
  CHECK_THROWS_AS(orthogonal_sum(e8, EpsSymmetricForm::hyperbolic(1, -1)), PreconditionError);

  SplitMix64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const EpsSymmetricForm a(1, random_symmetric(rng, static_cast<std::size_t>(rng.uniform(1, 4)), 3));
    const EpsSymmetricForm b(1, random_symmetric(rng, static_cast<std::size_t>(rng.uniform(1, 4)), 3));
    const auto sum = orthogonal_sum(a, b);
    CHECK(signature(sum) == signature(a) + signature(b));
    CHECK(radical(sum).size() == radical(a).size() + radical(b).size());
  }
}

TEST_CASE("Sylvester invariance under 200 unimodular congruences") {
  SplitMix64 rng(22);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
    const RatMatrix g = random_symmetric(rng, n, 5);
    const RatMatrix a = to_rational(random_unimodular(n, rng, 10));
    const long s = signature(EpsSymmetricForm(1, g));
    CHECK(s == oracle::signature_by_eigen_signs(g));
    CHECK(signature(EpsSymmetricForm(1, a.transpose() * g * a)) == s);
  }
}

TEST_CASE("sublagrangian reduction preserves signature and drops rank by 2|L|") {
  SplitMix64 rng(23);
  int reduced = 0;
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 8));
    const EpsSymmetricForm f(1, random_symmetric(rng, n, 3));
    if (!is_nondegenerate(f)) continue;
    auto v = find_isotropic(f, rng);
    if (!v) continue;  // e.g. definite forms
    const auto g = sublagrangian_reduce(f, {*v});
    CHECK(g.rank() == n - 2);
    CHECK(signature(g) == signature(f));
    CHECK(is_nondegenerate(g));
    ++reduced;
  }
  CHECK(reduced > 30);

  // two-dimensional sublagrangian in H(2)
  const auto h = EpsSymmetricForm::hyperbolic(2, 1);
  const auto g = sublagrangian_reduce(h, {RatVector{1, 0, 0, 0}, RatVector{0, 1, 0, 0}});
  CHECK(g.rank() == 0);
  // skew forms reduce too
  const auto s = sublagrangian_reduce(EpsSymmetricForm::hyperbolic(2, -1), {RatVector{1, 0, 0, 0}});
  CHECK(s.rank() == 2);
  CHECK(s.epsilon() == -1);
  CHECK(is_nondegenerate(s));
}

TEST_CASE("sublagrangian preconditions") {
  const auto h = EpsSymmetricForm::hyperbolic(1, 1);
  CHECK_THROWS_AS(sublagrangian_reduce(h, {RatVector{1, 1}}), PreconditionError);  // not isotropic
  CHECK_THROWS_AS(sublagrangian_reduce(h, {RatVector{1, 0}, RatVector{2, 0}}), PreconditionError);
  CHECK_THROWS_AS(sublagrangian_reduce(EpsSymmetricForm::diagonal({1, 0}), {RatVector{0, 1}}), PreconditionError);
}

TEST_CASE("isometries") {
  const auto h = EpsSymmetricForm::hyperbolic(1, -1);
  CHECK(is_isometry(h, IntMatrix{{1, 1}, {0, 1}}));
  CHECK_FALSE(is_isometry(h, IntMatrix{{2, 0}, {0, 1}}));
  CHECK_THROWS_AS(Isometry(h, IntMatrix{{1, 0}, {1, 2}}), PreconditionError);
  const Isometry phi(h, IntMatrix{{1, 1}, {0, 1}});
  CHECK(phi.compose(phi.inverse()).matrix() == IntMatrix::identity(2));
}

TEST_CASE("random isometries are isometries") {
  SplitMix64 rng(24);
  CHECK(random_isometry(EpsSymmetricForm::hyperbolic(2, -1), rng, 0).matrix() == IntMatrix::identity(4));
  for (int t = 0; t < 100; ++t) {
    const auto g = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto h = EpsSymmetricForm::hyperbolic(g, -1);
    const IntMatrix a = random_isometry(h, rng, static_cast<std::size_t>(rng.uniform(0, 10))).matrix();
    const RatMatrix ar = to_rational(a);
    CHECK(ar.transpose() * h.gram() * ar == h.gram());
    if (g == 1) CHECK(determinant(a) == 1);  // Sp_2(Z) = SL_2(Z)
    std::vector<long> d;
    for (std::size_t i = 0; i < 2 * g; ++i) d.push_back(rng.coin() ? 1 : -1);
    const auto f = EpsSymmetricForm::diagonal(d);
    const IntMatrix b = random_isometry(f, rng, static_cast<std::size_t>(rng.uniform(0, 10))).matrix();
    const RatMatrix br = to_rational(b);
    CHECK(br.transpose() * f.gram() * br == f.gram());
  }
  // identity form: only signed permutations are isometries
  const IntMatrix p = random_isometry(EpsSymmetricForm::identity(2), 99, 6).matrix();
  for (std::size_t i = 0; i < 2; ++i) {
    int nz = 0;
    for (std::size_t j = 0; j < 2; ++j) nz += p(i, j) != 0;
    CHECK(nz == 1);
  }
  CHECK_THROWS_AS(random_isometry(EpsSymmetricForm(1, RatMatrix{{2}}), rng, 3), PreconditionError);
}

TEST_CASE("det plus/minus") {
  const auto plus = EpsSymmetricForm::diagonal({1});
  const auto minus = EpsSymmetricForm::diagonal({-1});
  CHECK(det_plus_minus(plus, IntMatrix{{-1}}) == std::pair{-1, 1});
  CHECK(det_plus_minus(minus, IntMatrix{{-1}}) == std::pair{1, -1});
  CHECK(det_plus_minus(EpsSymmetricForm::identity(2), IntMatrix{{0, -1}, {1, 0}}) == std::pair{1, 1});
}
