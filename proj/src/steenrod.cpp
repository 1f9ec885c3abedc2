#include "fsl/charclass.hpp"

namespace fsl {

namespace {

/// C(n, t) mod 2, with the generalized binomial for negative n.
int binom_mod2(long n, long t) {
  if (t < 0) return 0;
  if (t == 0) return 1;
  if (n < 0) n = t - n - 1;
  if (t > n) return 0;
  return (static_cast<unsigned long>(t) & ~static_cast<unsigned long>(n)) == 0 ? 1 : 0;
}

GradedPoly f2_zero(unsigned n) { return GradedPoly(Domain::f2, n); }
GradedPoly f2_one(unsigned n) { return GradedPoly::constant(1, Domain::f2, n); }

}  // namespace

SteenrodAction::SteenrodAction(unsigned truncation, std::optional<GradedPoly> thom_total)
    : truncation_(truncation) {
  if (thom_total) thom_ = thom_total->in_domain(Domain::f2).with_truncation(truncation);
}

GradedPoly SteenrodAction::sq_generator(unsigned i, Monomial::Key k) const {
  const unsigned n = truncation_;
  const unsigned idx = Monomial::index(k);
  switch (Monomial::family(k)) {
    case Family::rank: {
      GradedPoly r = f2_zero(n);
      if (i == 0) r.add_term(Monomial::var(Family::rank), 1);
      return r;
    }
    case Family::x: {
      GradedPoly r = f2_zero(n);
      if (i <= 1) r.add_term(Monomial::var(Family::x, 0, i + 1), 1);
      return r;
    }
    case Family::u: {
      GradedPoly u = GradedPoly::variable(Family::u, 0, Domain::f2, n);
      if (i == 0) return u;
      if (!thom_) return f2_zero(n);
      return u * thom_->homogeneous(i);
    }
    case Family::w: {
      // Sq^i w_j = Σ_t C(j-i+t-1, t) w_{i-t} w_{j+t}
      GradedPoly r = f2_zero(n);
      if (i > idx) return r;
      for (unsigned t = 0; t <= i; ++t) {
        if (!binom_mod2(static_cast<long>(idx) - i + t - 1, t)) continue;
        Monomial m = Monomial::var(Family::w, idx + t);
        if (i - t > 0) m = Monomial::var(Family::w, i - t) * m;
        r.add_term(m, 1);
      }
      return r;
    }
    default:
      throw InputError("Steenrod squares act on w, x and u generators only");
  }
}

GradedPoly SteenrodAction::sq_monomial(unsigned i, const Monomial& m) const {
  const unsigned n = truncation_;
  if (m.weight() + i > n) return f2_zero(n);
  if (m.is_one()) return i == 0 ? f2_one(n) : f2_zero(n);
  if (i == 0) {
    GradedPoly r = f2_zero(n);
    r.add_term(m, 1);
    return r;
  }
  const auto memo_key = std::make_pair(m, i);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(memo_key);
    if (it != memo_.end()) return it->second;
  }
  // Cartan: split off one factor of the first generator
  const auto [k, e] = m.factors().front();
  Monomial rest;
  for (std::size_t f = 0; f < m.factors().size(); ++f) {
    const auto [fk, fe] = m.factors()[f];
    const unsigned exp = f == 0 ? fe - 1 : fe;
    if (exp > 0) rest = rest * Monomial::var(Monomial::family(fk), Monomial::index(fk), exp);
  }
  GradedPoly r = f2_zero(n);
  for (unsigned j = 0; j <= i; ++j) {
    GradedPoly a = sq_generator(j, k);
    if (a.is_zero()) continue;
    GradedPoly b = sq_monomial(i - j, rest);
    if (b.is_zero()) continue;
    r += a * b;
  }
  (void)e;
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(memo_key, r);
  return r;
}

GradedPoly SteenrodAction::sq(unsigned i, const GradedPoly& f) const {
  GradedPoly r = f2_zero(truncation_);
  for (const auto& [m, c] : f.terms()) {
    if (mod2(c) == 0) continue;
    r += sq_monomial(i, m);
  }
  return r;
}

GradedPoly SteenrodAction::total(const GradedPoly& f) const {
  GradedPoly r = f2_zero(truncation_);
  for (unsigned i = 0; i <= truncation_; ++i) r += sq(i, f);
  return r;
}

GradedPoly wu_class(const GradedPoly& w_total, unsigned truncation) {
  SteenrodAction s(truncation);
  GradedPoly winv = inverse_total(w_total.in_domain(Domain::f2).with_truncation(truncation));
  std::vector<GradedPoly> v{f2_one(truncation)};
  GradedPoly total = v.front();
  // Sq(V) = w⁻¹ in degree d: V_d = (w⁻¹)_d + Σ_{i≥1} Sq^i V_{d-i}
  for (unsigned d = 1; d <= truncation; ++d) {
    GradedPoly vd = winv.homogeneous(d);
    for (unsigned i = 1; i <= d; ++i) vd += s.sq(i, v[d - i]);
    total += vd;
    v.push_back(std::move(vd));
  }
  return total;
}

bool thom_identity_check(unsigned n) {
  GradedPoly wt = universal_total(Family::w, Domain::f2, n);
  GradedPoly wnu = inverse_total(wt);
  GradedPoly v = wu_class(wnu, n);
  SteenrodAction s(n, wnu);
  GradedPoly u = GradedPoly::variable(Family::u, 0, Domain::f2, n);
  return s.total(u * v * v) == u * wt;
}

bool adem_check(unsigned k, unsigned n) {
  const unsigned top = n + 2 * k + 3;
  SteenrodAction s(top);
  // every monomial in w_1..w_n of weight <= n
  std::vector<Monomial> monomials{Monomial()};
  for (unsigned j = 1; j <= n; ++j) {
    const std::size_t base = monomials.size();
    for (std::size_t b = 0; b < base; ++b)
      for (unsigned e = 1; monomials[b].weight() + e * j <= n; ++e)
        monomials.push_back(monomials[b] * Monomial::var(Family::w, j, e));
  }
  for (const auto& m : monomials) {
    GradedPoly f(Domain::f2, top);
    f.add_term(m, 1);
    GradedPoly lhs = s.sq(2, s.sq(2 * k + 1, f));
    GradedPoly rhs = s.sq(2 * k + 2, s.sq(1, f));
    if (k % 2 == 1) rhs += s.sq(2 * k + 3, f);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

GradedPoly derham_class(const GradedPoly& v, unsigned truncation) {
  SteenrodAction s(truncation);
  GradedPoly vf = v.in_domain(Domain::f2).with_truncation(truncation);
  GradedPoly r = f2_zero(truncation);
  for (unsigned d = 0; d <= truncation; d += 2) {
    GradedPoly vd = vf.homogeneous(d);
    if (vd.is_zero()) continue;
    r += vd * s.sq(1, vd);
  }
  return r;
}

GradedPoly rp_tangent_sw(unsigned n) {
  GradedPoly one_plus_x = f2_one(n) + GradedPoly::variable(Family::x, 0, Domain::f2, n);
  return one_plus_x.pow(n + 1);
}

int rp_dold_integral(unsigned k) {
  if (k == 0) throw InputError("RP^{4k-3} needs k >= 1");
  const unsigned n = 4 * k - 3;
  SteenrodAction s(n);
  GradedPoly integrand = rp_tangent_sw(n) * s.total(GradedPoly::variable(Family::x, 0, Domain::f2, n));
  return mod2(integrand.coefficient(Monomial::var(Family::x, 0, n)));
}

}  // namespace fsl
