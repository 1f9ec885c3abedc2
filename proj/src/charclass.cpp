#include "fsl/charclass.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace fsl {

// ---------------------------------------------------------------------------
// Monomial

unsigned Monomial::key_weight(Key k) {
  switch (family(k)) {
    case Family::rank:
    case Family::u:
      return 0;
    case Family::t:
    case Family::x:
      return 1;
    default:
      return index(k);
  }
}

Monomial Monomial::var(Family f, unsigned index, unsigned exponent) {
  Monomial m;
  if (exponent == 0) return m;
  if (index > 0xffffU) throw InputError("generator index too large");
  const Key k = key(f, index);
  m.factors_.emplace_back(k, exponent);
  m.weight_ = key_weight(k) * exponent;
  return m;
}

unsigned Monomial::exponent(Family f, unsigned idx) const {
  const Key k = key(f, idx);
  for (const auto& [key, e] : factors_)
    if (key == k) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      m.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      m.factors_.push_back(*b++);
    } else {
      m.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  m.weight_ = weight_ + o.weight_;
  return m;
}

namespace {

std::string key_name(Monomial::Key k) {
  switch (Monomial::family(k)) {
    case Family::rank:
      return "rk";
    case Family::x:
      return "x";
    case Family::u:
      return "u";
    case Family::c:
      return "c" + std::to_string(Monomial::index(k));
    case Family::e:
      return "e" + std::to_string(Monomial::index(k));
    case Family::p:
      return "p" + std::to_string(Monomial::index(k));
    case Family::t:
      return "t" + std::to_string(Monomial::index(k));
    case Family::w:
      return "w" + std::to_string(Monomial::index(k));
  }
  return "?";
}

}  // namespace

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [k, e] : factors_) {
    if (!s.empty()) s += "*";
    s += key_name(k);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.weight_ != b.weight_) return a.weight_ < b.weight_;
  auto ia = a.factors_.rbegin();
  auto ib = b.factors_.rbegin();
  for (; ia != a.factors_.rend() && ib != b.factors_.rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first > ib->first;
    if (ia->second != ib->second) return ia->second > ib->second;
  }
  return ia == a.factors_.rend() && ib != b.factors_.rend();
}

// ---------------------------------------------------------------------------
// Coefficient helpers

int mod2(const Rational& q) {
  if (mpz_even_p(q.get_den_mpz_t())) throw PreconditionError("coefficient " + q.get_str() + " is not 2-local");
  return mpz_odd_p(q.get_num_mpz_t()) ? 1 : 0;
}

bool divisible_by_4_locally(const Rational& q) {
  if (mpz_even_p(q.get_den_mpz_t())) return false;
  if (q == 0) return true;
  return mpz_scan1(q.get_num_mpz_t(), 0) >= 2;
}

long nu2(const Rational& q) {
  if (q == 0) throw InputError("2-adic valuation of zero");
  return static_cast<long>(mpz_scan1(q.get_num_mpz_t(), 0)) - static_cast<long>(mpz_scan1(q.get_den_mpz_t(), 0));
}

// ---------------------------------------------------------------------------
// GradedPoly

GradedPoly::GradedPoly(Domain d, unsigned truncation) : domain_(d), truncation_(truncation) {}

GradedPoly GradedPoly::constant(const Rational& c, Domain d, unsigned truncation) {
  GradedPoly p(d, truncation);
  p.add_term(Monomial(), c);
  return p;
}

GradedPoly GradedPoly::variable(Family f, unsigned index, Domain d, unsigned truncation) {
  GradedPoly p(d, truncation);
  p.add_term(Monomial::var(f, index), 1);
  return p;
}

void GradedPoly::normalize(Rational& c) const {
  switch (domain_) {
    case Domain::rational:
      break;
    case Domain::z2_local:
      if (mpz_even_p(c.get_den_mpz_t()))
        throw PreconditionError("coefficient " + c.get_str() + " leaves Z_(2)");
      break;
    case Domain::f2:
      c = mod2(c);
      break;
  }
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (m.weight() > truncation_ || c == 0) return;
  Rational v = c;
  normalize(v);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, v);
  if (!inserted) {
    it->second += v;
    normalize(it->second);
    if (it->second == 0) terms_.erase(it);
  }
}

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

GradedPoly GradedPoly::homogeneous(unsigned weight) const {
  GradedPoly p(domain_, truncation_);
  for (const auto& [m, c] : terms_)
    if (m.weight() == weight) p.terms_.emplace(m, c);
  return p;
}

unsigned GradedPoly::max_weight() const { return terms_.empty() ? 0 : terms_.rbegin()->first.weight(); }

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  if (o.domain_ != domain_) throw InputError("adding polynomials over different coefficient domains");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  if (o.domain_ != domain_) throw InputError("subtracting polynomials over different coefficient domains");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  std::map<Monomial, Rational> out;
  for (auto& [m, v] : terms_) {
    Rational x = v * c;
    normalize(x);
    if (x != 0) out.emplace(m, std::move(x));
  }
  terms_ = std::move(out);
  return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  if (a.domain_ != b.domain_) throw InputError("multiplying polynomials over different coefficient domains");
  GradedPoly r(a.domain_, std::min(a.truncation_, b.truncation_));
  for (const auto& [ma, ca] : a.terms_) {
    if (ma.weight() > r.truncation_) break;
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.weight() + mb.weight() > r.truncation_) break;
      r.add_term(ma * mb, ca * cb);
    }
  }
  return r;
}

GradedPoly GradedPoly::pow(unsigned e) const {
  GradedPoly result = constant(1, domain_, truncation_);
  GradedPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

GradedPoly GradedPoly::substitute(const std::map<Monomial::Key, GradedPoly>& images) const {
  GradedPoly result(domain_, truncation_);
  std::map<std::pair<Monomial::Key, unsigned>, GradedPoly> powers;
  for (const auto& [m, c] : terms_) {
    GradedPoly prod = constant(c, domain_, truncation_);
    for (const auto& [k, e] : m.factors()) {
      auto it = images.find(k);
      if (it == images.end()) {
        GradedPoly v(domain_, truncation_);
        v.add_term(Monomial::var(Monomial::family(k), Monomial::index(k), e), 1);
        prod = prod * v;
        continue;
      }
      auto pk = powers.find({k, e});
      if (pk == powers.end())
        pk = powers.emplace(std::make_pair(k, e), it->second.in_domain(domain_).with_truncation(truncation_).pow(e))
                 .first;
      prod = prod * pk->second;
      if (prod.is_zero()) break;
    }
    result += prod;
  }
  return result;
}

GradedPoly GradedPoly::in_domain(Domain d) const {
  GradedPoly p(d, truncation_);
  for (const auto& [m, c] : terms_) p.add_term(m, c);
  return p;
}

GradedPoly GradedPoly::with_truncation(unsigned n) const {
  GradedPoly p(domain_, n);
  for (const auto& [m, c] : terms_)
    if (m.weight() <= n) p.terms_.emplace(m, c);
  return p;
}

bool GradedPoly::is_2_integral() const {
  for (const auto& [m, c] : terms_)
    if (mpz_even_p(c.get_den_mpz_t())) return false;
  return true;
}

bool GradedPoly::divisible_by_4_locally() const {
  for (const auto& [m, c] : terms_)
    if (!fsl::divisible_by_4_locally(c)) return false;
  return true;
}

std::string GradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational a = negative ? Rational(-c) : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (m.is_one())
      os << a.get_str();
    else if (a == 1)
      os << m.to_string();
    else
      os << a.get_str() << "*" << m.to_string();
  }
  return os.str();
}

GradedPoly inverse_total(const GradedPoly& f) {
  const Monomial one;
  if (f.coefficient(one) != 1) throw PreconditionError("total class must have constant term 1");
  GradedPoly a = f - GradedPoly::constant(1, f.domain(), f.truncation());
  for (const auto& [m, c] : a.terms())
    if (m.weight() == 0) throw PreconditionError("total class has a non-constant term of weight 0");
  // degreewise: y_0 = 1, y_d = -Σ_{i=1}^{d} a_i y_{d-i}
  std::vector<GradedPoly> ai, y;
  for (unsigned d = 0; d <= f.truncation(); ++d) ai.push_back(a.homogeneous(d));
  y.push_back(GradedPoly::constant(1, f.domain(), f.truncation()));
  GradedPoly total = y.front();
  for (unsigned d = 1; d <= f.truncation(); ++d) {
    GradedPoly yd(f.domain(), f.truncation());
    for (unsigned i = 1; i <= d; ++i)
      if (!ai[i].is_zero() && !y[d - i].is_zero()) yd -= ai[i] * y[d - i];
    total += yd;
    y.push_back(std::move(yd));
  }
  return total;
}

GradedPoly universal_total(Family f, Domain d, unsigned truncation) {
  GradedPoly p = GradedPoly::constant(1, d, truncation);
  for (unsigned i = 1; i <= truncation; ++i) p += GradedPoly::variable(f, i, d, truncation);
  return p;
}

// ---------------------------------------------------------------------------
// Symmetric functions

namespace {

Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational power_of_two(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1) / Rational(p) : Rational(p);
}

/// p̄_1..p̄_n in one pass.
std::vector<GradedPoly> newton_table(unsigned n, Family family, unsigned truncation) {
  std::vector<GradedPoly> pbar(n + 1, GradedPoly(Domain::rational, truncation));
  for (unsigned m = 1; m <= n; ++m) {
    GradedPoly s(Domain::rational, truncation);
    for (unsigned j = 1; j < m; ++j) {
      GradedPoly term = GradedPoly::variable(family, j, Domain::rational, truncation) * pbar[m - j];
      if (j % 2 == 0) term *= Rational(-1);
      s += term;
    }
    s.add_term(Monomial::var(family, m), Rational((m % 2 == 1) ? static_cast<long>(m) : -static_cast<long>(m)));
    pbar[m] = std::move(s);
  }
  return pbar;
}

}  // namespace

GradedPoly newton_polynomial(unsigned i, Family family, unsigned truncation) {
  if (i == 0) throw InputError("Newton polynomials start at degree 1");
  if (truncation == 0) truncation = std::max(i, GradedPoly::kDefaultTruncation);
  if (truncation < i) throw InputError("truncation below the requested degree");
  return newton_table(i, family, truncation)[i];
}

bool power_sum_congruence_check(unsigned i) {
  if (i == 0) throw InputError("power-sum congruence starts at i = 1");
  const unsigned n = 2 * i;
  unsigned r = static_cast<unsigned>(std::countr_zero(n));
  unsigned s = n >> r;
  auto table = newton_table(n, Family::e, n);
  GradedPoly lhs = table[n].in_domain(Domain::f2);
  GradedPoly rhs = table[s].in_domain(Domain::f2).pow(1U << r);
  return lhs == rhs;
}

LegendreValue legendre_check(unsigned long i) {
  if (i == 0) throw InputError("Legendre check starts at i = 1");
  long fact2 = 0;
  for (unsigned long m = 2; m <= i; ++m) fact2 += std::countr_zero(m);
  return LegendreValue{static_cast<long>(i) - fact2, std::popcount(i)};
}

std::optional<unsigned long> legendre_sweep(unsigned long max_i) {
  long fact2 = 0;
  for (unsigned long i = 1; i <= max_i; ++i) {
    fact2 += std::countr_zero(i);
    const long nu = static_cast<long>(i) - fact2;
    if (nu != std::popcount(i) || nu < 1) return i;
  }
  return std::nullopt;
}

GradedPoly chern_character(unsigned i, unsigned truncation) {
  if (truncation == 0) truncation = std::max(i, GradedPoly::kDefaultTruncation);
  if (i == 0) return GradedPoly::variable(Family::rank, 0, Domain::rational, truncation);
  return newton_polynomial(i, Family::c, truncation) * (Rational(1) / factorial(i));
}

namespace {

/// c_j ↦ 0 for odd j (the odd Chern classes of a complexification are
/// 2-torsion, so after the factor of 2 they contribute nothing).
std::map<Monomial::Key, GradedPoly> kill_odd_chern(unsigned n, unsigned truncation) {
  std::map<Monomial::Key, GradedPoly> images;
  for (unsigned j = 1; j <= n; j += 2) images.emplace(Monomial::key(Family::c, j), GradedPoly(Domain::rational, truncation));
  return images;
}

}  // namespace

bool ch_psi2_real_divisibility(unsigned i) {
  if (i == 0) throw InputError("divisibility check starts at i = 1");
  const unsigned n = std::max(i, GradedPoly::kDefaultTruncation);
  GradedPoly f = chern_character(i, n) * power_of_two(i);
  f = f.substitute(kill_odd_chern(i, n));
  if (i % 2 == 1) return f.is_zero();
  return f.divisible_by_4_locally();
}

GradedPoly tilde_ph(unsigned i) {
  const unsigned n = std::max(2 * i, GradedPoly::kDefaultTruncation);
  if (i == 0) return GradedPoly::variable(Family::rank, 0, Domain::z2_local, n);
  GradedPoly f = chern_character(2 * i, n) * power_of_two(2 * i);
  auto images = kill_odd_chern(2 * i, n);
  for (unsigned j = 1; 2 * j <= 2 * i; ++j) {
    GradedPoly pj = GradedPoly::variable(Family::p, j, Domain::rational, n);
    if (j % 2 == 1) pj *= Rational(-1);
    images.emplace(Monomial::key(Family::c, 2 * j), std::move(pj));
  }
  f = f.substitute(images);
  ensure(f.is_2_integral(), "tilde_ph is not 2-integral");
  ensure(f.divisible_by_4_locally(), "tilde_ph is not divisible by 4");
  return f.in_domain(Domain::z2_local);
}

// ---------------------------------------------------------------------------
// Multiplicative sequences

MultiplicativeSequence::MultiplicativeSequence(std::vector<Rational> q, unsigned truncation, Family family)
    : q_(std::move(q)), truncation_(truncation), family_(family) {
  if (q_.empty() || q_[0] != 1) throw InputError("multiplicative sequence series must start with 1");
  q_.resize(truncation_ + 1);
}

MultiplicativeSequence MultiplicativeSequence::l_genus(unsigned truncation) {
  // √z / tanh √z = (Σ z^n/(2n)!) / (Σ z^n/(2n+1)!)
  std::vector<Rational> num(truncation + 1), den(truncation + 1), q(truncation + 1);
  for (unsigned n = 0; n <= truncation; ++n) {
    num[n] = Rational(1) / factorial(2 * n);
    den[n] = Rational(1) / factorial(2 * n + 1);
  }
  for (unsigned n = 0; n <= truncation; ++n) {
    Rational s = num[n];
    for (unsigned k = 1; k <= n; ++k) s -= den[k] * q[n - k];
    q[n] = s / den[0];
  }
  return MultiplicativeSequence(std::move(q), truncation, Family::p);
}

void MultiplicativeSequence::build() const {
  const unsigned n = truncation_;
  // log Q = Σ a_k z^k:  k a_k = k q_k - Σ_{j=1}^{k-1} j a_j q_{k-j}
  std::vector<Rational> a(n + 1);
  for (unsigned k = 1; k <= n; ++k) {
    Rational s = Rational(k) * q_[k];
    for (unsigned j = 1; j < k; ++j) s -= Rational(j) * a[j] * q_[k - j];
    a[k] = s / k;
  }
  // Π Q(z_j) = exp(Σ a_k s_k) with s_k the power sums of the z_j
  auto pbar = n > 0 ? newton_table(n, family_, n) : std::vector<GradedPoly>(1, GradedPoly(Domain::rational, n));
  std::vector<GradedPoly> s(n + 1, GradedPoly(Domain::rational, n));
  for (unsigned k = 1; k <= n; ++k) s[k] = pbar[k] * a[k];
  // exp by the weight derivation: k E_k = Σ_{j=1}^{k} j S_j E_{k-j}
  std::vector<GradedPoly> e(n + 1, GradedPoly(Domain::rational, n));
  e[0] = GradedPoly::constant(1, Domain::rational, n);
  GradedPoly total = e[0];
  for (unsigned k = 1; k <= n; ++k) {
    GradedPoly ek(Domain::rational, n);
    for (unsigned j = 1; j <= k; ++j) {
      if (s[j].is_zero() || e[k - j].is_zero()) continue;
      ek += (s[j] * e[k - j]) * Rational(j);
    }
    ek *= Rational(1, k);
    total += ek;
    e[k] = std::move(ek);
  }
  total_ = std::move(total);
}

GradedPoly MultiplicativeSequence::polynomial(unsigned k) const {
  if (k > truncation_) throw InputError("degree exceeds the multiplicative sequence truncation");
  std::lock_guard<std::mutex> lock(mutex_);
  if (!total_) build();
  return total_->homogeneous(k);
}

GradedPoly MultiplicativeSequence::total() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!total_) build();
  return *total_;
}

GradedPoly l_polynomial(unsigned k) {
  if (k == 0) throw InputError("L-polynomials start at degree 1");
  return MultiplicativeSequence::l_genus(k).polynomial(k);
}

Rational hirzebruch_signature_cp(unsigned k) {
  if (k == 0) throw InputError("CP^{2k} needs k >= 1");
  GradedPoly l = MultiplicativeSequence::l_genus(k).total();
  // p(CP^{2k}) = (1 + x²)^{2k+1}; x² is recorded as weight one here
  std::map<Monomial::Key, GradedPoly> images;
  for (unsigned i = 1; i <= k; ++i) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * k + 1, i);
    GradedPoly v(Domain::rational, k);
    v.add_term(Monomial::var(Family::x, 0, i), Rational(b));
    images.emplace(Monomial::key(Family::p, i), std::move(v));
  }
  return l.substitute(images).coefficient(Monomial::var(Family::x, 0, k));
}

}  // namespace fsl
