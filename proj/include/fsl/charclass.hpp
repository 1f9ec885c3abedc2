#pragma once

// Weighted-graded polynomials in named generators, and the characteristic
// class identities built on them.
//
// Generators and weights: rk (0), c_i, e_i, p_i, w_i (i), t_i (1), x (1),
// u (0, a formal Thom class). Every polynomial carries a truncation degree N
// and drops monomials of weight > N.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fsl/exact_algebra.hpp"

namespace fsl {

enum class Family : std::uint8_t { rank, c, e, p, t, w, x, u };

/// Q, Z_(2) (rationals with odd denominator) or F_2.
enum class Domain : std::uint8_t { rational, z2_local, f2 };

class Monomial {
 public:
  using Key = std::uint32_t;

  Monomial() = default;  // the unit
  static Monomial var(Family f, unsigned index = 0, unsigned exponent = 1);

  static Key key(Family f, unsigned index) { return (static_cast<Key>(f) << 16) | index; }
  static Family family(Key k) { return static_cast<Family>(k >> 16); }
  static unsigned index(Key k) { return k & 0xffffU; }
  static unsigned key_weight(Key k);

  /// (key, exponent), sorted by key, exponents > 0.
  const std::vector<std::pair<Key, unsigned>>& factors() const noexcept { return factors_; }
  unsigned weight() const noexcept { return weight_; }
  bool is_one() const noexcept { return factors_.empty(); }
  unsigned exponent(Family f, unsigned index = 0) const;

  Monomial operator*(const Monomial& o) const;
  /// "p1^2*p2", "1" for the unit.
  std::string to_string() const;

  /// Weight ascending; within a weight, the larger highest generator first,
  /// then the larger exponent on it, and so on down.
  friend bool operator<(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

 private:
  std::vector<std::pair<Key, unsigned>> factors_;
  unsigned weight_ = 0;
};

class GradedPoly {
 public:
  static constexpr unsigned kDefaultTruncation = 16;

  explicit GradedPoly(Domain d = Domain::rational, unsigned truncation = kDefaultTruncation);
  static GradedPoly constant(const Rational& c, Domain d = Domain::rational, unsigned truncation = kDefaultTruncation);
  static GradedPoly variable(Family f, unsigned index = 0, Domain d = Domain::rational,
                             unsigned truncation = kDefaultTruncation);

  Domain domain() const noexcept { return domain_; }
  unsigned truncation() const noexcept { return truncation_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }

  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  GradedPoly homogeneous(unsigned weight) const;
  unsigned max_weight() const;

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& c);
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  GradedPoly pow(unsigned e) const;

  /// Replaces generators by polynomials; generators without an image stay.
  GradedPoly substitute(const std::map<Monomial::Key, GradedPoly>& images) const;

  /// Same terms in another domain (F_2 reduction needs odd denominators).
  GradedPoly in_domain(Domain d) const;
  GradedPoly with_truncation(unsigned n) const;

  /// Every coefficient has odd denominator.
  bool is_2_integral() const;
  /// Every coefficient lies in 4·Z_(2).
  bool divisible_by_4_locally() const;

  /// Stable text form, e.g. "7/45*p2 - 1/45*p1^2"; "0" for zero.
  std::string to_string() const;

  friend bool operator==(const GradedPoly& a, const GradedPoly& b) { return a.terms_ == b.terms_; }

 private:
  void normalize(Rational& c) const;

  Domain domain_;
  unsigned truncation_;
  std::map<Monomial, Rational> terms_;
};

/// Reduction of a 2-local rational to F_2; PreconditionError on even denominators.
int mod2(const Rational& q);
/// q in 4·Z_(2).
bool divisible_by_4_locally(const Rational& q);
/// ν_2 of a nonzero rational.
long nu2(const Rational& q);

/// (1 + a)⁻¹ for a total class with constant term 1 and positive-weight rest.
GradedPoly inverse_total(const GradedPoly& f);
/// 1 + g_1 + ... + g_N in the given family.
GradedPoly universal_total(Family f, Domain d, unsigned truncation);

// ---------------------------------------------------------------------------
// Symmetric functions and the Chern character

/// Power sum in terms of the elementary symmetric functions of `family`
/// (Newton's identity), over Q.
GradedPoly newton_polynomial(unsigned i, Family family = Family::e, unsigned truncation = 0);

/// With 2i = 2^r·s, s odd: p̄_{2i} ≡ (p̄_s)^{2^r} over F_2.
bool power_sum_congruence_check(unsigned i);

struct LegendreValue {
  long nu2;  ///< ν_2(2^i / i!) by counting factors of 2 in i!
  long s2;   ///< binary digit sum of i
};
LegendreValue legendre_check(unsigned long i);
/// First i in [1, max_i] where ν_2 != s_2 or ν_2 < 1; nullopt when all pass.
std::optional<unsigned long> legendre_sweep(unsigned long max_i);

/// ch_i = p̄_i(c)/i!; ch_0 is the rank generator.
GradedPoly chern_character(unsigned i, unsigned truncation = 0);

/// 2^i·ch_i with every monomial containing an odd c_j removed; true when it
/// vanishes for odd i and lies in 4·Z_(2) for even i.
bool ch_psi2_real_divisibility(unsigned i);

/// 2^{2i}·ch_{2i} with c_{2j} ↦ (-1)^j p_j and odd c ↦ 0, over Z_(2).
GradedPoly tilde_ph(unsigned i);

// ---------------------------------------------------------------------------
// Multiplicative sequences

class MultiplicativeSequence {
 public:
  /// q[0] must be 1; q[n] is the coefficient of z^n in Q(z). `family` names
  /// the elementary symmetric generators (p for the L-genus).
  MultiplicativeSequence(std::vector<Rational> q, unsigned truncation, Family family = Family::p);

  /// Q(z) = √z / tanh √z, so that K_k = L_k.
  static MultiplicativeSequence l_genus(unsigned truncation = GradedPoly::kDefaultTruncation);

  unsigned truncation() const noexcept { return truncation_; }
  const std::vector<Rational>& series() const noexcept { return q_; }

  /// K_k, weight k. Thread-safe; results are cached.
  GradedPoly polynomial(unsigned k) const;
  /// 1 + K_1 + ... + K_N.
  GradedPoly total() const;

 private:
  void build() const;

  std::vector<Rational> q_;
  unsigned truncation_;
  Family family_;
  mutable std::mutex mutex_;
  mutable std::optional<GradedPoly> total_;
};

GradedPoly l_polynomial(unsigned k);

/// ⟨L_k, [CP^{2k}]⟩ from p(CP^{2k}) = (1 + x²)^{2k+1}.
Rational hirzebruch_signature_cp(unsigned k);

// ---------------------------------------------------------------------------
// Steenrod squares on F_2[w_1, w_2, ...]{x, u}

/// Sq^i on generators: Wu's formula on w_j, Sq(x) = x + x², and
/// Sq(u) = u·W for a chosen total class W. Extended by the Cartan formula.
class SteenrodAction {
 public:
  explicit SteenrodAction(unsigned truncation, std::optional<GradedPoly> thom_total = std::nullopt);

  unsigned truncation() const noexcept { return truncation_; }
  GradedPoly sq(unsigned i, const GradedPoly& f) const;
  /// Σ_i Sq^i f up to the truncation.
  GradedPoly total(const GradedPoly& f) const;

 private:
  GradedPoly sq_monomial(unsigned i, const Monomial& m) const;
  GradedPoly sq_generator(unsigned i, Monomial::Key k) const;

  unsigned truncation_;
  std::optional<GradedPoly> thom_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<Monomial, unsigned>, GradedPoly> memo_;
};

/// Total Wu class V with Sq(V) = w⁻¹, solved degreewise.
GradedPoly wu_class(const GradedPoly& w_total, unsigned truncation);

/// In F_2[w]{u} with w(ν) = w(T)⁻¹, V = V(ν), Sq(u) = u·w(ν):
/// Sq(u·V²) = u·w(T) through weight N.
bool thom_identity_check(unsigned n);

/// Sq² Sq^{2k+1} = Sq^{2k+2} Sq¹ (+ Sq^{2k+3} when k is odd) on every
/// monomial in w_1..w_N of weight ≤ N.
bool adem_check(unsigned k, unsigned n);

/// Σ_{i≥0} V_{2i}·Sq¹ V_{2i}.
GradedPoly derham_class(const GradedPoly& v, unsigned truncation);

/// w(T RP^n) = (1 + x)^{n+1} in F_2[x]/(x^{n+1}).
GradedPoly rp_tangent_sw(unsigned n);
/// Coefficient of x^{4k-3} in (1+x)^{4k-2}·Sq(x) over F_2[x]/(x^{4k-2}).
int rp_dold_integral(unsigned k);

}  // namespace fsl
