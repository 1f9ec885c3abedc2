#pragma once

// Linking forms T x T -> Q/Z on finite abelian groups, presented as
// T = Z^n / D Z^n with D = diag(orders) and ℓ(x, y) = xᵀ Λ y mod 1.
// Subgroups of T are handled as lattices between D Z^n and Z^n.

#include <optional>
#include <string>
#include <vector>

#include "fsl/exact_algebra.hpp"
#include "fsl/forms.hpp"
#include "fsl/rng.hpp"

namespace fsl {

class LinkingForm {
 public:
  /// Values are reduced into [0, 1). Throws InputError when d_i·ℓ(g_i, g_j)
  /// is not integral or ℓ is not epsilon-symmetric mod 1. Nondegeneracy is
  /// not enforced here; see is_nondegenerate().
  LinkingForm(int epsilon, IntVector orders, RatMatrix values);

  static LinkingForm trivial(int epsilon) { return LinkingForm(epsilon, {}, RatMatrix()); }

  int epsilon() const noexcept { return epsilon_; }
  const IntVector& orders() const noexcept { return orders_; }
  const RatMatrix& values() const noexcept { return values_; }
  std::size_t generators() const noexcept { return orders_.size(); }

  FinAbGroup group() const { return FinAbGroup(orders_); }
  Integer order() const;
  bool is_trivial() const { return order() == 1; }

  /// ℓ(x, y) in [0, 1) for coordinate vectors x, y.
  Rational operator()(const IntVector& x, const IntVector& y) const;

  /// The adjoint T -> Hom(T, Q/Z) is injective (hence bijective).
  bool is_nondegenerate() const;

  std::string to_string() const;

 private:
  int epsilon_;
  IntVector orders_;
  RatMatrix values_;
};

/// q mod 1, in [0, 1).
Rational frac(const Rational& q);

std::vector<Integer> prime_factors(Integer n);

/// The unique prime dividing |T|; nullopt for the trivial group.
/// PreconditionError when T is not p-primary.
std::optional<Integer> primary_prime(const LinkingForm& t);

std::vector<std::pair<Integer, LinkingForm>> p_primary_parts(const LinkingForm& t);

struct ReductionStep {
  LinkingForm result;
  Integer sublagrangian_order;  ///< |L|, 1 when the step is the identity
};

/// T' = L^⊥ / L with L = pT ∩ T[p]. Returns T unchanged when L = 0.
ReductionStep reduction_step_detailed(const LinkingForm& t);
LinkingForm reduction_step(const LinkingForm& t);

struct ElementaryReduction {
  std::optional<Integer> prime;
  std::vector<ReductionStep> steps;  ///< only steps with L != 0
  LinkingForm result;
};

/// Iterates reduction_step until L = 0; the result is elementary abelian.
ElementaryReduction reduce_to_elementary(const LinkingForm& t);

struct FpForm {
  Integer p;
  int epsilon;
  IntMatrix gram;  ///< entries in [0, p)
};

/// Reads an elementary abelian p-group form as a Gram matrix over F_p.
FpForm as_fp_form(const LinkingForm& t, std::optional<Integer> prime = std::nullopt);

/// Witt datum of a nondegenerate form over F_p.
///  odd p, symmetric: rank mod 2 and the square class of (-1)^{r(r-1)/2}·det;
///    W(F_p) is Z/4 for p = 3 mod 4 (element 0..3, <1> = 1) and
///    Z/2+Z/2 for p = 1 mod 4.
///  odd p, skew: every nondegenerate skew form is hyperbolic, class 0.
///  p = 2: rank mod 2 only.
struct WittDatum {
  enum class Kind { odd_symmetric, odd_symplectic, two };
  Kind kind;
  Integer p;
  int rank_mod2 = 0;
  bool disc_square = true;

  bool is_trivial() const { return rank_mod2 == 0 && disc_square; }
  /// "Z/4", "Z/2+Z/2" or "Z/2".
  std::string group() const;
  /// Element of the Z/4 for p = 3 mod 4; -1 otherwise.
  int z4_element() const;
  std::string to_string() const;
};

WittDatum witt_class_fp(const FpForm& g);

/// dim(T ⊗ Z/2) mod 2.
int derham_of_linking(const LinkingForm& t);

/// r1(φ) = dim(Z/2 ⊗ tors coker(I - φ)) mod 2.
int mapping_torus_derham(const Isometry& phi);

struct RandomLinkingOptions {
  int epsilon = 1;
  std::vector<long> primes{2, 3, 5, 7};
  std::size_t max_generators = 3;
  long max_order = 10000;
  int max_exponent = 3;
};

/// Random nondegenerate linking form; regenerates until nondegenerate.
LinkingForm random_linking_form(SplitMix64& rng, const RandomLinkingOptions& opt);

/// Hyperbolic form on (Z/p)^2 with off-diagonal value 1/p.
LinkingForm hyperbolic_linking(long p, int epsilon);

LinkingForm orthogonal_sum(const LinkingForm& a, const LinkingForm& b);

}  // namespace fsl
