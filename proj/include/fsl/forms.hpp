#pragma once

// epsilon-symmetric bilinear forms over Q (integral Gram matrices allowed).

#include <cstdint>
#include <vector>

#include "fsl/exact_algebra.hpp"
#include "fsl/rng.hpp"

namespace fsl {

class EpsSymmetricForm {
 public:
  /// Throws InputError unless gram is square and gramᵀ = eps·gram.
  EpsSymmetricForm(int epsilon, RatMatrix gram);

  static EpsSymmetricForm diagonal(const std::vector<long>& entries);
  static EpsSymmetricForm identity(std::size_t n);
  /// H(g): symmetric [[0,I],[I,0]] for eps=+1, symplectic [[0,I],[-I,0]] for eps=-1.
  static EpsSymmetricForm hyperbolic(std::size_t g, int epsilon);

  int epsilon() const noexcept { return epsilon_; }
  const RatMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return gram_.rows(); }

  Rational operator()(const RatVector& x, const RatVector& y) const;

  /// Integer Gram matrix, or nullopt when some entry is not integral.
  std::optional<IntMatrix> integral_gram() const { return to_integer(gram_); }

  friend bool operator==(const EpsSymmetricForm& a, const EpsSymmetricForm& b) {
    return a.epsilon_ == b.epsilon_ && a.gram_ == b.gram_;
  }

 private:
  int epsilon_;
  RatMatrix gram_;
};

/// #positive - #negative after congruence diagonalization. The radical of a
/// degenerate form contributes nothing. PreconditionError for eps = -1.
long signature(const EpsSymmetricForm& f);

std::vector<RatVector> radical(const EpsSymmetricForm& f);
bool is_nondegenerate(const EpsSymmetricForm& f);

EpsSymmetricForm orthogonal_sum(const EpsSymmetricForm& a, const EpsSymmetricForm& b);

/// Induced form on L^⊥/L. The complement of L inside L^⊥ is chosen by greedy
/// pivoting; any other choice gives an isometric result.
EpsSymmetricForm sublagrangian_reduce(const EpsSymmetricForm& f, const std::vector<RatVector>& l);

/// AᵀGA = G and |det A| = 1.
bool is_isometry(const EpsSymmetricForm& f, const IntMatrix& a);

class Isometry {
 public:
  /// Throws PreconditionError unless `a` is an isometry of `form`.
  Isometry(EpsSymmetricForm form, IntMatrix a);

  const EpsSymmetricForm& form() const noexcept { return form_; }
  const IntMatrix& matrix() const noexcept { return a_; }

  /// (this ∘ other)(x) = this(other(x))
  Isometry compose(const Isometry& other) const;
  Isometry inverse() const;

 private:
  EpsSymmetricForm form_;
  IntMatrix a_;
};

/// Product of `steps` random elementary isometries of a standard form:
/// transvections and signed pair permutations for the symplectic H(g),
/// signed permutations and reflections for diag(±1).
Isometry random_isometry(const EpsSymmetricForm& f, SplitMix64& rng, std::size_t steps);
Isometry random_isometry(const EpsSymmetricForm& f, std::uint64_t seed, std::size_t steps);

/// For an isometry A of a diagonal form: signs of det of the induced maps on
/// the positive and on the negative definite coordinate subspaces, i.e. of
/// the diagonal blocks A[+,+] and A[-,-]. An empty block gives +1.
std::pair<int, int> det_plus_minus(const EpsSymmetricForm& f, const IntMatrix& a);

/// Product of `steps` random elementary integer row operations and swaps.
IntMatrix random_unimodular(std::size_t n, SplitMix64& rng, std::size_t steps);

}  // namespace fsl
