#pragma once

// Twisted simplicial cochains of flat Z^m-bundles over ordered simplicial
// complexes.
//
// Conventions (fixed here and nowhere else):
//  * ρ(i, j) for i < j maps the fiber at vertex i to the fiber at vertex j;
//    flatness on a triangle i < j < k is ρ(i,k) = ρ(j,k)·ρ(i,j).
//  * A q-cochain assigns to each q-simplex σ a vector in the fiber at min(σ).
//  * (δα)(v0..v_{q+1}) = ρ(v0,v1)⁻¹ α(v1..v_{q+1}) + Σ_{i≥1} (-1)^i α(..v̂_i..).
//  * Cup product is Alexander–Whitney; the back face value is moved from
//    v_k to v_0 by ρ(v0,vk)⁻¹ (equal to the path v0 → v1 → .. → vk).
//  * [M] is the orientation-signed sum of facets.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fsl/exact_algebra.hpp"
#include "fsl/forms.hpp"
#include "fsl/sparse.hpp"

namespace fsl {

using Simplex = std::vector<std::size_t>;  // strictly increasing vertex labels

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Downward closure of the given simplices (each must be strictly increasing).
  explicit SimplicialComplex(const std::vector<Simplex>& maximal);

  std::size_t dimension() const noexcept { return simplices_.empty() ? 0 : simplices_.size() - 1; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t count(std::size_t q) const { return q < simplices_.size() ? simplices_[q].size() : 0; }
  const std::vector<Simplex>& simplices(std::size_t q) const { return simplices_.at(q); }
  /// Index of a simplex within its dimension; npos when absent.
  std::size_t index(const Simplex& s) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Closed, connected, oriented pseudomanifold. Manifoldness of vertex links is
/// trusted, not checked.
class SimplicialManifold {
 public:
  /// Facets may list vertices in any order; the sign is adjusted by the
  /// parity of the sorting permutation. Throws StructuralError on a ridge
  /// not in exactly two facets, inconsistent orientation, or disconnection.
  SimplicialManifold(std::size_t dimension, const std::vector<std::vector<long>>& facets,
                     const std::vector<int>& signs);

  /// Chooses signs by propagation from the first facet (kept positive).
  /// StructuralError when no orientation exists.
  static SimplicialManifold oriented(std::size_t dimension, const std::vector<std::vector<long>>& facets);

  std::size_t dimension() const noexcept { return dimension_; }
  const SimplicialComplex& complex() const noexcept { return complex_; }
  /// Facets in sorted order, aligned with signs().
  const std::vector<Simplex>& facets() const noexcept { return facets_; }
  const std::vector<int>& signs() const noexcept { return signs_; }

  SimplicialManifold with_reversed_orientation() const;

 private:
  SimplicialManifold() = default;
  void validate() const;

  std::size_t dimension_ = 0;
  std::vector<Simplex> facets_;
  std::vector<int> signs_;
  SimplicialComplex complex_;
};

class LocalSystem {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  /// Edges missing from `transport` carry the identity. Throws InputError
  /// on shape errors or i >= j, StructuralError on non-unimodular matrices.
  LocalSystem(std::size_t rank, std::map<Edge, IntMatrix> transport);
  static LocalSystem trivial(std::size_t rank) { return LocalSystem(rank, {}); }

  std::size_t rank() const noexcept { return rank_; }
  const std::map<Edge, IntMatrix>& edges() const noexcept { return transport_; }

  IntMatrix transport(std::size_t i, std::size_t j) const;
  IntMatrix inverse_transport(std::size_t i, std::size_t j) const;

  /// Every listed edge is an edge of k, and ρ is flat on every triangle of k.
  /// InputError for foreign edges, StructuralError for non-flatness.
  void check_flat(const SimplicialComplex& k) const;

  /// ρ ↦ g⁻¹ ρ g.
  LocalSystem conjugated(const IntMatrix& g) const;

 private:
  std::size_t rank_;
  std::map<Edge, IntMatrix> transport_;
  std::map<Edge, IntMatrix> inverse_;
};

struct PairedLocalSystem {
  /// StructuralError unless ρᵀΛρ = Λ on every edge.
  PairedLocalSystem(LocalSystem system, EpsSymmetricForm pairing);

  LocalSystem system;
  EpsSymmetricForm pairing;
};

/// δ^q : C^q -> C^{q+1}, q = 0..dim-1. Coordinates of C^q are
/// (simplex index)·m + fiber coordinate.
struct TwistedCochainComplex {
  std::size_t rank = 0;
  std::vector<std::size_t> dims;  ///< dim C^q
  std::vector<SparseIntMatrix> coboundary;
};

TwistedCochainComplex twisted_cochain_complex(const SimplicialComplex& k, const LocalSystem& s);

/// dim H^q(K; S ⊗ Q) for q = 0..dim.
std::vector<std::size_t> twisted_betti(const SimplicialComplex& k, const LocalSystem& s);

/// Cocycles representing a basis of H^q(K; S ⊗ Q).
std::vector<SparseRatVector> cohomology_basis(const TwistedCochainComplex& c, std::size_t q);

/// The pairing (α, β) ↦ ⟨Λ(α ⌣ β), [M]⟩ on H^k, dim M = 2k. Its epsilon is
/// (-1)^k ε(Λ). StructuralError when the result is degenerate.
EpsSymmetricForm twisted_intersection_form(const SimplicialManifold& m, const PairedLocalSystem& p);

/// PreconditionError when (-1)^k ε(Λ) = -1.
long twisted_signature(const SimplicialManifold& m, const PairedLocalSystem& p);

}  // namespace fsl
