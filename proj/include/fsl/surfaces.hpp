#pragma once

// Closed orientable surfaces of genus g >= 1 triangulated from the standard
// 4g-gon a1 b1 a1⁻¹ b1⁻¹ ..., and flat local systems on them given by one
// matrix per side pair.

#include <array>
#include <vector>

#include "fsl/local_systems.hpp"
#include "fsl/rng.hpp"

namespace fsl {

class PolygonSurface {
 public:
  /// Each polygon side is cut into 3 segments; the polygon is coned off
  /// through an inner ring, giving a simplicial complex after gluing.
  explicit PolygonSurface(std::size_t genus);

  std::size_t genus() const noexcept { return genus_; }
  const SimplicialManifold& manifold() const noexcept { return manifold_; }

  /// Local system with monodromy matrices M_1..M_{2g} for the side pairs
  /// a_1, b_1, ..., a_g, b_g. PreconditionError when the matrices violate
  /// the surface relation.
  LocalSystem system(const std::vector<IntMatrix>& side_matrices) const;

 private:
  struct Position {
    std::size_t vertex;
    std::size_t side_pair;  // meaningful for boundary positions only
    bool partner;           // lies on the second side of its pair
    bool corner;
    std::size_t corner_index;
  };

  std::size_t genus_;
  std::vector<Position> boundary_;  // 4g·3 boundary positions in cyclic order
  std::vector<std::size_t> ring_;   // inner ring vertex labels
  std::size_t center_;
  std::vector<std::array<std::size_t, 3>> triangles_;  // in positions: < boundary_.size() for boundary
  SimplicialManifold manifold_;

  SimplicialManifold build();
};

/// Random matrices satisfying the surface relation for the standard
/// symplectic form on Z^rank, built from random isometries.
std::vector<IntMatrix> random_surface_monodromy(std::size_t genus, std::size_t rank, SplitMix64& rng);

}  // namespace fsl
