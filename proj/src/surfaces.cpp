#include "fsl/surfaces.hpp"

#include <array>
#include <deque>
#include <optional>

namespace fsl {

namespace {

constexpr std::size_t kSegments = 3;

struct CornerConstraint {
  std::size_t from, to;  // H_to = M · H_from
  std::size_t pair;
};

}  // namespace

PolygonSurface::PolygonSurface(std::size_t genus) : genus_(genus), manifold_(build()) {}

SimplicialManifold PolygonSurface::build() {
  if (genus_ == 0) throw InputError("polygon surfaces need genus >= 1");
  const std::size_t sides = 4 * genus_;
  const std::size_t n = sides * kSegments;
  std::size_t next_label = 1;  // 0 is the corner
  boundary_.assign(n, Position{});
  std::vector<std::optional<std::size_t>> interior_label(n);
  for (std::size_t s = 0; s < sides; ++s) {
    const std::size_t r = s % 4;
    const std::size_t pair = 2 * (s / 4) + (r % 2);
    const bool partner = r >= 2;
    for (std::size_t t = 0; t < kSegments; ++t) {
      Position& p = boundary_[s * kSegments + t];
      p.side_pair = pair;
      p.partner = partner;
      p.corner = t == 0;
      p.corner_index = s;
      if (t == 0) {
        p.vertex = 0;
      } else if (!partner) {
        p.vertex = next_label++;
        interior_label[s * kSegments + t] = p.vertex;
      }
    }
  }
  // partner side s+2 at parameter k-t is glued to canonical side s at t
  for (std::size_t s = 0; s < sides; ++s) {
    if (s % 4 >= 2) continue;
    for (std::size_t t = 1; t < kSegments; ++t)
      boundary_[(s + 2) * kSegments + (kSegments - t)].vertex = *interior_label[s * kSegments + t];
  }
  ring_.clear();
  for (std::size_t i = 0; i < n; ++i) ring_.push_back(next_label++);
  center_ = next_label++;

  // positions: [0, n) boundary, [n, 2n) ring, 2n center
  triangles_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    triangles_.push_back({i, j, n + i});
    triangles_.push_back({j, n + j, n + i});
    triangles_.push_back({n + i, n + j, 2 * n});
  }
  std::vector<std::vector<long>> facets;
  for (const auto& t : triangles_) {
    std::vector<long> f;
    for (auto pos : t) {
      std::size_t v = pos < n ? boundary_[pos].vertex : (pos < 2 * n ? ring_[pos - n] : center_);
      f.push_back(static_cast<long>(v));
    }
    facets.push_back(std::move(f));
  }
  return SimplicialManifold::oriented(2, facets);
}

LocalSystem PolygonSurface::system(const std::vector<IntMatrix>& m) const {
  const std::size_t sides = 4 * genus_;
  const std::size_t n = sides * kSegments;
  if (m.size() != 2 * genus_) throw InputError("need one matrix per side pair");
  const std::size_t rank = m.front().rows();
  std::vector<IntMatrix> minv;
  for (const auto& x : m) {
    if (x.rows() != rank || x.cols() != rank) throw InputError("side matrices must share one square size");
    auto inv = inverse_unimodular(x);
    if (!inv) throw PreconditionError("side matrix is not unimodular");
    minv.push_back(std::move(*inv));
  }

  // corner gauges H_0..H_{4g-1}
  std::vector<CornerConstraint> cons;
  for (std::size_t s = 0; s < sides; ++s) {
    if (s % 4 >= 2) continue;
    const std::size_t pair = 2 * (s / 4) + (s % 2);
    cons.push_back({s, (s + 3) % sides, pair});
    cons.push_back({(s + 1) % sides, (s + 2) % sides, pair});
  }
  std::vector<std::optional<IntMatrix>> h(sides);
  h[0] = IntMatrix::identity(rank);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    auto c = queue.front();
    queue.pop_front();
    for (const auto& k : cons) {
      if (k.from == c && !h[k.to]) {
        h[k.to] = m[k.pair] * *h[c];
        queue.push_back(k.to);
      } else if (k.to == c && !h[k.from]) {
        h[k.from] = minv[k.pair] * *h[c];
        queue.push_back(k.from);
      }
    }
  }
  for (const auto& k : cons)
    if (!(*h[k.to] == m[k.pair] * *h[k.from]))
      throw PreconditionError("side matrices do not satisfy the surface group relation");

  auto gauge = [&](std::size_t pos) -> IntMatrix {
    if (pos >= n) return IntMatrix::identity(rank);
    const Position& p = boundary_[pos];
    if (p.corner) return *h[p.corner_index];
    return p.partner ? m[p.side_pair] : IntMatrix::identity(rank);
  };
  auto label = [&](std::size_t pos) {
    return pos < n ? boundary_[pos].vertex : (pos < 2 * n ? ring_[pos - n] : center_);
  };

  std::map<LocalSystem::Edge, IntMatrix> transport;
  for (const auto& t : triangles_) {
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        std::size_t p = t[a], q = t[b];
        if (label(p) > label(q)) std::swap(p, q);
        // ρ(u -> w) = h(q)⁻¹ h(p)
        auto hq_inv = inverse_unimodular(gauge(q));
        ensure(hq_inv.has_value(), "gauge is not unimodular");
        IntMatrix rho = *hq_inv * gauge(p);
        LocalSystem::Edge e{label(p), label(q)};
        auto [it, inserted] = transport.emplace(e, rho);
        if (!inserted && !(it->second == rho))
          throw PreconditionError("side matrices give inconsistent transport across a glued edge");
      }
  }
  for (auto it = transport.begin(); it != transport.end();) {
    if (it->second == IntMatrix::identity(rank))
      it = transport.erase(it);
    else
      ++it;
  }
  return LocalSystem(rank, std::move(transport));
}

namespace {

IntMatrix power(const IntMatrix& a, long j) {
  const std::size_t n = a.rows();
  IntMatrix base = a;
  if (j < 0) {
    auto inv = inverse_unimodular(a);
    ensure(inv.has_value(), "power of a non-unimodular matrix");
    base = *inv;
    j = -j;
  }
  IntMatrix r = IntMatrix::identity(n);
  for (long i = 0; i < j; ++i) r = r * base;
  return r;
}

IntMatrix inv(const IntMatrix& a) {
  auto i = inverse_unimodular(a);
  ensure(i.has_value(), "inverse of a non-unimodular matrix");
  return *i;
}

/// x -> x + c·ω(v,x)·v for the standard symplectic ω.
IntMatrix transvection(const IntVector& v, long c) {
  const std::size_t n = v.size();
  const std::size_t g = n / 2;
  IntMatrix a = IntMatrix::identity(n);
  IntVector vj(n);
  for (std::size_t i = 0; i < g; ++i) {
    vj[g + i] = v[i];
    vj[i] = -v[g + i];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) += c * v[i] * vj[j];
  return a;
}

Integer omega(const IntVector& v, const IntVector& w) {
  const std::size_t g = v.size() / 2;
  Integer s = 0;
  for (std::size_t i = 0; i < g; ++i) s += v[i] * w[g + i] - v[g + i] * w[i];
  return s;
}

IntVector random_vector(std::size_t n, SplitMix64& rng) {
  IntVector v(n);
  for (;;) {
    bool nonzero = false;
    for (auto& x : v) {
      x = rng.uniform(-1, 1);
      nonzero = nonzero || x != 0;
    }
    if (nonzero) return v;
  }
}

}  // namespace

std::vector<IntMatrix> random_surface_monodromy(std::size_t genus, std::size_t rank, SplitMix64& rng) {
  if (rank == 0 || rank % 2 != 0) throw InputError("symplectic rank must be even and positive");
  const auto form = EpsSymmetricForm::hyperbolic(rank / 2, -1);
  if (genus == 1) {
    if (rng.coin()) {
      IntMatrix a = random_isometry(form, rng, static_cast<std::size_t>(rng.uniform(1, 6))).matrix();
      IntMatrix b = power(a, rng.uniform(-2, 2));
      if (rng.coin())
        for (std::size_t i = 0; i < rank; ++i)
          for (std::size_t j = 0; j < rank; ++j) b(i, j) = -b(i, j);
      return {a, b};
    }
    // commuting transvections along ω-orthogonal vectors
    IntVector v = random_vector(rank, rng);
    IntVector w = v;
    for (int attempt = 0; attempt < 16; ++attempt) {
      IntVector cand = random_vector(rank, rng);
      if (omega(v, cand) == 0) {
        w = cand;
        break;
      }
    }
    IntMatrix a = transvection(v, rng.uniform(-2, 2)) * transvection(w, rng.uniform(-2, 2));
    IntMatrix b = transvection(v, rng.uniform(-2, 2)) * transvection(w, rng.uniform(-2, 2));
    return {a, b};
  }
  if (genus != 2) throw InputError("random surface monodromy is implemented for genus 1 and 2");
  // [M3⁻¹, M4] = [M2, M1⁻¹] with [a,b] = a b a⁻¹ b⁻¹. Nielsen moves on
  // (M2, M1⁻¹) keep the commutator fixed.
  IntMatrix m1 = random_isometry(form, rng, static_cast<std::size_t>(rng.uniform(1, 6))).matrix();
  IntMatrix m2 = random_isometry(form, rng, static_cast<std::size_t>(rng.uniform(1, 6))).matrix();
  IntMatrix x = m2;
  IntMatrix y = inv(m1);
  const long moves = rng.uniform(1, 6);
  for (long i = 0; i < moves; ++i) {
    switch (rng.uniform(0, 4)) {
      case 0:
        y = y * x;  // (a, ba)
        break;
      case 1:
        x = x * y;  // (ab, b)
        break;
      case 2:
        y = y * inv(x);  // (a, ba⁻¹)
        break;
      case 3:
        x = x * inv(y);  // (ab⁻¹, b)
        break;
      default: {
        IntMatrix c = x * y * inv(x) * inv(y);
        IntMatrix ci = inv(c);
        x = c * x * ci;
        y = c * y * ci;
        break;
      }
    }
  }
  return {m1, m2, inv(x), y};
}

}  // namespace fsl
