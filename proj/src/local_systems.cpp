#include "fsl/local_systems.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace fsl {

namespace {

Simplex face(const Simplex& s, std::size_t omit) {
  Simplex f;
  f.reserve(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != omit) f.push_back(s[i]);
  return f;
}

/// Sorts v and returns the parity of the sorting permutation (+1 / -1).
int sort_with_parity(std::vector<long>& v) {
  int parity = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) parity = -parity;
  std::sort(v.begin(), v.end());
  return parity;
}

std::vector<Simplex> normalize_facets(std::size_t dimension, const std::vector<std::vector<long>>& facets,
                                      std::vector<int>* parities) {
  std::vector<Simplex> out;
  for (auto f : facets) {
    if (f.size() != dimension + 1) throw InputError("facet has the wrong number of vertices");
    for (long v : f)
      if (v < 0) throw InputError("negative vertex label");
    int parity = sort_with_parity(f);
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw InputError("facet repeats a vertex");
    out.emplace_back(f.begin(), f.end());
    if (parities) parities->push_back(parity);
  }
  return out;
}

struct RidgeIncidence {
  std::size_t facet;
  std::size_t position;  // index of the omitted vertex
};

std::map<Simplex, std::vector<RidgeIncidence>> ridge_map(const std::vector<Simplex>& facets) {
  std::map<Simplex, std::vector<RidgeIncidence>> ridges;
  for (std::size_t f = 0; f < facets.size(); ++f)
    for (std::size_t i = 0; i < facets[f].size(); ++i) ridges[face(facets[f], i)].push_back({f, i});
  return ridges;
}

}  // namespace

SimplicialComplex::SimplicialComplex(const std::vector<Simplex>& maximal) {
  std::size_t dim = 0;
  for (const auto& s : maximal) {
    if (s.empty()) throw InputError("empty simplex");
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i - 1] >= s[i]) throw InputError("simplex vertices must be strictly increasing");
    dim = std::max(dim, s.size() - 1);
    vertex_count_ = std::max(vertex_count_, s.back() + 1);
  }
  if (maximal.empty()) return;
  index_.resize(dim + 1);
  for (const auto& s : maximal) {
    // all nonempty subsets
    const std::size_t n = s.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Simplex sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::uint64_t{1} << i)) sub.push_back(s[i]);
      index_[sub.size() - 1].emplace(sub, 0);
    }
  }
  simplices_.resize(dim + 1);
  for (std::size_t q = 0; q <= dim; ++q) {
    std::size_t next = 0;
    for (auto& [s, idx] : index_[q]) {
      idx = next++;
      simplices_[q].push_back(s);
    }
  }
}

std::size_t SimplicialComplex::index(const Simplex& s) const {
  if (s.empty() || s.size() > index_.size()) return npos;
  auto it = index_[s.size() - 1].find(s);
  return it == index_[s.size() - 1].end() ? npos : it->second;
}

// ---------------------------------------------------------------------------

SimplicialManifold::SimplicialManifold(std::size_t dimension, const std::vector<std::vector<long>>& facets,
                                       const std::vector<int>& signs)
    : dimension_(dimension) {
  if (dimension == 0) throw InputError("manifold dimension must be positive");
  if (facets.empty()) throw InputError("manifold has no facets");
  if (signs.size() != facets.size()) throw InputError("one orientation sign per facet is required");
  std::vector<int> parity;
  facets_ = normalize_facets(dimension, facets, &parity);
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw InputError("orientation signs must be +1 or -1");
    signs_.push_back(signs[i] * parity[i]);
  }
  // keep facets sorted lexicographically so that the layout is canonical
  std::vector<std::size_t> order(facets_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return facets_[a] < facets_[b]; });
  std::vector<Simplex> f2;
  std::vector<int> s2;
  for (auto i : order) {
    f2.push_back(facets_[i]);
    s2.push_back(signs_[i]);
  }
  facets_ = std::move(f2);
  signs_ = std::move(s2);
  validate();
  complex_ = SimplicialComplex(facets_);
  if (complex_.count(0) != complex_.vertex_count()) throw StructuralError("some vertex label lies in no facet");
}

void SimplicialManifold::validate() const {
  for (std::size_t i = 1; i < facets_.size(); ++i)
    if (facets_[i - 1] == facets_[i]) throw StructuralError("duplicate facet");
  auto ridges = ridge_map(facets_);
  std::vector<std::size_t> parent(facets_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [ridge, inc] : ridges) {
    if (inc.size() != 2) throw StructuralError("a codimension-one face does not lie in exactly two facets");
    int total = 0;
    for (const auto& r : inc) total += signs_[r.facet] * ((r.position % 2 == 0) ? 1 : -1);
    if (total != 0) throw StructuralError("facet orientations are inconsistent");
    parent[find(inc[0].facet)] = find(inc[1].facet);
  }
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (find(f) != find(0)) throw StructuralError("complex is not connected");
}

SimplicialManifold SimplicialManifold::oriented(std::size_t dimension, const std::vector<std::vector<long>>& facets) {
  if (facets.empty()) throw InputError("manifold has no facets");
  auto sorted = normalize_facets(dimension, facets, nullptr);
  auto ridges = ridge_map(sorted);
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(sorted.size());
  for (const auto& [ridge, inc] : ridges) {
    if (inc.size() != 2) throw StructuralError("a codimension-one face does not lie in exactly two facets");
    // s(b) = -s(a)·(-1)^{i+j}
    int rel = ((inc[0].position + inc[1].position) % 2 == 0) ? -1 : 1;
    adj[inc[0].facet].emplace_back(inc[1].facet, rel);
    adj[inc[1].facet].emplace_back(inc[0].facet, rel);
  }
  std::vector<int> sign(sorted.size(), 0);
  sign[0] = 1;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    auto f = queue.front();
    queue.pop_front();
    for (auto [g, rel] : adj[f]) {
      int want = sign[f] * rel;
      if (sign[g] == 0) {
        sign[g] = want;
        queue.push_back(g);
      } else if (sign[g] != want) {
        throw StructuralError("complex is not orientable");
      }
    }
  }
  std::vector<std::vector<long>> as_long;
  for (const auto& s : sorted) as_long.emplace_back(s.begin(), s.end());
  for (int s : sign)
    if (s == 0) throw StructuralError("complex is not connected");
  return SimplicialManifold(dimension, as_long, sign);
}

SimplicialManifold SimplicialManifold::with_reversed_orientation() const {
  SimplicialManifold m = *this;
  for (auto& s : m.signs_) s = -s;
  return m;
}

// ---------------------------------------------------------------------------

LocalSystem::LocalSystem(std::size_t rank, std::map<Edge, IntMatrix> transport)
    : rank_(rank), transport_(std::move(transport)) {
  if (rank_ == 0) throw InputError("local system rank must be positive");
  for (const auto& [e, m] : transport_) {
    if (e.first >= e.second) throw InputError("transport edges must be given as i < j");
    if (m.rows() != rank_ || m.cols() != rank_) throw InputError("transport matrix has the wrong size");
    auto inv = inverse_unimodular(m);
    if (!inv) throw StructuralError("transport matrix is not unimodular");
    inverse_.emplace(e, std::move(*inv));
  }
}

IntMatrix LocalSystem::transport(std::size_t i, std::size_t j) const {
  auto it = transport_.find({i, j});
  return it == transport_.end() ? IntMatrix::identity(rank_) : it->second;
}

IntMatrix LocalSystem::inverse_transport(std::size_t i, std::size_t j) const {
  auto it = inverse_.find({i, j});
  return it == inverse_.end() ? IntMatrix::identity(rank_) : it->second;
}

void LocalSystem::check_flat(const SimplicialComplex& k) const {
  for (const auto& [e, m] : transport_)
    if (k.index({e.first, e.second}) == SimplicialComplex::npos)
      throw InputError("transport given on a pair that is not an edge");
  if (k.dimension() < 2) return;
  for (const auto& t : k.simplices(2)) {
    if (!(transport(t[0], t[2]) == transport(t[1], t[2]) * transport(t[0], t[1])))
      throw StructuralError("local system is not flat on a triangle");
  }
}

LocalSystem LocalSystem::conjugated(const IntMatrix& g) const {
  auto ginv = inverse_unimodular(g);
  if (!ginv) throw PreconditionError("conjugating matrix is not unimodular");
  std::map<Edge, IntMatrix> t;
  for (const auto& [e, m] : transport_) t.emplace(e, *ginv * m * g);
  return LocalSystem(rank_, std::move(t));
}

PairedLocalSystem::PairedLocalSystem(LocalSystem s, EpsSymmetricForm p) : system(std::move(s)), pairing(std::move(p)) {
  if (pairing.rank() != system.rank()) throw InputError("pairing rank does not match the local system rank");
  for (const auto& [e, m] : system.edges()) {
    RatMatrix r = to_rational(m);
    if (!(r.transpose() * pairing.gram() * r == pairing.gram()))
      throw StructuralError("transport does not preserve the pairing");
  }
}

// ---------------------------------------------------------------------------

TwistedCochainComplex twisted_cochain_complex(const SimplicialComplex& k, const LocalSystem& s) {
  s.check_flat(k);
  const std::size_t m = s.rank();
  TwistedCochainComplex c;
  c.rank = m;
  for (std::size_t q = 0; q <= k.dimension(); ++q) c.dims.push_back(k.count(q) * m);
  for (std::size_t q = 0; q < k.dimension(); ++q) {
    SparseIntMatrix d(c.dims[q + 1], c.dims[q]);
    const auto& cells = k.simplices(q + 1);
    for (std::size_t t = 0; t < cells.size(); ++t) {
      const auto& tau = cells[t];
      for (std::size_t i = 0; i < tau.size(); ++i) {
        const std::size_t f = k.index(face(tau, i));
        ensure(f != SimplicialComplex::npos, "missing face");
        if (i == 0) {
          IntMatrix back = s.inverse_transport(tau[0], tau[1]);
          for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) d.add(t * m + a, f * m + b, back(a, b));
        } else {
          const Integer sign = (i % 2 == 0) ? 1 : -1;
          for (std::size_t a = 0; a < m; ++a) d.add(t * m + a, f * m + a, sign);
        }
      }
    }
    c.coboundary.push_back(std::move(d));
  }
  return c;
}

std::vector<std::size_t> twisted_betti(const SimplicialComplex& k, const LocalSystem& s) {
  auto c = twisted_cochain_complex(k, s);
  std::vector<std::size_t> ranks;
  for (const auto& d : c.coboundary) ranks.push_back(sparse_rank(d));
  std::vector<std::size_t> betti;
  for (std::size_t q = 0; q < c.dims.size(); ++q) {
    std::size_t b = c.dims[q];
    if (q < ranks.size()) b -= ranks[q];
    if (q > 0) b -= ranks[q - 1];
    betti.push_back(b);
  }
  return betti;
}

std::vector<SparseRatVector> cohomology_basis(const TwistedCochainComplex& c, std::size_t q) {
  if (q >= c.dims.size()) throw InputError("cohomological degree out of range");
  EchelonBasis span;
  if (q > 0) {
    const auto& d = c.coboundary[q - 1];
    for (std::size_t j = 0; j < d.cols(); ++j) {
      SparseRatVector v;
      for (const auto& [i, x] : d.column(j)) v.emplace_back(i, Rational(x));
      span.insert(std::move(v));
    }
  }
  std::vector<SparseRatVector> cocycles;
  if (q < c.coboundary.size()) {
    cocycles = sparse_kernel(c.coboundary[q]);
  } else {
    for (std::size_t i = 0; i < c.dims[q]; ++i) cocycles.push_back({{i, Rational(1)}});
  }
  std::vector<SparseRatVector> reps;
  for (auto& z : cocycles) {
    if (span.reduce(z)) continue;
    reps.push_back(z);
    span.insert(std::move(z));
  }
  return reps;
}

EpsSymmetricForm twisted_intersection_form(const SimplicialManifold& mfd, const PairedLocalSystem& p) {
  const std::size_t n = mfd.dimension();
  if (n % 2 != 0) throw PreconditionError("intersection form needs an even-dimensional manifold");
  const std::size_t k = n / 2;
  const std::size_t m = p.system.rank();
  const auto& cx = mfd.complex();
  auto c = twisted_cochain_complex(cx, p.system);
  auto reps = cohomology_basis(c, k);
  const std::size_t h = reps.size();

  // dense per-simplex blocks of each representative
  std::vector<RatVector> dense;
  for (const auto& r : reps) dense.push_back(to_dense(r, c.dims[k]));

  const RatMatrix& lambda = p.pairing.gram();
  RatMatrix g(h, h);
  for (std::size_t f = 0; f < mfd.facets().size(); ++f) {
    const auto& sigma = mfd.facets()[f];
    Simplex front(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    Simplex back(sigma.begin() + static_cast<std::ptrdiff_t>(k), sigma.end());
    const std::size_t fi = cx.index(front);
    const std::size_t bi = cx.index(back);
    ensure(fi != SimplicialComplex::npos && bi != SimplicialComplex::npos, "missing cup face");
    int sign = mfd.signs()[f];
#ifdef FSL_MUTATE_ORIENTATION_SIGN
    sign = -sign;
#endif
    RatMatrix kernel = lambda * to_rational(p.system.inverse_transport(sigma[0], sigma[k]));
    for (std::size_t a = 0; a < h; ++a) {
      RatVector x(m);
      bool any = false;
      for (std::size_t i = 0; i < m; ++i) {
        x[i] = dense[a][fi * m + i];
        any = any || x[i] != 0;
      }
      if (!any) continue;
      RatVector xk(m);  // xᵀ·Λ·T
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
          if (x[i] != 0) xk[j] += x[i] * kernel(i, j);
      for (std::size_t b = 0; b < h; ++b) {
        Rational s = 0;
        for (std::size_t j = 0; j < m; ++j)
          if (dense[b][bi * m + j] != 0) s += xk[j] * dense[b][bi * m + j];
        if (s != 0) g(a, b) += sign * s;
      }
    }
  }

  const int eps = ((k % 2 == 0) ? 1 : -1) * p.pairing.epsilon();
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = 0; b < h; ++b)
      if (g(a, b) != eps * g(b, a)) throw InternalError("twisted intersection form fails its symmetry");
  EpsSymmetricForm form(eps, std::move(g));
  if (!is_nondegenerate(form))
    throw StructuralError("twisted intersection form is degenerate (input is not a closed oriented manifold)");
  return form;
}

long twisted_signature(const SimplicialManifold& m, const PairedLocalSystem& p) {
  const std::size_t k = m.dimension() / 2;
  const int eps = ((k % 2 == 0) ? 1 : -1) * p.pairing.epsilon();
  if (m.dimension() % 2 == 0 && eps != 1)
    throw PreconditionError("twisted intersection form is skew: (-1)^k·eps(pairing) must be +1");
  return signature(twisted_intersection_form(m, p));
}

}  // namespace fsl
