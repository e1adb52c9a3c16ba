#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <boost/container_hash/hash.hpp>
#include <boost/dynamic_bitset.hpp>

#include "cellcomplex.hpp"
#include "graph.hpp"
#include "rational.hpp"

namespace nestotope {

/// Facet indices of a face, sorted; indices refer to FacePoset::facets.
using Tubing = std::vector<int>;

/// Tubes s, t of b (distinct) span intersecting facets.
inline bool compatible(const BuildingSet& b, VertexSet s, VertexSet t) {
  if (s == t) throw std::invalid_argument("compatibility is defined for distinct tubes");
  if (s.subset_of(t) || t.subset_of(s)) return true;
  return !s.intersects(t) && !b.contains(s | t);
}

/// Calls f(clique) for every clique of size 1..max_size in the graph given by adjacency
/// bitsets, each clique listed once in increasing order.
inline void for_each_clique(const std::vector<boost::dynamic_bitset<>>& adj, int max_size,
                            const std::function<void(const std::vector<int>&)>& f) {
  const std::size_t m = adj.size();
  std::vector<int> clique;
  std::function<void(const boost::dynamic_bitset<>&)> extend = [&](const boost::dynamic_bitset<>& cand) {
    for (auto v = cand.find_first(); v != boost::dynamic_bitset<>::npos; v = cand.find_next(v)) {
      clique.push_back(static_cast<int>(v));
      f(clique);
      if (static_cast<int>(clique.size()) < max_size) {
        boost::dynamic_bitset<> next = cand & adj[v];
        // keep only later vertices
        for (std::size_t u = 0; u <= v; ++u) next.reset(u);
        if (next.any()) extend(next);
      }
      clique.pop_back();
    }
  };
  boost::dynamic_bitset<> all(m);
  all.set();
  if (m > 0 && max_size > 0) extend(all);
}

/// Faces of a simple polytope of dimension n, each given by the facets containing it.
class FacePoset {
public:
  int n = 0;
  /// Facet labels; for graph-associahedra the proper tubes in canonical order.
  std::vector<VertexSet> facets;

  FacePoset() = default;

  /// Hand-built poset. Face dimension is n minus the number of facets containing it.
  static FacePoset from_faces(int n, std::size_t n_facets, std::vector<Tubing> faces) {
    FacePoset p;
    p.n = n;
    p.facets.assign(n_facets, VertexSet{});
    p.faces_.assign(n + 1, {});
    p.index_.assign(n + 1, {});
    for (auto& t : faces) {
      std::sort(t.begin(), t.end());
      const int d = n - static_cast<int>(t.size());
      if (d < 0) throw std::invalid_argument("face lies in more than n facets");
      p.add(d, std::move(t));
    }
    return p;
  }

  const std::vector<Tubing>& faces(int dim) const { return faces_.at(dim); }
  const std::vector<Tubing>& vertices() const { return faces_.at(0); }
  std::size_t facet_count() const { return facets.size(); }
  std::size_t face_count() const {
    std::size_t s = 0;
    for (const auto& f : faces_) s += f.size();
    return s;
  }

  std::optional<int> find(const Tubing& t) const {
    const int d = n - static_cast<int>(t.size());
    if (d < 0 || d > n) return std::nullopt;
    auto it = index_[d].find(t);
    if (it == index_[d].end()) return std::nullopt;
    return it->second;
  }

  int index(const Tubing& t) const {
    auto i = find(t);
    if (!i) throw std::out_of_range("tubing is not a face");
    return *i;
  }

  void add(int dim, Tubing t) {
    auto [it, inserted] = index_[dim].try_emplace(t, static_cast<int>(faces_[dim].size()));
    if (inserted) faces_[dim].push_back(std::move(t));
  }

  void reset(int dim) {
    n = dim;
    faces_.assign(n + 1, {});
    index_.assign(n + 1, {});
  }

  std::vector<VertexSet> tubes_of(const Tubing& t) const {
    std::vector<VertexSet> out;
    for (int i : t) out.push_back(facets[i]);
    return out;
  }

private:
  std::vector<std::vector<Tubing>> faces_;
  std::vector<std::unordered_map<Tubing, int, boost::hash<Tubing>>> index_;
};

/// Adjacency of the compatibility graph on the proper tubes.
inline std::vector<boost::dynamic_bitset<>> compatibility_graph(const BuildingSet& b, const std::vector<VertexSet>& tubes) {
  std::vector<boost::dynamic_bitset<>> adj(tubes.size(), boost::dynamic_bitset<>(tubes.size()));
  for (std::size_t i = 0; i < tubes.size(); ++i)
    for (std::size_t j = i + 1; j < tubes.size(); ++j)
      if (compatible(b, tubes[i], tubes[j])) {
        adj[i].set(j);
        adj[j].set(i);
      }
  return adj;
}

/// Face poset of the nestohedron of a connected building set: faces are the cliques of the
/// compatibility graph.
inline FacePoset face_poset(const BuildingSet& b) {
  if (!b.connected()) throw std::invalid_argument("graph-associahedron requires connected graph");
  const int n = b.dimension();
  if (n > 8) throw std::invalid_argument("face posets are limited to 9 ground elements");
  FacePoset p;
  p.facets = b.proper_tubes();
  p.reset(n);
  p.add(n, {});
  bool oversize = false;
  for_each_clique(compatibility_graph(b, p.facets), n + 1, [&](const std::vector<int>& c) {
    if (static_cast<int>(c.size()) > n)
      oversize = true;
    else
      p.add(n - static_cast<int>(c.size()), c);
  });
  if (oversize) throw std::logic_error("compatibility graph has a clique larger than the dimension");
  // every maximal clique must be a vertex
  for (int d = 1; d <= n; ++d)
    for (const auto& t : p.faces(d)) {
      bool extends = false;
      for (std::size_t j = 0; j < p.facets.size() && !extends; ++j) {
        if (std::binary_search(t.begin(), t.end(), static_cast<int>(j))) continue;
        Tubing u = t;
        u.insert(std::upper_bound(u.begin(), u.end(), static_cast<int>(j)), static_cast<int>(j));
        extends = p.find(u).has_value();
      }
      if (!extends) throw std::logic_error("a face does not extend to a vertex");
    }
  return p;
}

/// Every vertex lies in exactly n facets and every family of pairwise intersecting facets
/// has a common face.
inline bool check_simple_and_flag(const FacePoset& p) {
  const std::size_t m = p.facet_count();
  for (const auto& v : p.vertices())
    if (static_cast<int>(v.size()) != p.n) return false;
  std::vector<boost::dynamic_bitset<>> meet(m, boost::dynamic_bitset<>(m));
  std::vector<boost::dynamic_bitset<>> vert;
  for (const auto& v : p.vertices()) {
    boost::dynamic_bitset<> bits(m);
    for (int i : v) bits.set(i);
    vert.push_back(bits);
    for (int i : v)
      for (int j : v)
        if (i != j) meet[i].set(j);
  }
  bool ok = true;
  for_each_clique(meet, static_cast<int>(m), [&](const std::vector<int>& c) {
    if (!ok) return;
    boost::dynamic_bitset<> bits(m);
    for (int i : c) bits.set(i);
    ok = std::any_of(vert.begin(), vert.end(), [&](const auto& v) { return bits.is_subset_of(v); });
  });
  return ok;
}

struct FaceVectors {
  /// f[k] = f_{k-1}: faces lying in exactly k facets.
  std::vector<long long> f;
  std::vector<long long> h;
  /// Empty when h is not palindromic.
  std::vector<long long> gamma;
};

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// gamma with h(t) = sum_j gamma_j t^j (1+t)^(n-2j).
inline std::vector<long long> gamma_from_h(const std::vector<long long>& h) {
  const int n = static_cast<int>(h.size()) - 1;
  for (int i = 0; i <= n; ++i)
    if (h[i] != h[n - i]) return {};
  std::vector<long long> rest = h, gamma;
  for (int j = 0; 2 * j <= n; ++j) {
    const long long g = rest[j];
    gamma.push_back(g);
    for (int i = 0; i <= n - 2 * j; ++i) rest[i + j] -= g * binomial(n - 2 * j, i);
  }
  return gamma;
}

inline FaceVectors face_vectors(const FacePoset& p) {
  const int n = p.n;
  FaceVectors fv;
  fv.f.resize(n + 1);
  for (int k = 0; k <= n; ++k) fv.f[k] = static_cast<long long>(p.faces(n - k).size());
  fv.h.assign(n + 1, 0);
  for (int i = 0; i <= n; ++i)
    for (int k = 0; k <= i; ++k) fv.h[i] += ((i - k) % 2 ? -1 : 1) * binomial(n - k, i - k) * fv.f[k];
  fv.gamma = gamma_from_h(fv.h);
  return fv;
}

/// Number of members of b contained in s.
inline long long support_constant(const BuildingSet& b, VertexSet s) {
  return std::count_if(b.tubes.begin(), b.tubes.end(), [&](VertexSet t) { return t.subset_of(s); });
}

/// Vertex of the Minkowski realization for a vertex tubing, checked against every halfspace.
inline RationalPoint vertex_coordinates(const BuildingSet& b, const std::vector<VertexSet>& tubing) {
  const int dim = b.ground.size();
  if (static_cast<int>(tubing.size()) != dim - 1) throw std::invalid_argument("tubing is not a vertex");
  RationalMatrix a;
  std::vector<Rational> rhs;
  for (auto s : tubing) {
    std::vector<Rational> row(dim, 0);
    for (int i : s.members()) row[i] = 1;
    a.push_back(row);
    rhs.push_back(support_constant(b, s));
  }
  a.push_back(std::vector<Rational>(dim, 1));
  rhs.push_back(static_cast<long long>(b.tubes.size()));
  RationalPoint x;
  if (!solve_linear(a, rhs, x)) throw std::invalid_argument("tubing is not a vertex");
  for (auto s : b.proper_tubes()) {
    Rational sum = 0;
    for (int i : s.members()) sum += x[i];
    if (sum < support_constant(b, s)) throw std::logic_error("vertex violates the halfspace of " + s.to_string());
  }
  return x;
}

/// Vertices of the sum of the simplices Delta_S over S in b, from every strict order of the
/// ground set used as a generic linear functional.
inline std::set<RationalPoint> minkowski_vertex_oracle(const BuildingSet& b) {
  const int dim = b.ground.size();
  if (dim > 7) throw std::invalid_argument("Minkowski oracle is limited to 7 ground elements");
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::set<RationalPoint> out;
  do {
    // order[r] has weight rank r; maximize over each Delta_S
    std::vector<int> rank(dim);
    for (int r = 0; r < dim; ++r) rank[order[r]] = r;
    std::vector<long long> x(dim, 0);
    for (auto s : b.tubes) {
      int best = -1;
      for (int i : s.members())
        if (best < 0 || rank[i] > rank[best]) best = i;
      ++x[best];
    }
    out.insert(RationalPoint(x.begin(), x.end()));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

/// Order complex of the face poset: top simplices are complete flags, vertex colour is
/// face dimension (which is also the slot).
struct FlagComplex {
  SimplicialCellComplex complex;
  std::vector<int> colour;
  /// Vertex -> (face dimension, face index).
  std::vector<std::pair<int, int>> face;
  /// Top cell -> (poset vertex index, order in which its facets are dropped).
  std::vector<std::pair<int, std::vector<int>>> flags;
};

inline FlagComplex barycentric_complex(const FacePoset& p) {
  const int n = p.n;
  std::vector<std::vector<int>> orders;
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 0);
  do orders.push_back(o);
  while (std::next_permutation(o.begin(), o.end()));
  const std::size_t F = orders.size();
  const std::size_t T = p.vertices().size() * F;
  FlagComplex out;
  out.flags.resize(T);
  // flag face at dimension d keeps the positions order[d..n-1] of the vertex tubing
  std::vector<std::vector<int>> face_ids(T, std::vector<int>(n + 1));
  for (std::size_t t = 0; t < T; ++t) {
    const int v = static_cast<int>(t / F);
    const auto& ord = orders[t % F];
    const Tubing& vt = p.vertices()[v];
    out.flags[t] = {v, ord};
    for (int d = 0; d <= n; ++d) {
      Tubing face;
      for (int j = d; j < n; ++j) face.push_back(vt[ord[j]]);
      std::sort(face.begin(), face.end());
      face_ids[t][d] = p.index(face);
    }
  }
  out.complex = SimplicialCellComplex::build(n, T, [&](std::size_t t, SlotMask mask) {
    CellKey k{static_cast<std::int64_t>(mask)};
    for (int d = 0; d <= n; ++d)
      if ((mask >> d) & 1u) k.push_back(face_ids[t][d]);
    return k;
  });
  out.colour.assign(out.complex.count(0), -1);
  out.face.assign(out.complex.count(0), {-1, -1});
  for (std::size_t t = 0; t < T; ++t)
    for (int d = 0; d <= n; ++d) {
      const CellId v = out.complex.top_subcell(t, SlotMask{1} << d);
      out.colour[v] = d;
      out.face[v] = {d, face_ids[t][d]};
    }
  return out;
}

inline RationalPoint simplex_barycentre(int dim, VertexSet s) {
  RationalPoint x(dim, 0);
  for (int i : s.members()) x[i] = Rational(1, s.size());
  return x;
}

inline VertexSet tubing_union(const FacePoset& p, const Tubing& t) {
  VertexSet u;
  for (int i : t) u = u | p.facets[i];
  return u;
}

/// Image under pi of every vertex of the flag complex: the barycentre of the face of the
/// simplex spanned by the ground elements outside the tubes.
inline std::vector<RationalPoint> pi_map(const BuildingSet& b, const FacePoset& p, const FlagComplex& k) {
  const int dim = b.ground.size();
  std::vector<RationalPoint> out;
  out.reserve(k.face.size());
  for (auto [d, id] : k.face) out.push_back(simplex_barycentre(dim, b.ground - tubing_union(p, p.faces(d)[id])));
  return out;
}

/// Barycentres of all faces of the Minkowski realization, per dimension.
inline std::vector<std::vector<RationalPoint>> face_barycentres(const BuildingSet& b, const FacePoset& p) {
  const int n = p.n, dim = n + 1;
  std::vector<std::vector<RationalPoint>> sum(n + 1);
  std::vector<std::vector<int>> cnt(n + 1);
  for (int d = 0; d <= n; ++d) {
    sum[d].assign(p.faces(d).size(), RationalPoint(dim, 0));
    cnt[d].assign(p.faces(d).size(), 0);
  }
  for (const auto& v : p.vertices()) {
    const RationalPoint x = vertex_coordinates(b, p.tubes_of(v));
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Tubing t;
      for (int j = 0; j < n; ++j)
        if ((mask >> j) & 1u) t.push_back(v[j]);
      const int d = n - static_cast<int>(t.size());
      const int id = p.index(t);
      for (int i = 0; i < dim; ++i) sum[d][id][i] += x[i];
      ++cnt[d][id];
    }
  }
  for (int d = 0; d <= n; ++d)
    for (std::size_t id = 0; id < sum[d].size(); ++id)
      for (auto& x : sum[d][id]) x /= cnt[d][id];
  return sum;
}

struct PiDegreeReport {
  /// Common local degree over all top simplices of the subdivided simplex; 0 when they differ.
  int degree = 0;
  bool uniform = false;
  bool facets_to_faces = true;
  bool boundary_to_boundary = true;
  std::size_t degenerate = 0;
  std::size_t targets = 0;
  std::size_t boundary_targets_hit = 0;
};

/// Local degree of pi over every top simplex of the barycentric subdivision of the simplex,
/// with both sides oriented inside the hyperplanes of constant coordinate sum.
inline PiDegreeReport pi_degree(const BuildingSet& b) {
  if (!b.connected()) throw std::invalid_argument("graph-associahedron requires connected graph");
  const int n = b.dimension(), dim = n + 1;
  if (n > 5) throw std::invalid_argument("pi degree check is limited to dimension 5");
  const FacePoset p = face_poset(b);
  const FlagComplex k = barycentric_complex(p);
  const auto bary = face_barycentres(b, p);
  PiDegreeReport rep;
  for (std::size_t v = 0; v < k.face.size(); ++v) {
    auto [d, id] = k.face[v];
    const Tubing& t = p.faces(d)[id];
    const VertexSet img = b.ground - tubing_union(p, t);
    for (int i : t)
      if (img.intersects(p.facets[i])) rep.facets_to_faces = false;
    if (!t.empty() && img == b.ground) rep.boundary_to_boundary = false;
  }
  std::map<std::vector<int>, int> deg;
  std::set<std::vector<int>> boundary_hit;
  const SimplicialCellComplex& c = k.complex;
  for (std::size_t top = 0; top < c.top_count(); ++top) {
    std::vector<RationalPoint> src(dim), dst(dim);
    std::vector<VertexSet> chain(dim);
    for (int s = 0; s <= n; ++s) {
      auto [d, id] = k.face[c.top_subcell(top, SlotMask{1} << s)];
      src[s] = bary[d][id];
      chain[s] = b.ground - tubing_union(p, p.faces(d)[id]);
      dst[s] = simplex_barycentre(dim, chain[s]);
    }
    std::vector<int> order;
    bool ok = true;
    for (int s = 0; s <= n && ok; ++s) {
      const VertexSet prev = s ? chain[s - 1] : VertexSet{};
      if (!prev.subset_of(chain[s]) || chain[s].size() != s + 1)
        ok = false;
      else
        order.push_back((chain[s] - prev).min());
    }
    if (!ok) {
      ++rep.degenerate;
      continue;
    }
    const int sk = hyperplane_orientation(src), sd = hyperplane_orientation(dst);
    if (sk == 0 || sd == 0) throw std::logic_error("degenerate simplex in a non-degenerate flag");
    deg[order] += sk * sd;
    boundary_hit.insert(std::vector<int>(order.begin(), order.end() - 1));
  }
  rep.targets = deg.size();
  rep.boundary_targets_hit = boundary_hit.size();
  std::size_t expected = 1;
  for (int i = 2; i <= dim; ++i) expected *= i;
  std::set<int> values;
  for (auto& [o, v] : deg) values.insert(v);
  rep.uniform = deg.size() == expected && values.size() == 1;
  rep.degree = rep.uniform ? *values.begin() : 0;
  if (rep.boundary_targets_hit != expected) rep.boundary_to_boundary = false;
  return rep;
}

}  // namespace nestotope
