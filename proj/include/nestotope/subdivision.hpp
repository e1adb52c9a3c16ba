#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellcomplex.hpp"
#include "graph.hpp"
#include "rational.hpp"

namespace nestotope {

/// A geometric subdivision of the standard simplex with vertices regularly coloured.
struct LemmaSubdivision {
  int n = 0;
  /// Barycentric coordinates in the standard n-simplex.
  std::vector<RationalPoint> coords;
  std::vector<int> colour;
  /// Top simplices; vertex lists ordered by colour.
  std::vector<std::vector<int>> tops;

  /// Coordinates of vertex v that are nonzero.
  VertexSet support(int v) const {
    VertexSet s;
    for (int i = 0; i <= n; ++i)
      if (coords[v][i] != 0) s = s | VertexSet::singleton(i);
    return s;
  }
  /// Smallest face of the simplex containing the given simplex.
  VertexSet carrier(const std::vector<int>& verts) const {
    VertexSet s;
    for (int v : verts) s = s | support(v);
    return s;
  }
  /// Determinant of the barycentric coordinate rows of top t in colour order.
  Rational volume(std::size_t t) const {
    RationalMatrix m;
    for (int v : tops[t]) m.push_back(coords[v]);
    return determinant(std::move(m));
  }
};

namespace detail {

inline void sort_by_colour(std::vector<int>& top, const std::vector<int>& colour) {
  std::sort(top.begin(), top.end(), [&](int u, int v) { return colour[u] < colour[v]; });
}

/// Image of a point of the cross-polytope (coordinates y_1..y_n) in the n-simplex.
inline RationalPoint cross_to_simplex(const RationalPoint& y) {
  const int n = static_cast<int>(y.size());
  RationalPoint z(n + 1, Rational(0));
  Rational rest = 1;
  for (int j = 0; j < n; ++j) {
    const Rational w = abs(y[j]);
    if (w == 0) continue;
    rest -= w;
    const int i = j + 1;
    if (y[j] > 0) {
      z[i] += w;
    } else {
      for (int k = 0; k < i; ++k) z[k] += w / i;
    }
  }
  for (int k = 0; k <= n; ++k) z[k] += rest / (n + 1);
  return z;
}

}  // namespace detail

/// Coloured subdivision of the n-simplex for a connected graph on n+1 vertices and a
/// vertex a: cone over the join of reflected subdivisions for the components of g - a,
/// pushed to the simplex by the piecewise linear map from the cross-polytope.
inline LemmaSubdivision lemma_subdivision(const Graph& g, int a) {
  if (!g.is_connected()) throw std::invalid_argument("graph must be connected");
  if (!g.vertices().contains(a)) throw std::invalid_argument("apex is not a vertex of the graph");
  LemmaSubdivision out;
  out.n = g.n_vertices() - 1;
  if (out.n == 0) {
    out.coords = {{Rational(1)}};
    out.colour = {a};
    out.tops = {{0}};
    return out;
  }
  struct Sphere {
    std::vector<RationalPoint> coords;
    std::vector<int> colour;
    std::vector<std::vector<int>> tops;
  };
  std::vector<Sphere> spheres;
  for (const auto& comp : components_minus_vertex(g, a)) {
    int b_local = -1;
    for (std::size_t i = 0; i < comp.labels.size() && b_local < 0; ++i)
      if (g.adjacent(a, comp.labels[i])) b_local = static_cast<int>(i);
    LemmaSubdivision k = lemma_subdivision(comp.graph, b_local);
    for (int& c : k.colour) c = comp.labels[c];
    const int d = k.n + 1;
    Sphere s;
    std::map<RationalPoint, int> index;
    for (std::uint32_t signs = 0; signs < (1u << d); ++signs) {
      std::vector<int> where(k.coords.size());
      for (std::size_t v = 0; v < k.coords.size(); ++v) {
        RationalPoint p = k.coords[v];
        for (int j = 0; j < d; ++j)
          if ((signs >> j) & 1u) p[j] = -p[j];
        auto [it, fresh] = index.try_emplace(p, static_cast<int>(s.coords.size()));
        if (fresh) {
          s.coords.push_back(p);
          s.colour.push_back(k.colour[v]);
        }
        where[v] = it->second;
      }
      for (const auto& t : k.tops) {
        std::vector<int> r;
        for (int v : t) r.push_back(where[v]);
        s.tops.push_back(std::move(r));
      }
    }
    spheres.push_back(std::move(s));
  }
  // join of the spheres, then cone with apex at the origin
  const int n = out.n;
  std::vector<RationalPoint> q{RationalPoint(n, Rational(0))};
  out.colour = {a};
  std::vector<int> offset;
  int block = 0;
  for (const auto& s : spheres) {
    offset.push_back(static_cast<int>(q.size()));
    const int d = static_cast<int>(s.coords.front().size());
    for (std::size_t v = 0; v < s.coords.size(); ++v) {
      RationalPoint p(n, Rational(0));
      for (int j = 0; j < d; ++j) p[block + j] = s.coords[v][j];
      q.push_back(std::move(p));
      out.colour.push_back(s.colour[v]);
    }
    block += d;
  }
  std::vector<std::size_t> pick(spheres.size(), 0);
  while (true) {
    std::vector<int> top{0};
    for (std::size_t i = 0; i < spheres.size(); ++i)
      for (int v : spheres[i].tops[pick[i]]) top.push_back(offset[i] + v);
    detail::sort_by_colour(top, out.colour);
    out.tops.push_back(std::move(top));
    std::size_t i = 0;
    while (i < spheres.size() && ++pick[i] == spheres[i].tops.size()) pick[i++] = 0;
    if (i == spheres.size()) break;
  }
  for (const auto& p : q) out.coords.push_back(detail::cross_to_simplex(p));
  return out;
}

/// Barycentric subdivision of the n-simplex, vertices coloured by the dimension of the
/// face whose barycentre they are.
inline LemmaSubdivision barycentric_simplex(int n) {
  LemmaSubdivision out;
  out.n = n;
  std::map<std::uint32_t, int> index;
  auto vertex = [&](std::uint32_t face) {
    auto [it, fresh] = index.try_emplace(face, static_cast<int>(out.coords.size()));
    if (fresh) {
      const int k = std::popcount(face);
      RationalPoint p(n + 1, Rational(0));
      for (int i = 0; i <= n; ++i)
        if ((face >> i) & 1u) p[i] = Rational(1, k);
      out.coords.push_back(std::move(p));
      out.colour.push_back(k - 1);
    }
    return it->second;
  };
  std::vector<int> perm(n + 1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> top;
    std::uint32_t face = 0;
    for (int j = 0; j <= n; ++j) top.push_back(vertex(face |= 1u << perm[j]));
    out.tops.push_back(std::move(top));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

struct LemmaCertificate {
  bool regular_colouring = false;
  bool nondegenerate = false;
  bool volume_ok = false;
  bool facets_ok = false;
  bool condition1 = false;
  bool condition2 = false;
  std::size_t top_count = 0;
  std::size_t ridges_checked = 0;
  std::string failure;
  bool ok() const { return regular_colouring && nondegenerate && volume_ok && facets_ok && condition1 && condition2; }
};

/// Checks that k is a subdivision of the simplex (exact volumes and facet sidedness), that
/// its colouring is regular, that boundary vertices avoid colour a, and that every
/// codimension-2 simplex missing two non-adjacent colours lies in 4 top simplices when
/// interior and in 2 when it lies in the interior of a facet.
inline LemmaCertificate verify_lemma_conditions(const LemmaSubdivision& k, const Graph& g, int a) {
  LemmaCertificate c;
  const int n = k.n;
  c.top_count = k.tops.size();
  auto fail = [&](const std::string& why) {
    if (c.failure.empty()) c.failure = why;
  };
  if (g.n_vertices() != n + 1) {
    fail("graph has the wrong number of vertices");
    return c;
  }
  const VertexSet all = VertexSet::prefix(n + 1);
  c.regular_colouring = true;
  for (const auto& t : k.tops) {
    VertexSet cs;
    for (int v : t) cs = cs | VertexSet::singleton(k.colour[v]);
    if (cs != all || static_cast<int>(t.size()) != n + 1) c.regular_colouring = false;
  }
  if (!c.regular_colouring) fail("a top simplex is not rainbow");
  c.nondegenerate = true;
  Rational total = 0;
  for (std::size_t t = 0; t < k.tops.size(); ++t) {
    Rational v = k.volume(t);
    if (v == 0) c.nondegenerate = false;
    total += abs(v);
  }
  if (!c.nondegenerate) fail("degenerate top simplex");
  c.volume_ok = total == 1;
  if (!c.volume_ok) fail("volumes do not add up to the simplex");
  // facets: one cofacet on the boundary, two on opposite sides inside
  std::map<std::vector<int>, std::vector<std::pair<std::size_t, int>>> facets;
  for (std::size_t t = 0; t < k.tops.size(); ++t)
    for (int i = 0; i <= n; ++i) {
      std::vector<int> f;
      for (int j = 0; j <= n; ++j)
        if (j != i) f.push_back(k.tops[t][j]);
      std::sort(f.begin(), f.end());
      facets[f].emplace_back(t, k.tops[t][i]);
    }
  c.facets_ok = true;
  for (const auto& [f, cof] : facets) {
    const bool boundary = k.carrier(f) != all;
    if (cof.size() == 1 && boundary) continue;
    if (cof.size() != 2 || boundary) {
      c.facets_ok = false;
      continue;
    }
    RationalMatrix m1, m2;
    for (int v : f) {
      m1.push_back(k.coords[v]);
      m2.push_back(k.coords[v]);
    }
    m1.push_back(k.coords[cof[0].second]);
    m2.push_back(k.coords[cof[1].second]);
    if (determinant(m1) * determinant(m2) >= 0) c.facets_ok = false;
  }
  if (!c.facets_ok) fail("facet incidences do not form a subdivision");
  c.condition1 = true;
  for (std::size_t v = 0; v < k.coords.size(); ++v)
    if (k.colour[v] == a && k.support(static_cast<int>(v)) != all) c.condition1 = false;
  if (!c.condition1) fail("boundary vertex coloured by the apex");
  c.condition2 = true;
  if (n >= 1) {
    std::map<std::vector<int>, int> ridges;
    for (const auto& t : k.tops)
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          std::vector<int> r;
          for (int l = 0; l <= n; ++l)
            if (l != i && l != j) r.push_back(t[l]);
          std::sort(r.begin(), r.end());
          ++ridges[r];
        }
    for (const auto& [r, count] : ridges) {
      VertexSet cs;
      for (int v : r) cs = cs | VertexSet::singleton(k.colour[v]);
      const auto missing = (all - cs).members();
      if (missing.size() != 2 || g.adjacent(missing[0], missing[1])) continue;
      ++c.ridges_checked;
      const int carrier = k.carrier(r).size();
      const bool good = (carrier == n + 1 && count == 4) || (carrier == n && count == 2);
      if (!good) c.condition2 = false;
    }
  }
  if (!c.condition2) fail("codimension-2 simplex with non-adjacent missing colours has the wrong star");
  return c;
}

enum class SubdivisionStrategy { Auto, Lemma };

/// Coloured subdivision Y of a pseudo-manifold Z. Slot i of every top cell of Y carries
/// colour i.
struct PseudoManifoldSubdivision {
  SimplicialCellComplex complex;
  std::vector<int> colour;
  /// Orientation of each top cell relative to its slot order, inherited from Z.
  std::vector<int> orientation;
  BarycentricSubdivision base;
  std::optional<LemmaSubdivision> lemma;
  int apex = -1;
  /// Top cell -> (top cell of the barycentric subdivision, top of the lemma subdivision or -1).
  std::vector<std::size_t> base_top;
  std::vector<int> lemma_top;
};

/// Subdivides an oriented pseudo-manifold of dimension n for a connected graph on n+1
/// vertices. Auto takes the barycentric subdivision itself when g is the path 0-1-..-n.
inline PseudoManifoldSubdivision subdivide_pseudomanifold(const SimplicialCellComplex& z, const Graph& g,
                                                          SubdivisionStrategy strategy = SubdivisionStrategy::Auto,
                                                          std::optional<int> apex = std::nullopt) {
  const int n = z.dim();
  if (n < 1) throw std::invalid_argument("pseudo-manifold must have dimension at least 1");
  if (g.n_vertices() != n + 1)
    throw std::invalid_argument("graph must have dim+1 = " + std::to_string(n + 1) + " vertices, got " +
                                std::to_string(g.n_vertices()));
  if (!g.is_connected()) throw std::invalid_argument("graph must be connected");
  std::string why;
  if (!validate_complex(z, &why)) throw std::invalid_argument("invalid complex: " + why);
  auto cert = orient(z);
  if (!cert.is_pseudo) throw std::invalid_argument("input is not a pseudo-manifold: " + cert.reason);
  if (!cert.orientable) throw std::invalid_argument("non-orientable input");
  PseudoManifoldSubdivision y;
  y.base = barycentric_subdivide(z, &cert.orientation);
  const auto& zb = y.base.complex;
  if (strategy == SubdivisionStrategy::Auto && g.is_standard_path()) {
    y.complex = zb;
    y.colour = y.base.colour;
    y.orientation = y.base.orientation;
    y.base_top.resize(zb.top_count());
    std::iota(y.base_top.begin(), y.base_top.end(), 0);
    y.lemma_top.assign(zb.top_count(), -1);
    return y;
  }
  y.apex = apex.value_or(0);
  y.lemma = lemma_subdivision(g, y.apex);
  const auto& k = *y.lemma;
  const std::size_t kt = k.tops.size();
  std::vector<std::uint32_t> support(k.coords.size());
  for (std::size_t v = 0; v < k.coords.size(); ++v) support[v] = static_cast<std::uint32_t>(k.support(static_cast<int>(v)).bits());
  y.complex = SimplicialCellComplex::build(n, zb.top_count() * kt, [&](std::size_t t, SlotMask mask) {
    const auto& top = k.tops[t % kt];
    std::uint32_t s = 0;
    CellKey key{0, 0};
    for (int i = 0; i <= n; ++i)
      if ((mask >> i) & 1u) {
        s |= support[top[i]];
        key.push_back(top[i]);
      }
    key[0] = std::popcount(s);
    key[1] = zb.top_subcell(t / kt, s);
    return key;
  });
  if (!y.complex.inconsistency().empty()) throw std::logic_error("subdivision gluing: " + y.complex.inconsistency());
  const auto& yc = y.complex;
  y.colour.assign(yc.count(0), -1);
  y.orientation.resize(yc.top_count());
  y.base_top.resize(yc.top_count());
  y.lemma_top.resize(yc.top_count());
  std::vector<int> ksign(kt);
  for (std::size_t t = 0; t < kt; ++t) ksign[t] = k.volume(t) > 0 ? 1 : -1;
  for (std::size_t t = 0; t < yc.top_count(); ++t) {
    y.base_top[t] = t / kt;
    y.lemma_top[t] = static_cast<int>(t % kt);
    y.orientation[t] = y.base.orientation[t / kt] * ksign[t % kt];
    for (int i = 0; i <= n; ++i) {
      const CellId v = yc.top_subcell(t, SlotMask{1} << i);
      if (y.colour[v] >= 0 && y.colour[v] != i) throw std::logic_error("colouring is not well defined");
      y.colour[v] = i;
    }
  }
  return y;
}

struct StarCertificate {
  bool ok = false;
  bool regular = false;
  bool pseudo = false;
  bool orientation_consistent = false;
  std::size_t ridges_checked = 0;
  std::size_t failures = 0;
  std::string failure;
};

/// Every codimension-2 cell of y whose two missing colours are non-adjacent in g lies in
/// exactly four top cells (counted with multiplicity).
inline StarCertificate condition_star_check(const PseudoManifoldSubdivision& y, const Graph& g) {
  StarCertificate c;
  const auto& yc = y.complex;
  const int n = yc.dim();
  c.regular = true;
  for (std::size_t e = 0; e < yc.count(1); ++e) {
    auto v = yc.vertices(1, static_cast<CellId>(e));
    if (y.colour[v[0]] == y.colour[v[1]]) c.regular = false;
  }
  for (std::size_t t = 0; t < yc.top_count(); ++t)
    for (int i = 0; i <= n; ++i)
      if (y.colour[yc.top_subcell(t, SlotMask{1} << i)] != i) c.regular = false;
  auto pm = orient(yc);
  c.pseudo = pm.is_pseudo;
  if (pm.orientable) {
    // the relative sign against the propagated orientation is constant across every facet
    c.orientation_consistent = true;
    for (const auto& inc : pm.facet_incidence) {
      if (inc.size() != 2) continue;
      const int s0 = y.orientation[inc[0].top] * pm.orientation[inc[0].top];
      const int s1 = y.orientation[inc[1].top] * pm.orientation[inc[1].top];
      if (s0 != s1) c.orientation_consistent = false;
    }
  }
  if (n >= 2) {
    std::vector<int> count(yc.count(n - 2), 0);
    std::vector<std::pair<int, int>> missing(count.size(), {-1, -1});
    const SlotMask full = full_mask(n);
    for (std::size_t t = 0; t < yc.top_count(); ++t)
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          const CellId r = yc.top_subcell(t, full & ~(SlotMask{1} << i) & ~(SlotMask{1} << j));
          ++count[r];
          missing[r] = {i, j};
        }
    for (std::size_t r = 0; r < count.size(); ++r) {
      auto [i, j] = missing[r];
      if (i < 0 || g.adjacent(i, j)) continue;
      ++c.ridges_checked;
      if (count[r] != 4) ++c.failures;
    }
  }
  if (!c.regular) c.failure = "colouring is not regular";
  else if (!c.pseudo) c.failure = "not a pseudo-manifold";
  else if (!c.orientation_consistent) c.failure = "inherited orientation is not coherent";
  else if (c.failures) c.failure = std::to_string(c.failures) + " codimension-2 cells have the wrong star";
  c.ok = c.failure.empty();
  return c;
}

}  // namespace nestotope
