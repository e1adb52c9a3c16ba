#pragma once

#include <bit>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellcomplex.hpp"
#include "errors.hpp"
#include "gf2.hpp"
#include "graph.hpp"
#include "nestohedron.hpp"

namespace nestotope {

/// Map from facets to GF(2)^n; bit j of a column is the coefficient of b_{j+1}.
struct CharacteristicFunction {
  int n = 0;
  std::vector<Gf2Vector> columns;  // indexed like FacePoset::facets

  Gf2Vector apply(Gf2Vector g) const {
    Gf2Vector out = 0;
    for (; g; g &= g - 1) out ^= columns[std::countr_zero(g)];
    return out;
  }
};

inline Gf2Vector basis_vector(int i) { return Gf2Vector{1} << (i - 1); }

/// Columns sum_{i in S} b_i when 0 is outside S, else sum over the complement.
inline CharacteristicFunction lambda_can(const BuildingSet& b) {
  if (!b.connected()) throw std::invalid_argument("graph-associahedron requires connected graph");
  CharacteristicFunction l;
  l.n = b.dimension();
  for (auto s : b.proper_tubes()) {
    const VertexSet support = s.contains(0) ? b.ground - s : s;
    Gf2Vector col = 0;
    for (int i : support.members()) col ^= basis_vector(i);
    l.columns.push_back(col);
  }
  return l;
}

/// Column b_{|S|}; defined on the building set of the complete graph.
inline CharacteristicFunction lambda_tomei(const BuildingSet& b) {
  const int n = b.dimension();
  if (b.tubes.size() != (std::size_t{1} << (n + 1)) - 1) throw std::invalid_argument("Tomei function needs the complete graph");
  CharacteristicFunction l;
  l.n = n;
  for (auto s : b.proper_tubes()) l.columns.push_back(basis_vector(s.size()));
  return l;
}

/// The orientable characteristic function on the three-dimensional associahedron.
inline CharacteristicFunction lambda_star_as3(const BuildingSet& b) {
  if (!(b.ground == VertexSet::prefix(4) && b.tubes.size() == 10 && b.contains(VertexSet{1, 2}) && !b.contains(VertexSet{0, 2})))
    throw std::invalid_argument("this function is defined on the building set of the path on 4 vertices");
  const Gf2Vector b1 = basis_vector(1), b2 = basis_vector(2), b3 = basis_vector(3);
  CharacteristicFunction l;
  l.n = 3;
  for (auto s : b.proper_tubes()) {
    if (s.size() == 1) l.columns.push_back(s.min() <= 1 ? b1 : b2);
    else if (s.size() == 2) l.columns.push_back(b3);
    else l.columns.push_back(b1 ^ b2 ^ b3);
  }
  return l;
}

/// At every vertex the columns of its facets form a basis.
inline bool validate_characteristic(const FacePoset& p, const CharacteristicFunction& l) {
  if (l.columns.size() != p.facet_count() || l.n != p.n) return false;
  for (const auto& v : p.vertices()) {
    Gf2Subspace w;
    for (int i : v) w.insert(l.columns[i]);
    if (w.dimension() != p.n) return false;
  }
  return true;
}

/// No odd number of columns sums to zero, i.e. the all-ones vector lies in the row space.
inline bool is_orientable_smallcover(const CharacteristicFunction& l) {
  const std::size_t m = l.columns.size();
  if (m > 64) throw std::invalid_argument("orientability test supports at most 64 facets");
  Gf2Subspace rows;
  for (int j = 0; j < l.n; ++j) {
    Gf2Vector r = 0;
    for (std::size_t s = 0; s < m; ++s)
      if ((l.columns[s] >> j) & 1u) r |= Gf2Vector{1} << s;
    rows.insert(r);
  }
  const Gf2Vector ones = m == 64 ? ~Gf2Vector{0} : (Gf2Vector{1} << m) - 1;
  return rows.contains(ones);
}

/// Copies of the flag complex of P indexed by GF(2)^rank, glued along faces: the copies g and
/// g' of a point interior to the face F coincide iff g - g' lies in the span of the columns
/// of the facets containing F.
struct GluedManifold {
  int rank = 0;
  std::size_t flags_per_copy = 0;
  std::vector<Gf2Vector> columns;
  SimplicialCellComplex complex;

  /// Top cell index for copy g and flag f.
  std::size_t top(Gf2Vector g, std::size_t f) const { return static_cast<std::size_t>(g) * flags_per_copy + f; }
  Gf2Vector copy_of(std::size_t top) const { return static_cast<Gf2Vector>(top / flags_per_copy); }
  std::size_t flag_of(std::size_t top) const { return top % flags_per_copy; }
};

inline constexpr std::size_t default_top_budget = 200'000;

inline GluedManifold glue(const FacePoset& p, const FlagComplex& k, const std::vector<Gf2Vector>& columns, int rank,
                          std::size_t top_budget = default_top_budget) {
  if (rank < 0 || rank > 40) throw BudgetExceeded("group rank " + std::to_string(rank) + " is too large to glue");
  const std::size_t F = k.complex.top_count();
  const std::size_t copies = std::size_t{1} << rank;
  if (copies > top_budget || copies * F > top_budget)
    throw BudgetExceeded("gluing needs " + std::to_string(copies) + " copies of " + std::to_string(F) +
                         " simplices, above the budget of " + std::to_string(top_budget));
  const int n = p.n;
  std::vector<std::vector<Gf2Subspace>> spans(n + 1);
  for (int d = 0; d <= n; ++d)
    for (const auto& t : p.faces(d)) {
      Gf2Subspace w;
      for (int i : t) w.insert(columns[i]);
      spans[d].push_back(std::move(w));
    }
  // largest face of each K-simplex decides the gluing
  const SimplicialCellComplex& kc = k.complex;
  GluedManifold out;
  out.rank = rank;
  out.flags_per_copy = F;
  out.columns = columns;
  std::vector<std::vector<int>> top_face(F, std::vector<int>(n + 1));
  for (std::size_t f = 0; f < F; ++f)
    for (int d = 0; d <= n; ++d) top_face[f][d] = k.face[kc.top_subcell(f, SlotMask{1} << d)].second;
  out.complex = SimplicialCellComplex::build(n, copies * F, [&](std::size_t t, SlotMask mask) {
    const Gf2Vector g = static_cast<Gf2Vector>(t / F);
    const std::size_t f = t % F;
    const int d = 31 - std::countl_zero(mask);
    return CellKey{static_cast<std::int64_t>(mask), kc.top_subcell(f, mask),
                   static_cast<std::int64_t>(spans[d][top_face[f][d]].reduce(g))};
  });
  return out;
}

inline GluedManifold real_moment_angle(const FacePoset& p, const FlagComplex& k, std::size_t top_budget = default_top_budget) {
  const int m = static_cast<int>(p.facet_count());
  std::vector<Gf2Vector> cols(m);
  for (int i = 0; i < m; ++i) cols[i] = Gf2Vector{1} << i;
  return glue(p, k, cols, m, top_budget);
}

inline GluedManifold small_cover(const FacePoset& p, const FlagComplex& k, const CharacteristicFunction& l,
                                 std::size_t top_budget = default_top_budget) {
  if (!validate_characteristic(p, l)) throw std::invalid_argument("invalid characteristic function");
  return glue(p, k, l.columns, l.n, top_budget);
}

/// The quotient of R_P by the kernel of lambda + eta, eta sending every facet generator to 1.
inline GluedManifold orientation_cover_via_eta(const FacePoset& p, const FlagComplex& k, const CharacteristicFunction& l,
                                               std::size_t top_budget = default_top_budget) {
  if (!validate_characteristic(p, l)) throw std::invalid_argument("invalid characteristic function");
  if (is_orientable_smallcover(l)) throw std::invalid_argument("orientation cover is disconnected; use two copies");
  std::vector<Gf2Vector> cols = l.columns;
  for (auto& c : cols) c |= Gf2Vector{1} << l.n;
  return glue(p, k, cols, l.n + 1, top_budget);
}

struct CoveringReport {
  bool well_defined = false;
  std::optional<std::size_t> fiber_size;
  bool deck_action_ok = false;
};

/// Cell-level map of glued manifolds induced by a homomorphism on copies; for the kernel of
/// the homomorphism, checks that it acts freely and preserves fibers.
inline CoveringReport covering_projection(const GluedManifold& from, const GluedManifold& to,
                                          const std::function<Gf2Vector(Gf2Vector)>& hom,
                                          const std::vector<Gf2Vector>& kernel_basis) {
  CoveringReport rep;
  std::vector<std::size_t> top_map(from.complex.top_count());
  for (std::size_t t = 0; t < top_map.size(); ++t) top_map[t] = to.top(hom(from.copy_of(t)), from.flag_of(t));
  CellMap proj = induced_cell_map(from.complex, to.complex, top_map);
  rep.well_defined = proj.well_defined;
  rep.fiber_size = constant_fiber_size(proj, to.complex);
  // deck action: the kernel permutes every fiber freely
  std::vector<Gf2Vector> kernel{0};
  for (auto h : kernel_basis) {
    const std::size_t sz = kernel.size();
    for (std::size_t i = 0; i < sz; ++i) kernel.push_back(kernel[i] ^ h);
  }
  rep.deck_action_ok = proj.well_defined;
  const int n = from.complex.dim();
  const SlotMask full = full_mask(n);
  std::vector<std::vector<char>> seen(n + 1);
  for (int d = 0; d <= n; ++d) seen[d].assign(from.complex.count(d), 0);
  for (std::size_t t = 0; t < top_map.size() && rep.deck_action_ok; ++t)
    for (SlotMask mask = 1; mask <= full && rep.deck_action_ok; ++mask) {
      const int d = std::popcount(mask) - 1;
      const CellId c = from.complex.top_subcell(t, mask);
      if (seen[d][c]) continue;
      std::vector<CellId> orbit;
      for (auto h : kernel) {
        const std::size_t t2 = from.top(from.copy_of(t) ^ h, from.flag_of(t));
        const CellId c2 = from.complex.top_subcell(t2, mask);
        if (proj.image[d][c2] != proj.image[d][c]) rep.deck_action_ok = false;
        orbit.push_back(c2);
      }
      std::sort(orbit.begin(), orbit.end());
      if (std::adjacent_find(orbit.begin(), orbit.end()) != orbit.end()) rep.deck_action_ok = false;
      for (auto c2 : orbit) seen[d][c2] = 1;
    }
  return rep;
}

/// Calls f on every characteristic function of p with values in GF(2)^n; stops when f
/// returns false. Assignments follow the facet order, pruned at each completed vertex.
inline void for_each_characteristic(const FacePoset& p, const std::function<bool(const CharacteristicFunction&)>& f) {
  const int n = p.n;
  const std::size_t m = p.facet_count();
  if (n > 20) throw std::invalid_argument("characteristic enumeration supports n <= 20");
  // vertices completed once facet j is assigned
  std::vector<std::vector<int>> completes(m);
  for (std::size_t v = 0; v < p.vertices().size(); ++v) completes[p.vertices()[v].back()].push_back(static_cast<int>(v));
  CharacteristicFunction l;
  l.n = n;
  l.columns.assign(m, 0);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (stop) return;
    if (j == m) {
      if (!f(l)) stop = true;
      return;
    }
    for (Gf2Vector c = 1; c < (Gf2Vector{1} << n) && !stop; ++c) {
      l.columns[j] = c;
      bool ok = true;
      for (int v : completes[j]) {
        Gf2Subspace w;
        for (int i : p.vertices()[v]) w.insert(l.columns[i]);
        if (w.dimension() != n) {
          ok = false;
          break;
        }
      }
      if (ok) rec(j + 1);
    }
    l.columns[j] = 0;
  };
  rec(0);
}

/// First orientable characteristic function found by exhaustive search, within a limit on
/// the number of complete functions examined.
inline std::optional<CharacteristicFunction> find_orientable_characteristic(const FacePoset& p, std::size_t limit) {
  std::optional<CharacteristicFunction> found;
  std::size_t seen = 0;
  for_each_characteristic(p, [&](const CharacteristicFunction& l) {
    ++seen;
    if (is_orientable_smallcover(l)) {
      found = l;
      return false;
    }
    return seen < limit;
  });
  return found;
}

}  // namespace nestotope
