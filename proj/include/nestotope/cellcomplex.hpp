#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>

namespace nestotope {

using CellId = std::int32_t;
/// Subset of the vertex slots 0..k of a k-cell.
using SlotMask = std::uint32_t;
using CellKey = std::vector<std::int64_t>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const { return boost::hash_range(k.begin(), k.end()); }
};

inline SlotMask full_mask(int k) { return (SlotMask{1} << (k + 1)) - 1; }

/// Position of slot `slot` among the set bits of `mask`.
inline int slot_position(SlotMask mask, int slot) { return std::popcount(mask & ((SlotMask{1} << slot) - 1)); }

/// Simplicial cell complex. A k-cell has k+1 vertex slots; faces(k, c)[i] is the (k-1)-cell
/// opposite slot i, with the remaining slots kept in order. Distinct cells may share all
/// their vertices.
class SimplicialCellComplex {
public:
  SimplicialCellComplex() = default;

  int dim() const { return dim_; }
  std::size_t count(int k) const { return k < 0 || k > dim_ ? 0 : counts_[k]; }
  std::size_t top_count() const { return count(dim_); }
  std::size_t total_cells() const { return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}); }

  std::span<const CellId> vertices(int k, CellId c) const {
    return {vertices_[k].data() + static_cast<std::size_t>(c) * (k + 1), static_cast<std::size_t>(k + 1)};
  }
  std::span<const CellId> faces(int k, CellId c) const {
    if (k == 0) return {};
    return {faces_[k].data() + static_cast<std::size_t>(c) * (k + 1), static_cast<std::size_t>(k + 1)};
  }

  /// Subcell of top cell t spanned by the slots in mask.
  CellId top_subcell(std::size_t t, SlotMask mask) const {
    return table_[t * (std::size_t{1} << (dim_ + 1)) + mask];
  }

  /// Subcell of the k-cell c spanned by the slots in mask (mask nonempty).
  CellId subcell(int k, CellId c, SlotMask mask) const {
    for (int i = k; i >= 0; --i) {
      if ((mask >> i) & 1u) continue;
      c = faces(k, c)[i];
      --k;
    }
    return c;
  }

  /// Empty when the construction produced a well-defined complex.
  const std::string& inconsistency() const { return inconsistency_; }

  /// Builds a complex from n_top top cells of dimension dim. Subcells (t, mask) with equal
  /// keys are identified; key(t, mask) must return a CellKey. Identified subcells must
  /// match slot by slot, otherwise the complex is flagged inconsistent.
  template <class KeyFn>
  static SimplicialCellComplex build(int dim, std::size_t n_top, KeyFn&& key) {
    if (dim < 0 || dim > 20) throw std::invalid_argument("unsupported cell dimension");
    SimplicialCellComplex c;
    c.dim_ = dim;
    const SlotMask full = full_mask(dim);
    const std::size_t stride = std::size_t{full} + 1;
    c.table_.assign(n_top * stride, -1);
    std::vector<std::unordered_map<CellKey, CellId, CellKeyHash>> ids(dim + 1);
    std::vector<std::vector<std::pair<std::size_t, SlotMask>>> reps(dim + 1);
    for (std::size_t t = 0; t < n_top; ++t) {
      for (SlotMask mask = 1; mask <= full; ++mask) {
        const int k = std::popcount(mask) - 1;
        auto [it, inserted] = ids[k].try_emplace(key(t, mask), static_cast<CellId>(reps[k].size()));
        if (inserted) reps[k].emplace_back(t, mask);
        c.table_[t * stride + mask] = it->second;
      }
    }
    c.counts_.resize(dim + 1);
    c.vertices_.resize(dim + 1);
    c.faces_.resize(dim + 1);
    for (int k = 0; k <= dim; ++k) {
      c.counts_[k] = reps[k].size();
      c.vertices_[k].resize(reps[k].size() * (k + 1));
      if (k > 0) c.faces_[k].resize(reps[k].size() * (k + 1));
      for (std::size_t id = 0; id < reps[k].size(); ++id) {
        auto [t, mask] = reps[k][id];
        c.fill_cell(k, static_cast<CellId>(id), t, mask, c.vertices_[k].data() + id * (k + 1),
                    k > 0 ? c.faces_[k].data() + id * (k + 1) : nullptr);
      }
    }
    std::vector<CellId> verts(dim + 1), fcs(dim + 1);
    for (std::size_t t = 0; t < n_top && c.inconsistency_.empty(); ++t) {
      for (SlotMask mask = 1; mask <= full; ++mask) {
        const int k = std::popcount(mask) - 1;
        const CellId id = c.table_[t * stride + mask];
        c.fill_cell(k, id, t, mask, verts.data(), fcs.data());
        auto sv = c.vertices(k, id);
        auto sf = c.faces(k, id);
        if (!std::equal(sv.begin(), sv.end(), verts.begin()) || (k > 0 && !std::equal(sf.begin(), sf.end(), fcs.begin()))) {
          c.inconsistency_ = "identified cells disagree slot by slot (top " + std::to_string(t) + ")";
          break;
        }
      }
    }
    return c;
  }

  /// Vertex-determined complex from top cells listed by vertex labels. Each top cell is
  /// reordered by increasing label; sort_signs (optional) receives the sign of that reordering.
  static SimplicialCellComplex from_top_vertices(int dim, const std::vector<std::vector<int>>& tops,
                                                 std::vector<int>* sort_signs = nullptr) {
    std::vector<std::vector<int>> sorted(tops.size());
    if (sort_signs) sort_signs->assign(tops.size(), 1);
    for (std::size_t t = 0; t < tops.size(); ++t) {
      if (static_cast<int>(tops[t].size()) != dim + 1) throw std::invalid_argument("top cell has wrong vertex count");
      sorted[t] = tops[t];
      int sign = 1;
      for (std::size_t i = 0; i < sorted[t].size(); ++i)
        for (std::size_t j = i + 1; j < sorted[t].size(); ++j) {
          if (sorted[t][i] == sorted[t][j]) throw std::invalid_argument("top cell repeats a vertex");
          if (sorted[t][i] > sorted[t][j]) sign = -sign;
        }
      std::sort(sorted[t].begin(), sorted[t].end());
      if (sort_signs) (*sort_signs)[t] = sign;
    }
    return build(dim, tops.size(), [&](std::size_t t, SlotMask mask) {
      CellKey k;
      for (int i = 0; i <= dim; ++i)
        if ((mask >> i) & 1u) k.push_back(sorted[t][i]);
      return k;
    });
  }

  /// Complex given by explicit face lists: faces[k][c] lists the k+1 faces of the k-cell c
  /// (k >= 1); n_vertices 0-cells. Vertex lists are derived from the faces.
  static SimplicialCellComplex from_faces(std::size_t n_vertices, const std::vector<std::vector<std::vector<CellId>>>& faces) {
    SimplicialCellComplex c;
    c.dim_ = static_cast<int>(faces.size());
    c.counts_.assign(c.dim_ + 1, 0);
    c.vertices_.resize(c.dim_ + 1);
    c.faces_.resize(c.dim_ + 1);
    c.counts_[0] = n_vertices;
    c.vertices_[0].resize(n_vertices);
    std::iota(c.vertices_[0].begin(), c.vertices_[0].end(), 0);
    for (int k = 1; k <= c.dim_; ++k) {
      const auto& fk = faces[k - 1];
      c.counts_[k] = fk.size();
      c.faces_[k].resize(fk.size() * (k + 1));
      c.vertices_[k].resize(fk.size() * (k + 1));
      for (std::size_t id = 0; id < fk.size(); ++id) {
        if (static_cast<int>(fk[id].size()) != k + 1) throw std::invalid_argument("cell has wrong face count");
        for (int i = 0; i <= k; ++i) {
          if (fk[id][i] < 0 || static_cast<std::size_t>(fk[id][i]) >= c.counts_[k - 1])
            throw std::invalid_argument("face reference out of range");
          c.faces_[k][id * (k + 1) + i] = fk[id][i];
        }
        auto last = c.vertices(k - 1, fk[id][k]);
        for (int j = 0; j < k; ++j) c.vertices_[k][id * (k + 1) + j] = last[j];
        c.vertices_[k][id * (k + 1) + k] = c.vertices(k - 1, fk[id][0])[k - 1];
      }
    }
    const SlotMask full = full_mask(c.dim_);
    c.table_.resize(c.top_count() * (std::size_t{full} + 1));
    for (std::size_t t = 0; t < c.top_count(); ++t)
      for (SlotMask mask = 1; mask <= full; ++mask)
        c.table_[t * (std::size_t{full} + 1) + mask] = c.subcell(c.dim_, static_cast<CellId>(t), mask);
    return c;
  }

private:
  void fill_cell(int k, CellId, std::size_t t, SlotMask mask, CellId* verts, CellId* fcs) const {
    const std::size_t stride = std::size_t{1} << (dim_ + 1);
    int j = 0;
    for (int i = 0; i <= dim_; ++i) {
      if (!((mask >> i) & 1u)) continue;
      verts[j] = table_[t * stride + (SlotMask{1} << i)];
      if (k > 0) fcs[j] = table_[t * stride + (mask & ~(SlotMask{1} << i))];
      ++j;
    }
  }

  int dim_ = -1;
  std::vector<std::size_t> counts_;
  std::vector<std::vector<CellId>> vertices_;
  std::vector<std::vector<CellId>> faces_;
  std::vector<CellId> table_;
  std::string inconsistency_;
};

/// Simplicial identities, distinct vertices per cell, and well-defined identifications.
inline bool validate_complex(const SimplicialCellComplex& c, std::string* why = nullptr) {
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  if (!c.inconsistency().empty()) return fail(c.inconsistency());
  for (int k = 1; k <= c.dim(); ++k) {
    for (std::size_t id = 0; id < c.count(k); ++id) {
      auto v = c.vertices(k, static_cast<CellId>(id));
      std::vector<CellId> sv(v.begin(), v.end());
      std::sort(sv.begin(), sv.end());
      if (std::adjacent_find(sv.begin(), sv.end()) != sv.end())
        return fail("cell " + std::to_string(id) + " of dimension " + std::to_string(k) + " repeats a vertex");
      if (k < 2) continue;
      auto f = c.faces(k, static_cast<CellId>(id));
      for (int j = 1; j <= k; ++j)
        for (int i = 0; i < j; ++i)
          if (c.faces(k - 1, f[j])[i] != c.faces(k - 1, f[i])[j - 1])
            return fail("simplicial identity fails on cell " + std::to_string(id) + " of dimension " + std::to_string(k));
    }
  }
  return true;
}

inline long long euler_characteristic(const SimplicialCellComplex& c) {
  long long chi = 0;
  for (int k = 0; k <= c.dim(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long long>(c.count(k));
  return chi;
}

/// True when every boundary of a boundary vanishes.
inline bool boundary_squared_zero(const SimplicialCellComplex& c) {
  for (int k = 2; k <= c.dim(); ++k) {
    for (std::size_t id = 0; id < c.count(k); ++id) {
      std::unordered_map<CellId, int> acc;
      auto f = c.faces(k, static_cast<CellId>(id));
      for (int i = 0; i <= k; ++i) {
        auto g = c.faces(k - 1, f[i]);
        for (int j = 0; j < k; ++j) acc[g[j]] += ((i + j) % 2 ? -1 : 1);
      }
      for (auto& [cell, v] : acc)
        if (v != 0) return false;
    }
  }
  return true;
}

struct FacetSide {
  std::size_t top = 0;
  int slot = 0;
};

struct PseudoManifoldCertificate {
  bool is_pseudo = false;
  std::string reason;
  /// Per (n-1)-cell, its top-cell incidences (exactly two when is_pseudo).
  std::vector<std::vector<FacetSide>> facet_incidence;
  int components = 0;
  bool orientable = false;
  /// Per top cell, +1 or -1 relative to its slot order; empty when non-orientable.
  std::vector<int> orientation;
  bool fundamental_cycle_closed = false;
};

/// Every cell lies in a top cell of dimension n and every (n-1)-cell has two top incidences.
inline PseudoManifoldCertificate pseudo_manifold_check(const SimplicialCellComplex& c, int n) {
  PseudoManifoldCertificate cert;
  if (c.dim() != n) {
    cert.reason = "dimension mismatch";
    return cert;
  }
  if (n < 1) {
    cert.reason = "pseudo-manifolds need dimension at least 1";
    return cert;
  }
  if (!c.inconsistency().empty()) {
    cert.reason = c.inconsistency();
    return cert;
  }
  const SlotMask full = full_mask(n);
  std::vector<std::vector<char>> hit(n + 1);
  for (int k = 0; k <= n; ++k) hit[k].assign(c.count(k), 0);
  cert.facet_incidence.assign(c.count(n - 1), {});
  for (std::size_t t = 0; t < c.top_count(); ++t) {
    for (SlotMask mask = 1; mask <= full; ++mask) hit[std::popcount(mask) - 1][c.top_subcell(t, mask)] = 1;
    for (int i = 0; i <= n; ++i) cert.facet_incidence[c.top_subcell(t, full & ~(SlotMask{1} << i))].push_back({t, i});
  }
  for (int k = 0; k < n; ++k)
    if (std::find(hit[k].begin(), hit[k].end(), 0) != hit[k].end()) {
      cert.reason = "not pure: a " + std::to_string(k) + "-cell lies in no top cell";
      return cert;
    }
  for (std::size_t f = 0; f < cert.facet_incidence.size(); ++f)
    if (cert.facet_incidence[f].size() != 2) {
      cert.reason = "facet " + std::to_string(f) + " has " + std::to_string(cert.facet_incidence[f].size()) + " top incidences";
      return cert;
    }
  cert.is_pseudo = true;
  return cert;
}

/// Propagates orientations across facets with a parity union-find.
inline PseudoManifoldCertificate orient(const SimplicialCellComplex& c) {
  PseudoManifoldCertificate cert = pseudo_manifold_check(c, c.dim());
  if (!cert.is_pseudo) return cert;
  const std::size_t T = c.top_count();
  std::vector<std::size_t> parent(T);
  std::vector<int> parity(T, 0);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    int p = 0;
    std::size_t r = x;
    while (parent[r] != r) {
      p ^= parity[r];
      r = parent[r];
    }
    // path compression
    std::size_t y = x;
    int py = p;
    while (parent[y] != y) {
      std::size_t next = parent[y];
      int pn = py ^ parity[y];
      parent[y] = r;
      parity[y] = py;
      y = next;
      py = pn;
    }
    return std::pair{r, p};
  };
  bool ok = true;
  for (const auto& inc : cert.facet_incidence) {
    // o(t1) o(t2) = -(-1)^(i1+i2), as parity bits
    const int rel = ((inc[0].slot + inc[1].slot) % 2 == 0) ? 1 : 0;
    auto [r1, p1] = find(inc[0].top);
    auto [r2, p2] = find(inc[1].top);
    if (r1 == r2) {
      if ((p1 ^ p2) != rel) ok = false;
    } else {
      parent[r2] = r1;
      parity[r2] = p1 ^ p2 ^ rel;
    }
  }
  std::vector<char> root(T, 0);
  for (std::size_t t = 0; t < T; ++t) root[find(t).first] = 1;
  cert.components = static_cast<int>(std::count(root.begin(), root.end(), 1));
  cert.orientable = ok;
  if (!ok) return cert;
  cert.orientation.resize(T);
  for (std::size_t t = 0; t < T; ++t) cert.orientation[t] = find(t).second ? -1 : 1;
  cert.fundamental_cycle_closed = true;
  for (const auto& inc : cert.facet_incidence) {
    int sum = 0;
    for (const auto& side : inc) sum += cert.orientation[side.top] * (side.slot % 2 ? -1 : 1);
    if (sum != 0) cert.fundamental_cycle_closed = false;
  }
  return cert;
}

/// Covering-type map between complexes whose top cells correspond slot by slot.
struct CellMap {
  std::vector<std::vector<CellId>> image;  // per dimension
  bool well_defined = true;
};

inline CellMap induced_cell_map(const SimplicialCellComplex& from, const SimplicialCellComplex& to,
                                const std::vector<std::size_t>& top_map) {
  CellMap m;
  const int n = from.dim();
  m.image.resize(n + 1);
  for (int k = 0; k <= n; ++k) m.image[k].assign(from.count(k), -1);
  const SlotMask full = full_mask(n);
  for (std::size_t t = 0; t < from.top_count(); ++t)
    for (SlotMask mask = 1; mask <= full; ++mask) {
      const int k = std::popcount(mask) - 1;
      CellId& img = m.image[k][from.top_subcell(t, mask)];
      const CellId target = to.top_subcell(top_map[t], mask);
      if (img >= 0 && img != target) m.well_defined = false;
      img = target;
    }
  return m;
}

/// Fiber sizes of a cell map; returns the common size, or std::nullopt when they differ.
inline std::optional<std::size_t> constant_fiber_size(const CellMap& m, const SimplicialCellComplex& to) {
  std::optional<std::size_t> common;
  for (int k = 0; k <= to.dim(); ++k) {
    std::vector<std::size_t> fiber(to.count(k), 0);
    for (CellId img : m.image[k]) {
      if (img < 0) return std::nullopt;
      ++fiber[img];
    }
    for (std::size_t f : fiber) {
      if (!common) common = f;
      if (*common != f) return std::nullopt;
    }
  }
  return common;
}

struct CoverComplex {
  SimplicialCellComplex complex;
  /// Cover top cell index -> base top cell index.
  std::vector<std::size_t> top_projection;
};

/// Orientation double cover of a pseudo-manifold: top cells (t, +1) and (t, -1), glued across
/// each facet when the local orientations match; lower cells follow the facet gluings.
inline CoverComplex orientation_double_cover(const SimplicialCellComplex& c) {
  PseudoManifoldCertificate cert = pseudo_manifold_check(c, c.dim());
  if (!cert.is_pseudo) throw std::invalid_argument("orientation cover needs a pseudo-manifold: " + cert.reason);
  const int n = c.dim();
  const SlotMask full = full_mask(n);
  const std::size_t stride = std::size_t{full} + 1;
  const std::size_t T = c.top_count();
  std::vector<std::size_t> parent(2 * T * stride);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto node = [&](std::size_t t, int sheet, SlotMask mask) { return (t * 2 + sheet) * stride + mask; };
  auto expand = [](SlotMask compressed, int skip) {
    const SlotMask low = compressed & ((SlotMask{1} << skip) - 1);
    return low | ((compressed & ~low) << 1);
  };
  auto compress = [](SlotMask mask, int skip) {
    const SlotMask low = mask & ((SlotMask{1} << skip) - 1);
    return low | ((mask >> (skip + 1)) << skip);
  };
  for (const auto& inc : cert.facet_incidence) {
    const auto [t1, i1] = inc[0];
    const auto [t2, i2] = inc[1];
    for (int s1 = 0; s1 < 2; ++s1) {
      // sheets carry orientation +1 (0) or -1 (1); glue when s1(-1)^i1 + s2(-1)^i2 = 0
      const int s2 = ((i1 + i2) % 2 == 0) ? 1 - s1 : s1;
      const SlotMask facet1 = full & ~(SlotMask{1} << i1);
      for (SlotMask m = facet1; m != 0; m = (m - 1) & facet1) {
        const SlotMask m2 = expand(compress(m, i1), i2);
        parent[find(node(t1, s1, m))] = find(node(t2, s2, m2));
      }
    }
  }
  CoverComplex out;
  out.complex = SimplicialCellComplex::build(n, 2 * T, [&](std::size_t u, SlotMask mask) {
    const std::size_t t = u / 2;
    const int s = static_cast<int>(u % 2);
    return CellKey{static_cast<std::int64_t>(std::popcount(mask)), static_cast<std::int64_t>(find(node(t, s, mask)))};
  });
  out.top_projection.resize(2 * T);
  for (std::size_t u = 0; u < 2 * T; ++u) out.top_projection[u] = u / 2;
  return out;
}

struct BarycentricSubdivision {
  SimplicialCellComplex complex;
  /// Vertex colour = dimension of the cell it subdivides (also its slot in every top cell).
  std::vector<int> colour;
  /// Vertex -> cell of the original complex (of dimension colour[v]).
  std::vector<CellId> origin;
  /// Top cell -> (original top cell, flag permutation of its slots).
  std::vector<std::size_t> parent_top;
  std::vector<std::vector<int>> flag;
  /// sign(flag) times the original orientation when one was supplied, else sign(flag).
  std::vector<int> orientation;
};

inline int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

/// Barycentric subdivision: top cells (sigma, pi) with vertices at the barycentres of the
/// chain subcell(sigma, {pi(0..j)}), j = 0..n.
inline BarycentricSubdivision barycentric_subdivide(const SimplicialCellComplex& c,
                                                    const std::vector<int>* orientation = nullptr) {
  const int n = c.dim();
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n + 1);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  // chain masks per permutation
  std::vector<std::vector<SlotMask>> chain(perms.size(), std::vector<SlotMask>(n + 1));
  for (std::size_t f = 0; f < perms.size(); ++f) {
    SlotMask m = 0;
    for (int j = 0; j <= n; ++j) chain[f][j] = (m |= SlotMask{1} << perms[f][j]);
  }
  const std::size_t F = perms.size();
  BarycentricSubdivision out;
  out.complex = SimplicialCellComplex::build(n, c.top_count() * F, [&](std::size_t u, SlotMask mask) {
    const std::size_t t = u / F, f = u % F;
    CellKey k{static_cast<std::int64_t>(mask)};
    for (int j = 0; j <= n; ++j)
      if ((mask >> j) & 1u) k.push_back(c.top_subcell(t, chain[f][j]));
    return k;
  });
  const auto& y = out.complex;
  out.colour.assign(y.count(0), -1);
  out.origin.assign(y.count(0), -1);
  out.parent_top.resize(y.top_count());
  out.flag.resize(y.top_count());
  out.orientation.resize(y.top_count());
  for (std::size_t u = 0; u < y.top_count(); ++u) {
    const std::size_t t = u / F, f = u % F;
    out.parent_top[u] = t;
    out.flag[u] = perms[f];
    out.orientation[u] = permutation_sign(perms[f]) * (orientation ? (*orientation)[t] : 1);
    for (int j = 0; j <= n; ++j) {
      const CellId v = y.top_subcell(u, SlotMask{1} << j);
      out.colour[v] = j;
      out.origin[v] = c.top_subcell(t, chain[f][j]);
    }
  }
  return out;
}

}  // namespace nestotope
