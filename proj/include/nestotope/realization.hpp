#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "errors.hpp"
#include "gf2.hpp"
#include "nestohedron.hpp"
#include "subdivision.hpp"

namespace nestotope {

using Permutation = std::vector<std::uint32_t>;

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return boost::hash_range(p.begin(), p.end()); }
};

/// (a o b)(x) = a(b(x)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) c[x] = a[b[x]];
  return c;
}

inline bool is_involution(const Permutation& p) {
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[p[x]] != x) return false;
  return true;
}

/// Top cells of Y with the involutions xi_i: xi_i(t) is the other top cell on the facet
/// of t missing colour i.
struct SigmaSystem {
  int n = 0;
  std::vector<char> plus;
  std::vector<Permutation> xi;
  std::size_t size() const { return plus.size(); }
};

inline SigmaSystem build_sigma_system(const PseudoManifoldSubdivision& y) {
  const auto& c = y.complex;
  const int n = c.dim();
  SigmaSystem sys;
  sys.n = n;
  sys.plus.resize(c.top_count());
  for (std::size_t t = 0; t < c.top_count(); ++t) sys.plus[t] = y.orientation[t] > 0;
  const SlotMask full = full_mask(n);
  for (int i = 0; i <= n; ++i) {
    std::vector<std::vector<std::uint32_t>> inc(c.count(n - 1));
    for (std::size_t t = 0; t < c.top_count(); ++t) inc[c.top_subcell(t, full & ~(SlotMask{1} << i))].push_back(static_cast<std::uint32_t>(t));
    Permutation xi(c.top_count());
    for (std::size_t t = 0; t < c.top_count(); ++t) {
      const auto& side = inc[c.top_subcell(t, full & ~(SlotMask{1} << i))];
      if (side.size() != 2) throw std::invalid_argument("facet with " + std::to_string(side.size()) + " cofacets: input is not a pseudo-manifold");
      if (side[0] == side[1]) throw std::invalid_argument("top cell glued to itself across a rainbow facet");
      xi[t] = side[0] == t ? side[1] : side[0];
    }
    sys.xi.push_back(std::move(xi));
  }
  return sys;
}

struct SigmaChecks {
  bool involutions = true;
  bool swap_sides = true;
  bool commutation = true;
};

/// xi_i fixed-point-free involutions exchanging the two sides; xi_i xi_j = xi_j xi_i for
/// every non-edge {i, j} of g.
inline SigmaChecks check_sigma_system(const SigmaSystem& sys, const Graph& g) {
  SigmaChecks c;
  for (const auto& xi : sys.xi) {
    if (!is_involution(xi)) c.involutions = false;
    for (std::size_t t = 0; t < xi.size(); ++t) {
      if (xi[t] == t) c.involutions = false;
      if (sys.plus[t] == sys.plus[xi[t]]) c.swap_sides = false;
    }
  }
  for (int i = 0; i <= sys.n; ++i)
    for (int j = i + 1; j <= sys.n; ++j)
      if (!g.adjacent(i, j) && compose(sys.xi[i], sys.xi[j]) != compose(sys.xi[j], sys.xi[i])) c.commutation = false;
  return c;
}

/// Conjugates of xi_{min S} by words in the xi_i, i in S. members[k] equals
/// xi_{w_1} ... xi_{w_q} xi_{min S} xi_{w_q} ... xi_{w_1} for w = words[k].
struct InvolutionSet {
  VertexSet tube;
  std::vector<Permutation> members;
  std::vector<std::vector<int>> words;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;

  std::optional<std::uint32_t> find(const Permutation& p) const {
    auto it = index.find(p);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

inline constexpr std::size_t default_closure_cap = 1'000'000;

inline Permutation conjugate_by_word(const SigmaSystem& sys, const std::vector<int>& word, int base) {
  Permutation p = sys.xi[base];
  for (auto it = word.rbegin(); it != word.rend(); ++it) p = compose(sys.xi[*it], compose(p, sys.xi[*it]));
  return p;
}

inline std::vector<InvolutionSet> enumerate_involution_sets(const SigmaSystem& sys, const std::vector<VertexSet>& tubes,
                                                            std::size_t cap = default_closure_cap) {
  std::vector<InvolutionSet> out;
  std::size_t total = 0;
  for (VertexSet s : tubes) {
    if (s.empty() || s.max() > sys.n) throw std::invalid_argument("tube is not a set of colours");
    InvolutionSet set;
    set.tube = s;
    auto add = [&](Permutation p, std::vector<int> word) {
      auto [it, fresh] = set.index.try_emplace(p, static_cast<std::uint32_t>(set.members.size()));
      if (!fresh) return;
      if (++total > cap) throw BudgetExceeded("involution closure exceeds " + std::to_string(cap) + " permutations");
      if (total * sys.size() > 400'000'000) throw BudgetExceeded("involution closure exceeds memory budget");
      set.members.push_back(std::move(p));
      set.words.push_back(std::move(word));
    };
    add(sys.xi[s.min()], {});
    for (std::size_t k = 0; k < set.members.size(); ++k)
      for (int i : s.members()) {
        Permutation next = compose(sys.xi[i], compose(set.members[k], sys.xi[i]));
        std::vector<int> word{i};
        word.insert(word.end(), set.words[k].begin(), set.words[k].end());
        add(std::move(next), std::move(word));
      }
    out.push_back(std::move(set));
  }
  return out;
}

/// Every member is an involution exchanging the two sides.
inline bool check_involution_sets(const SigmaSystem& sys, const std::vector<InvolutionSet>& sets) {
  for (const auto& s : sets)
    for (const auto& mu : s.members) {
      if (!is_involution(mu)) return false;
      for (std::size_t x = 0; x < mu.size(); ++x)
        if (sys.plus[x] == sys.plus[mu[x]]) return false;
    }
  return true;
}

struct OmegaElement {
  std::uint32_t sigma = 0;
  std::vector<std::uint32_t> mu;
  Gf2Vector g = 0;
  bool operator==(const OmegaElement&) const = default;
};

/// The set Omega with its involutions phi_S; tubes in facet order.
class OmegaSpace {
public:
  OmegaSpace(const SigmaSystem& sys, std::vector<VertexSet> tubes, const std::vector<InvolutionSet>& sets)
      : sys_(&sys), sets_(&sets), tubes_(std::move(tubes)) {
    const std::size_t m = tubes_.size();
    if (m > 63) throw std::invalid_argument("too many tubes for the group coordinate");
    supersets_.assign(m, {});
    conj_.assign(m, {});
    std::size_t entries = 0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (a != b && tubes_[a].subset_of(tubes_[b])) {
          supersets_[a].push_back(b);
          entries += sets[a].members.size() * sets[b].members.size();
        }
    if (entries > 50'000'000) throw BudgetExceeded("conjugation tables exceed budget");
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b : supersets_[a]) {
        const auto& sa = sets[a].members;
        const auto& sb = sets[b].members;
        std::vector<std::uint32_t> table(sa.size() * sb.size());
        for (std::size_t i = 0; i < sa.size(); ++i)
          for (std::size_t j = 0; j < sb.size(); ++j) {
            auto k = sets[b].find(compose(sa[i], compose(sb[j], sa[i])));
            if (!k) {
              nesting_closed_ = false;
              k = static_cast<std::uint32_t>(j);
            }
            table[i * sb.size() + j] = *k;
          }
        conj_[a].push_back(std::move(table));
      }
  }

  std::size_t tube_count() const { return tubes_.size(); }
  const std::vector<VertexSet>& tubes() const { return tubes_; }
  const std::vector<InvolutionSet>& sets() const { return *sets_; }
  const SigmaSystem& system() const { return *sys_; }
  /// mu S mu_T mu_S lies in I_T whenever S is contained in T.
  bool nesting_closed() const { return nesting_closed_; }

  OmegaElement phi(std::size_t s, const OmegaElement& w) const {
    OmegaElement out = w;
    const std::uint32_t ms = w.mu[s];
    out.sigma = (*sets_)[s].members[ms][w.sigma];
    for (std::size_t k = 0; k < supersets_[s].size(); ++k) {
      const std::size_t t = supersets_[s][k];
      out.mu[t] = conj_[s][k][ms * (*sets_)[t].members.size() + w.mu[t]];
    }
    out.g ^= Gf2Vector{1} << s;
    return out;
  }

  int epsilon(const OmegaElement& w) const {
    const int e1 = sys_->plus[w.sigma] ? 1 : -1;
    return std::popcount(w.g) % 2 ? -e1 : e1;
  }

  /// Product of |I_T| over all tubes.
  BigInt mu_product() const {
    BigInt p = 1;
    for (const auto& s : *sets_) p *= s.members.size();
    return p;
  }
  BigInt size() const { return BigInt(sys_->size()) * mu_product() * (BigInt(1) << tubes_.size()); }

  /// Mixed-radix index (sigma, mu, g), valid when size() fits.
  std::uint64_t encode(const OmegaElement& w) const {
    std::uint64_t x = w.sigma;
    for (std::size_t t = 0; t < tubes_.size(); ++t) x = x * (*sets_)[t].members.size() + w.mu[t];
    return (x << tubes_.size()) | w.g;
  }
  OmegaElement decode(std::uint64_t x) const {
    OmegaElement w;
    const std::size_t m = tubes_.size();
    w.g = x & ((std::uint64_t{1} << m) - 1);
    x >>= m;
    w.mu.resize(m);
    for (std::size_t t = m; t-- > 0;) {
      const std::uint64_t r = (*sets_)[t].members.size();
      w.mu[t] = static_cast<std::uint32_t>(x % r);
      x /= r;
    }
    w.sigma = static_cast<std::uint32_t>(x);
    return w;
  }

private:
  const SigmaSystem* sys_;
  const std::vector<InvolutionSet>* sets_;
  std::vector<VertexSet> tubes_;
  std::vector<std::vector<std::size_t>> supersets_;
  std::vector<std::vector<std::vector<std::uint32_t>>> conj_;
  bool nesting_closed_ = true;
};

inline OmegaElement phi_action(const OmegaSpace& omega, std::size_t s, const OmegaElement& w) { return omega.phi(s, w); }

struct CoveringCertificate {
  std::string mode;
  int n = 0;
  int m = 0;
  std::size_t sigma_count = 0;
  BigInt r, s, omega_size;
  std::vector<std::pair<VertexSet, std::size_t>> I_sizes;
  /// Named boolean checks in a fixed order.
  std::vector<std::pair<std::string, bool>> checks;
  /// Fiber size -> number of cells of the base with that fiber.
  std::map<BigInt, std::size_t> fiber_histogram;
  std::size_t omegas_checked = 0;
  std::uint64_t seed = 0;
  int pi_degree = 0;
  /// Degree of gamma on N+ and on N- over each probe simplex.
  BigInt degree_plus, degree_minus;
  std::size_t probes = 0;

  bool ok() const {
    return std::ranges::all_of(checks, [](const auto& c) { return c.second; });
  }
  bool check(const std::string& name) const {
    for (const auto& [k, v] : checks)
      if (k == name) return v;
    throw std::out_of_range("no check named " + name);
  }
};

struct RealizeOptions {
  /// Omega is enumerated in full when its size is at most this.
  std::size_t omega_budget = 1'000'000;
  std::size_t closure_cap = default_closure_cap;
  std::size_t samples = 10'000;
  std::uint64_t seed = 20160601;
  SubdivisionStrategy strategy = SubdivisionStrategy::Auto;
  std::optional<int> apex;
};

namespace detail {

struct OrbitCheck {
  bool ok = true;
  std::size_t visited = 0;
};

/// Orbit of w under the phi_S, S in the tubing, has 2^k elements with pairwise distinct
/// group coordinates.
inline bool orbit_is_regular(const OmegaSpace& omega, const Tubing& face, const OmegaElement& w) {
  const std::size_t k = face.size();
  std::vector<OmegaElement> orbit{w};
  std::unordered_map<Gf2Vector, std::size_t> seen{{w.g, 0}};
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (int s : face) {
      OmegaElement x = omega.phi(static_cast<std::size_t>(s), orbit[i]);
      auto it = seen.find(x.g);
      if (it != seen.end()) {
        if (!(orbit[it->second] == x)) return false;
        continue;
      }
      if (orbit.size() >= (std::size_t{1} << k)) return false;
      seen.emplace(x.g, orbit.size());
      orbit.push_back(std::move(x));
    }
  return orbit.size() == (std::size_t{1} << k);
}

inline bool gamma_well_defined(const PseudoManifoldSubdivision& y, const OmegaSpace& omega) {
  const auto& c = y.complex;
  const SlotMask full = full_mask(c.dim());
  for (std::size_t s = 0; s < omega.tube_count(); ++s) {
    const SlotMask keep = full & ~static_cast<SlotMask>(omega.tubes()[s].bits());
    for (const auto& mu : omega.sets()[s].members)
      for (std::size_t t = 0; t < mu.size(); ++t)
        if (c.top_subcell(t, keep) != c.top_subcell(mu[t], keep)) return false;
  }
  return true;
}

}  // namespace detail

/// Checks the covering N -> R_P and the degree of gamma on N+. Omega is enumerated when it
/// fits the budget; otherwise the checks run on the fiber over the identity copy plus a
/// seeded random sample.
inline CoveringCertificate build_covering(const PseudoManifoldSubdivision& y, const BuildingSet& b, const FacePoset& p,
                                          const SigmaSystem& sys, const std::vector<InvolutionSet>& sets,
                                          const Graph& g, const RealizeOptions& opt = {}) {
  CoveringCertificate cert;
  const int n = p.n;
  const std::size_t m = p.facet_count();
  cert.n = n;
  cert.m = static_cast<int>(m);
  cert.sigma_count = sys.size();
  cert.seed = opt.seed;
  for (const auto& s : sets) cert.I_sizes.emplace_back(s.tube, s.members.size());
  OmegaSpace omega(sys, p.facets, sets);
  const BigInt prod = omega.mu_product();
  cert.r = BigInt(sys.size()) * prod;
  cert.s = (BigInt(1) << (m - 1)) * prod;
  cert.omega_size = omega.size();
  const bool full = cert.omega_size <= opt.omega_budget;
  cert.mode = full ? "full" : "sampled";

  auto sc = check_sigma_system(sys, g);
  cert.checks.emplace_back("xi_involutions", sc.involutions && sc.swap_sides);
  cert.checks.emplace_back("xi_commutation", sc.commutation);
  cert.checks.emplace_back("mu_involutions", check_involution_sets(sys, sets));
  cert.checks.emplace_back("nesting_closed", omega.nesting_closed());

  // compatible pairs index intersecting facets
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = a + 1; c < m; ++c)
      if (compatible(b, p.facets[a], p.facets[c])) pairs.emplace_back(a, c);

  bool phi_inv = true, phi_comm = true, eps_const = true, fibers = true;
  auto check_local = [&](const OmegaElement& w) {
    const int e = omega.epsilon(w);
    for (std::size_t s = 0; s < m; ++s) {
      OmegaElement x = omega.phi(s, w);
      if (!(omega.phi(s, x) == w)) phi_inv = false;
      if (omega.epsilon(x) != e) eps_const = false;
    }
    for (auto [a, c] : pairs)
      if (!(omega.phi(a, omega.phi(c, w)) == omega.phi(c, omega.phi(a, w)))) phi_comm = false;
    ++cert.omegas_checked;
  };

  std::vector<const std::vector<Tubing>*> face_lists;
  for (int d = 0; d <= n; ++d) face_lists.push_back(&p.faces(d));

  if (full) {
    const std::uint64_t total = cert.omega_size.convert_to<std::uint64_t>();
    for (std::uint64_t x = 0; x < total; ++x) check_local(omega.decode(x));
    // every base cell [F, coset]: count orbits meeting the coset
    for (const auto* faces : face_lists)
      for (const auto& face : *faces) {
        std::vector<Gf2Vector> gens;
        for (int s : face) gens.push_back(Gf2Vector{1} << s);
        Gf2Subspace span(gens);
        std::vector<char> seen(total, 0);
        std::unordered_map<Gf2Vector, BigInt> per_coset;
        for (std::uint64_t x = 0; x < total; ++x) {
          if (seen[x]) continue;
          OmegaElement w = omega.decode(x);
          std::vector<OmegaElement> orbit{w};
          seen[x] = 1;
          for (std::size_t i = 0; i < orbit.size(); ++i)
            for (int s : face) {
              OmegaElement z = omega.phi(static_cast<std::size_t>(s), orbit[i]);
              const std::uint64_t iz = omega.encode(z);
              if (!seen[iz]) {
                seen[iz] = 1;
                orbit.push_back(std::move(z));
              }
            }
          std::unordered_set<Gf2Vector> gs;
          for (const auto& o : orbit) gs.insert(o.g);
          if (orbit.size() != (std::size_t{1} << face.size()) || gs.size() != orbit.size()) fibers = false;
          per_coset[span.reduce(w.g)] += 1;
        }
        if (per_coset.size() != (std::size_t{1} << (m - face.size()))) fibers = false;
        for (const auto& [coset, count] : per_coset) {
          ++cert.fiber_histogram[count];
          if (count != cert.r) fibers = false;
        }
      }
  } else {
    // the fiber over the identity copy, then random elements
    std::vector<std::uint32_t> radix;
    for (const auto& s : sets) radix.push_back(static_cast<std::uint32_t>(s.members.size()));
    if (cert.r > 50'000'000) throw BudgetExceeded("fiber over a single copy exceeds budget");
    const std::size_t r = cert.r.convert_to<std::size_t>();
    OmegaElement w;
    w.mu.assign(m, 0);
    for (std::size_t idx = 0; idx < r; ++idx) {
      std::size_t x = idx;
      for (std::size_t t = m; t-- > 0;) {
        w.mu[t] = static_cast<std::uint32_t>(x % radix[t]);
        x /= radix[t];
      }
      w.sigma = static_cast<std::uint32_t>(x);
      w.g = 0;
      check_local(w);
      for (const auto* faces : face_lists)
        for (const auto& face : *faces)
          if (!detail::orbit_is_regular(omega, face, w)) fibers = false;
    }
    // each regular orbit over a cell [F, 0] meets the identity copy once
    std::size_t cells = 0;
    for (const auto* faces : face_lists) cells += faces->size();
    cert.fiber_histogram[cert.r] = cells;
    std::mt19937_64 rng(opt.seed);
    for (std::size_t k = 0; k < opt.samples; ++k) {
      w.sigma = static_cast<std::uint32_t>(rng() % sys.size());
      for (std::size_t t = 0; t < m; ++t) w.mu[t] = static_cast<std::uint32_t>(rng() % radix[t]);
      w.g = rng() & ((Gf2Vector{1} << m) - 1);
      check_local(w);
      for (const auto& face : p.vertices())
        if (!detail::orbit_is_regular(omega, face, w)) fibers = false;
    }
  }
  cert.checks.emplace_back("phi_involutions", phi_inv);
  cert.checks.emplace_back("phi_commutation", phi_comm);
  cert.checks.emplace_back("covering_fibers", fibers);
  cert.checks.emplace_back("epsilon_class_constant", eps_const);
  cert.checks.emplace_back("gamma_well_defined", detail::gamma_well_defined(y, omega));

  // degree of gamma over each probe simplex: copies [P, omega] with first coordinate sigma0
  // map onto sigma0 with local degree eps'(omega) eps''(omega) deg(pi)
  auto pd = pi_degree(b);
  cert.pi_degree = pd.uniform ? pd.degree : 0;
  if (m > 26) throw BudgetExceeded("group coordinate too large to enumerate");
  BigInt even = 0, odd = 0;
  for (Gf2Vector x = 0; x < (Gf2Vector{1} << m); ++x) (std::popcount(x) % 2 ? odd : even) += 1;
  bool independent = true;
  for (std::size_t t = 0; t < sys.size(); ++t) {
    const int e1 = sys.plus[t] ? 1 : -1;
    // eps = +1 requires eps'' = eps'
    const BigInt n_plus = (e1 > 0 ? even : odd) * prod;
    const BigInt n_minus = (e1 > 0 ? odd : even) * prod;
    const BigInt dp = n_plus * cert.pi_degree;  // each contributes eps' eps'' = +1
    const BigInt dm = -n_minus * cert.pi_degree;
    if (t == 0) {
      cert.degree_plus = dp;
      cert.degree_minus = dm;
    } else if (dp != cert.degree_plus || dm != cert.degree_minus) {
      independent = false;
    }
    ++cert.probes;
  }
  cert.checks.emplace_back("pi_degree_one", cert.pi_degree == 1 && pd.facets_to_faces && pd.boundary_to_boundary);
  cert.checks.emplace_back("degree_independent", independent);
  cert.checks.emplace_back("degree_equals_s", cert.degree_plus == cert.s && cert.degree_minus == -cert.s);
  return cert;
}

/// Subdivision, involution system and covering certificate for (z, g).
struct RealizationReport {
  PseudoManifoldSubdivision y;
  SigmaSystem sigma;
  std::vector<InvolutionSet> sets;
  CoveringCertificate certificate;
};

inline RealizationReport realize(const SimplicialCellComplex& z, const Graph& g, const RealizeOptions& opt = {}) {
  if (g.n_vertices() > 6) throw std::invalid_argument("realization supports graphs on at most 6 vertices");
  RealizationReport rep;
  rep.y = subdivide_pseudomanifold(z, g, opt.strategy, opt.apex);
  auto star = condition_star_check(rep.y, g);
  if (!star.ok) throw std::logic_error("subdivision fails the star condition: " + star.failure);
  BuildingSet b = graph_building_set(g);
  FacePoset p = face_poset(b);
  rep.sigma = build_sigma_system(rep.y);
  rep.sets = enumerate_involution_sets(rep.sigma, p.facets, opt.closure_cap);
  rep.certificate = build_covering(rep.y, b, p, rep.sigma, rep.sets, g, opt);
  return rep;
}

}  // namespace nestotope
