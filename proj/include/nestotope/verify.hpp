#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "formulas.hpp"
#include "homology.hpp"
#include "nestohedron.hpp"
#include "realization.hpp"
#include "samples.hpp"
#include "smallcover.hpp"
#include "subdivision.hpp"

namespace nestotope::verify {

struct Check {
  std::string label;
  bool ok = false;
};

struct SuiteReport {
  std::string name;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;
  std::string error;

  bool ok() const {
    return error.empty() && !checks.empty() && std::ranges::all_of(checks, [](const Check& c) { return c.ok; });
  }
  std::size_t failures() const {
    return std::ranges::count_if(checks, [](const Check& c) { return !c.ok; });
  }
  void check(bool ok, std::string label) { checks.push_back({std::move(label), ok}); }
};

struct SuiteOptions {
  /// Overrides the default upper bound on the dimension where a suite has one.
  std::optional<int> max_n;
};

namespace detail {

inline std::vector<long long> ll(const BigVector& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(x.convert_to<long long>());
  return out;
}

template <class T>
std::string show(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, BigInt>)
      s += v[i].str();
    else
      s += std::to_string(v[i]);
  }
  return s + ")";
}

struct Polytope {
  BuildingSet b;
  FacePoset p;
  FlagComplex k;
  explicit Polytope(const Graph& g) : b(graph_building_set(g)), p(face_poset(b)), k(barycentric_complex(p)) {}
};

inline std::vector<Graph> connected_graphs_between(int lo, int hi, bool labelled) {
  std::vector<Graph> out;
  for (int k = lo; k <= hi; ++k)
    for (auto& g : labelled ? all_connected_graphs(k) : connected_graphs_up_to_isomorphism(k)) out.push_back(std::move(g));
  return out;
}

inline bool connected_orientable_by_homology(const SimplicialCellComplex& c) {
  HomologyOptions o;
  o.z2 = false;
  auto h = homology(c, o);
  return h.betti_q[0] == 1 && h.betti_q.back() == 1;
}

inline long long brute_eulerian(int m, int k) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 1);
  long long count = 0;
  do {
    int asc = 0;
    for (int i = 1; i < m; ++i) asc += p[i] > p[i - 1];
    count += asc == k;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

inline long long brute_zigzag(int m) {
  if (m < 2) return 1;
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 1);
  long long count = 0;
  do {
    bool alt = true;
    for (int i = 1; i < m && alt; ++i) alt = (i % 2) ? p[i] > p[i - 1] : p[i] < p[i - 1];
    count += alt;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace detail

inline void facet_counts(SuiteReport& r, const SuiteOptions& o) {
  const int max_n = o.max_n.value_or(8);
  for (int n = 1; n <= max_n; ++n) {
    const auto path = graph_building_set(Graph::path(n + 1)).proper_tubes().size();
    const auto full = graph_building_set(Graph::complete(n + 1)).proper_tubes().size();
    r.check(path == static_cast<std::size_t>(n * (n + 3) / 2), "path n=" + std::to_string(n) + " facets " + std::to_string(path));
    r.check(full == (std::size_t{1} << (n + 1)) - 2, "complete n=" + std::to_string(n) + " facets " + std::to_string(full));
  }
}

inline void h_vectors(SuiteReport& r, const SuiteOptions& o) {
  const int max_n = o.max_n.value_or(6);
  for (int n = 1; n <= max_n; ++n) {
    auto h = face_vectors(face_poset(graph_building_set(Graph::path(n + 1)))).h;
    std::vector<long long> narayana;
    for (int i = 0; i <= n; ++i) narayana.push_back((big_binomial(n + 1, i) * big_binomial(n + 1, i + 1) / (n + 1)).convert_to<long long>());
    r.check(h == narayana, "As^" + std::to_string(n) + " h=" + detail::show(h));
  }
  for (int n = 1; n <= std::min(max_n, 5); ++n) {
    auto h = face_vectors(face_poset(graph_building_set(Graph::complete(n + 1)))).h;
    r.check(h == detail::ll(eulerian_row(n + 1)), "Pe^" + std::to_string(n) + " h=" + detail::show(h));
  }
}

inline void bv_inequality(SuiteReport& r, const SuiteOptions& o) {
  const int max_n = o.max_n.value_or(5);
  for (int n = 1; n <= max_n; ++n) {
    auto as = face_vectors(face_poset(graph_building_set(Graph::path(n + 1)))).h;
    std::size_t graphs = 0, bounded = 0, equal_only_path = 0, strict = 0, non_path = 0;
    for (const Graph& g : connected_graphs_up_to_isomorphism(n + 1)) {
      ++graphs;
      auto h = face_vectors(face_poset(graph_building_set(g))).h;
      bool ge = true, all_equal = true, all_strict = true;
      for (int i = 1; i <= n - 1; ++i) {
        ge = ge && h[i] >= as[i];
        all_equal = all_equal && h[i] == as[i];
        all_strict = all_strict && h[i] > as[i];
      }
      const bool is_path = isomorphic(g, Graph::path(n + 1));
      bounded += ge;
      equal_only_path += (all_equal && h == as) == is_path;
      if (!is_path) {
        ++non_path;
        strict += all_strict || n < 2;
      }
    }
    const std::string tag = "n=" + std::to_string(n) + " over " + std::to_string(graphs) + " graphs";
    r.check(bounded == graphs, tag + ": h_i >= h_i(As)");
    r.check(equal_only_path == graphs, tag + ": equality in every i only for the path");
    r.check(strict == non_path, tag + ": strict in every 1<=i<=n-1 off the path");
  }
}

inline void minkowski(SuiteReport& r, const SuiteOptions& o) {
  const int max_n = o.max_n.value_or(3);
  std::size_t agree = 0, total = 0;
  for (const Graph& g : detail::connected_graphs_between(2, max_n + 1, true)) {
    BuildingSet b = graph_building_set(g);
    FacePoset p = face_poset(b);
    std::set<RationalPoint> coords;
    for (const auto& v : p.vertices()) coords.insert(vertex_coordinates(b, p.tubes_of(v)));
    ++total;
    agree += coords.size() == p.vertices().size() && coords == minkowski_vertex_oracle(b);
  }
  r.check(agree == total, "vertex coordinates equal the Minkowski oracle on " + std::to_string(total) + " graphs");
  BuildingSet pe2 = graph_building_set(Graph::complete(3));
  FacePoset p = face_poset(pe2);
  std::set<RationalPoint> coords, perms;
  for (const auto& v : p.vertices()) coords.insert(vertex_coordinates(pe2, p.tubes_of(v)));
  std::vector<int> x{1, 2, 4};
  do perms.insert(RationalPoint{x[0], x[1], x[2]});
  while (std::next_permutation(x.begin(), x.end()));
  r.check(coords == perms, "Pe^2 vertices are the permutations of (1,2,4)");
}

inline void pi_degree_suite(SuiteReport& r, const SuiteOptions& o) {
  const int max_n = o.max_n.value_or(4);
  for (int k = 2; k <= max_n + 1; ++k) {
    std::size_t total = 0, ok = 0;
    for (const Graph& g : all_connected_graphs(k)) {
      auto rep = pi_degree(graph_building_set(g));
      ++total;
      ok += rep.uniform && rep.degree == 1 && rep.facets_to_faces && rep.boundary_to_boundary;
    }
    r.check(ok == total, "n=" + std::to_string(k - 1) + ": degree 1 on " + std::to_string(total) + " graphs");
  }
}

inline void h_vs_z2betti(SuiteReport& r, const SuiteOptions& o) {
  const int max_n = o.max_n.value_or(3);
  HomologyOptions z2;
  z2.rational = false;
  for (int k = 2; k <= max_n + 1; ++k) {
    std::size_t total = 0, ok = 0;
    for (const Graph& g : all_connected_graphs(k)) {
      detail::Polytope s(g);
      ++total;
      ok += homology(small_cover(s.p, s.k, lambda_can(s.b)).complex, z2).betti_z2 == face_vectors(s.p).h;
    }
    r.check(ok == total, "n=" + std::to_string(k - 1) + " lambda_can: Z2 Betti = h on " + std::to_string(total) + " graphs");
  }
  if (max_n >= 3) {
    detail::Polytope pe3(Graph::complete(4)), as3(Graph::path(4));
    auto t = homology(small_cover(pe3.p, pe3.k, lambda_tomei(pe3.b)).complex, z2).betti_z2;
    r.check(t == face_vectors(pe3.p).h, "Pe^3 lambda_0: Z2 Betti " + detail::show(t));
    auto a = homology(small_cover(as3.p, as3.k, lambda_star_as3(as3.b)).complex, z2).betti_z2;
    r.check(a == face_vectors(as3.p).h, "As^3 lambda*: Z2 Betti " + detail::show(a));
  }
}

inline void tomei(SuiteReport& r, const SuiteOptions&) {
  for (int n = 2; n <= 3; ++n) {
    detail::Polytope s(Graph::complete(n + 1));
    auto l = lambda_tomei(s.b);
    auto m = small_cover(s.p, s.k, l);
    auto h = homology(m.complex);
    const std::string tag = "M(Pe^" + std::to_string(n) + ", lambda_0)";
    r.check(is_orientable_smallcover(l) && orient(m.complex).orientable, tag + " orientable");
    r.check(h.betti_q == detail::ll(betti_tomei(n)), tag + " Betti_Q " + detail::show(h.betti_q));
  }
}

inline void pentagon_tower(SuiteReport& r, const SuiteOptions&) {
  detail::Polytope s(Graph::path(3));
  auto l = lambda_can(s.b);
  auto base = homology(small_cover(s.p, s.k, l).complex).betti_q;
  auto cover = homology(orientation_cover_via_eta(s.p, s.k, l).complex).betti_q;
  r.check(base == std::vector<long long>{1, 2, 0}, "M(As^2, lambda_can) Betti_Q " + detail::show(base));
  r.check(base == detail::ll(betti_as_can(2)), "matches the closed form");
  r.check(cover == std::vector<long long>{1, 4, 1}, "orientation cover Betti_Q " + detail::show(cover));
  const long long tot = std::accumulate(cover.begin(), cover.end(), 0LL);
  r.check(tot == 6 && tot == as_can_cover_total(2), "cover total 6 = 2*C(3,1)");
  bool brash = true;
  for (std::size_t i = 0; i < cover.size(); ++i) brash = brash && cover[i] == base[i] + base[base.size() - 1 - i];
  r.check(brash, "cover_i = b_i + b_{n-i}");
}

inline void hessenberg(SuiteReport& r, const SuiteOptions&) {
  detail::Polytope s(Graph::complete(3));
  auto l = lambda_can(s.b);
  auto base = homology(small_cover(s.p, s.k, l).complex).betti_q;
  auto cover = homology(orientation_cover_via_eta(s.p, s.k, l).complex).betti_q;
  r.check(base == std::vector<long long>{1, 3, 0}, "M(Pe^2, lambda_can) Betti_Q " + detail::show(base));
  r.check(base == detail::ll(betti_hessenberg(2)), "matches C(3,2i) E_2i");
  const long long tot = std::accumulate(cover.begin(), cover.end(), 0LL);
  r.check(tot == hessenberg_cover_total(2), "cover total " + std::to_string(tot) + " matches the doubled sum");
}

inline void orientability(SuiteReport& r, const SuiteOptions& o) {
  const int max_n = o.max_n.value_or(3);
  std::size_t total = 0, agree = 0;
  auto compare = [&](const detail::Polytope& s, const CharacteristicFunction& l) {
    ++total;
    agree += is_orientable_smallcover(l) == detail::connected_orientable_by_homology(small_cover(s.p, s.k, l).complex);
  };
  for (const Graph& g : detail::connected_graphs_between(2, max_n + 1, true)) {
    detail::Polytope s(g);
    compare(s, lambda_can(s.b));
  }
  detail::Polytope pe2(Graph::complete(3)), pe3(Graph::complete(4)), as3(Graph::path(4)), as2(Graph::path(3));
  compare(pe2, lambda_tomei(pe2.b));
  compare(pe3, lambda_tomei(pe3.b));
  compare(as3, lambda_star_as3(as3.b));
  r.check(agree == total, "criterion agrees with homology on " + std::to_string(total) + " small covers");
  auto star = lambda_star_as3(as3.b);
  r.check(is_orientable_smallcover(star) && detail::connected_orientable_by_homology(small_cover(as3.p, as3.k, star).complex),
          "lambda* on As^3 orientable");
  std::size_t count = 0, non_orientable = 0;
  for_each_characteristic(as2.p, [&](const CharacteristicFunction& l) {
    ++count;
    non_orientable += !is_orientable_smallcover(l) && !detail::connected_orientable_by_homology(small_cover(as2.p, as2.k, l).complex);
    return true;
  });
  r.check(count > 0 && non_orientable == count, "all " + std::to_string(count) + " functions on the pentagon non-orientable");
}

inline void lemma(SuiteReport& r, const SuiteOptions& o) {
  const int max_k = o.max_n.value_or(3) + 1;
  std::size_t total = 0, ok = 0;
  for (const Graph& g : detail::connected_graphs_between(1, max_k, true))
    for (int a = 0; a < g.n_vertices(); ++a) {
      ++total;
      ok += verify_lemma_conditions(lemma_subdivision(g, a), g, a).ok();
    }
  r.check(ok == total, "conditions hold for " + std::to_string(total) + " (graph, apex) pairs");
  auto k = lemma_subdivision(Graph::path(3), 1);
  r.check(k.tops.size() == 4, "L3 with apex 1 gives " + std::to_string(k.tops.size()) + " triangles");
  int apex = -1;
  for (std::size_t v = 0; v < k.coords.size(); ++v)
    if (k.colour[v] == 1) apex = static_cast<int>(v);
  const auto around = std::ranges::count_if(k.tops, [&](const auto& t) { return std::ranges::find(t, apex) != t.end(); });
  r.check(apex >= 0 && k.support(apex).size() == 3 && around == 4, "interior apex lies in 4 triangles");
}

inline void condition_star(SuiteReport& r, const SuiteOptions&) {
  struct Case {
    std::string name;
    VertexListComplex z;
    Graph g;
  };
  std::vector<Case> cases{{"(boundary of 3-simplex, star)", boundary_simplex(3), Graph::star(3)},
                          {"(boundary of 4-simplex, L4)", boundary_simplex(4), Graph::path(4)},
                          {"(boundary of 4-simplex, star)", boundary_simplex(4), Graph::star(4)},
                          {"(torus, L3)", torus7(), Graph::path(3)}};
  for (const auto& c : cases)
    for (auto strategy : {SubdivisionStrategy::Auto, SubdivisionStrategy::Lemma}) {
      auto y = subdivide_pseudomanifold(c.z.build(), c.g, strategy);
      auto cert = condition_star_check(y, c.g);
      r.check(cert.ok, c.name + (y.lemma ? " lemma" : " barycentric") + ": " + (cert.ok ? "ok" : cert.failure));
    }
}

inline void realization(SuiteReport& r, const SuiteOptions&) {
  auto hex = realize(boundary_simplex(2).build(), Graph::path(2)).certificate;
  r.check(hex.mode == "full" && hex.omega_size == 24, "(circle, L2) enumerated in full, |Omega| = " + hex.omega_size.str());
  r.check(hex.r == 6 && hex.s == 2, "(circle, L2) r = " + hex.r.str() + ", s = " + hex.s.str());
  r.check(hex.ok(), "(circle, L2) all checks pass");
  auto s3 = realize(boundary_simplex(4).build(), Graph::path(4)).certificate;
  BigInt prod = 1;
  for (const auto& [tube, size] : s3.I_sizes) prod *= size;
  r.check(s3.ok(), "(3-sphere, L4) " + s3.mode + " certificate, all checks pass");
  r.check(s3.s == (BigInt(1) << (s3.m - 1)) * prod && s3.check("degree_equals_s"), "(3-sphere, L4) s = 2^(m-1) prod |I_T| = " + s3.s.str());
  r.check(s3.check("degree_independent") && s3.probes == s3.sigma_count, "(3-sphere, L4) degree independent of the probe simplex");
}

inline void closed_forms(SuiteReport& r, const SuiteOptions& o) {
  bool eul = true;
  for (int m = 1; m <= 8; ++m)
    for (int k = 0; k < m; ++k) eul = eul && eulerian(m, k) == detail::brute_eulerian(m, k);
  r.check(eul, "Eulerian numbers m <= 8 match brute force");
  bool zz = true;
  for (int m = 0; m <= 9; ++m) zz = zz && zigzag(m) == detail::brute_zigzag(m);
  r.check(zz, "zigzag numbers m <= 9 match brute force");
  for (int n = 3; n <= o.max_n.value_or(10); ++n) {
    auto c = check_inequality_chain(n);
    r.check(c.holds, "n=" + std::to_string(n) + ": " + c.as_cover.str() + " < " + c.pe_cover.str() + " < " + c.tomei.str());
  }
}

struct Suite {
  std::string name;
  std::string title;
  std::function<void(SuiteReport&, const SuiteOptions&)> run;
};

inline const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"facet-counts", "Facet counts of associahedra and permutohedra", facet_counts},
      {"h-vectors", "h-vectors: Narayana and Eulerian", h_vectors},
      {"bv-inequality", "h-vector lower bound by the associahedron", bv_inequality},
      {"minkowski", "Vertex coordinates against the Minkowski sum", minkowski},
      {"pi-degree", "Degree of the map onto the simplex", pi_degree_suite},
      {"h-vs-z2betti", "Z2 Betti numbers of small covers equal h", h_vs_z2betti},
      {"tomei", "Tomei manifolds", tomei},
      {"pentagon-tower", "Small cover of the pentagon and its orientation cover", pentagon_tower},
      {"hessenberg", "Hessenberg surface", hessenberg},
      {"orientability", "Orientability criterion against homology", orientability},
      {"lemma", "Lemma subdivision certificates", lemma},
      {"condition-star", "Colour condition on subdivided pseudo-manifolds", condition_star},
      {"realization", "Covering and degree certificates", realization},
      {"closed-forms", "Closed forms against brute force and the Betti chain", closed_forms},
  };
  return all;
}

inline const Suite* find_suite(const std::string& name) {
  for (const auto& s : suites())
    if (s.name == name) return &s;
  return nullptr;
}

/// Runs a suite, turning exceptions into a failed report.
inline SuiteReport run(const Suite& s, const SuiteOptions& o = {}) {
  SuiteReport r;
  r.name = s.name;
  r.title = s.title;
  const auto start = std::chrono::steady_clock::now();
  try {
    s.run(r, o);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace nestotope::verify
