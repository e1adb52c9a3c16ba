#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "nestotope/nestohedron.hpp"
#include "oracles.hpp"

using namespace nestotope;

namespace {

/// Counts of pairwise-compatible tube families by size, from the raw rule and subset scans.
std::vector<long long> brute_face_counts(const Graph& g) {
  const int nv = g.n_vertices();
  const auto edges = g.edges();
  std::vector<std::uint64_t> tubes;
  for (auto t : oracle::connected_subsets(nv, edges))
    if (t != (std::uint64_t{1} << nv) - 1) tubes.push_back(t);
  auto ok = [&](std::uint64_t s, std::uint64_t t) {
    if ((s & t) == s || (s & t) == t) return true;
    return (s & t) == 0 && !oracle::induced_connected(nv, edges, s | t);
  };
  std::vector<long long> counts(nv, 0);
  const std::size_t m = tubes.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const int k = __builtin_popcountll(mask);
    if (k >= nv) continue;
    bool good = true;
    for (std::size_t i = 0; i < m && good; ++i)
      for (std::size_t j = i + 1; j < m && good; ++j)
        if (((mask >> i) & 1) && ((mask >> j) & 1)) good = ok(tubes[i], tubes[j]);
    if (good) ++counts[k];
  }
  return counts;
}

}  // namespace

TEST(Compatible, Examples) {
  BuildingSet b = graph_building_set(Graph::path(3));
  EXPECT_TRUE(compatible(b, VertexSet{0}, VertexSet{0, 1}));
  EXPECT_TRUE(compatible(b, VertexSet{0}, VertexSet{2}));
  EXPECT_FALSE(compatible(b, VertexSet{0, 1}, VertexSet{1, 2}));
  EXPECT_THROW(compatible(b, VertexSet{0}, VertexSet{0}), std::invalid_argument);
}

TEST(Compatible, Symmetric) {
  for (const Graph& g : all_connected_graphs(4)) {
    BuildingSet b = graph_building_set(g);
    auto t = b.proper_tubes();
    for (auto s : t)
      for (auto u : t)
        if (s != u) EXPECT_EQ(compatible(b, s, u), compatible(b, u, s));
  }
}

TEST(FacePoset, PentagonHexagonSegment) {
  FacePoset pent = face_poset(graph_building_set(Graph::path(3)));
  EXPECT_EQ(pent.vertices().size(), 5u);
  EXPECT_EQ(pent.faces(1).size(), 5u);
  FacePoset hex = face_poset(graph_building_set(Graph::complete(3)));
  EXPECT_EQ(hex.vertices().size(), 6u);
  EXPECT_EQ(hex.faces(1).size(), 6u);
  FacePoset seg = face_poset(graph_building_set(Graph::path(2)));
  EXPECT_EQ(seg.vertices().size(), 2u);
}

TEST(FacePoset, PentagonCompatibilityCycle) {
  BuildingSet b = graph_building_set(Graph::path(3));
  FacePoset p = face_poset(b);
  // each tube meets exactly two others
  std::map<int, int> degree;
  for (const auto& v : p.vertices()) {
    ++degree[v[0]];
    ++degree[v[1]];
  }
  for (auto [tube, d] : degree) EXPECT_EQ(d, 2);
  auto idx = [&](VertexSet s) {
    return static_cast<int>(std::find(p.facets.begin(), p.facets.end(), s) - p.facets.begin());
  };
  EXPECT_TRUE(p.find({idx(VertexSet{0}), idx(VertexSet{0, 1})}).has_value());
  EXPECT_TRUE(p.find({idx(VertexSet{0}), idx(VertexSet{2})}).has_value());
  EXPECT_FALSE(p.find({idx(VertexSet{0, 1}), idx(VertexSet{1, 2})}).has_value());
}

TEST(FacePoset, RejectsDisconnected) {
  Graph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(face_poset(graph_building_set(g)), std::invalid_argument);
}

TEST(FacePoset, CountsMatchBruteForce) {
  for (int k = 2; k <= 4; ++k)
    for (const Graph& g : all_connected_graphs(k)) {
      FaceVectors fv = face_vectors(face_poset(graph_building_set(g)));
      ASSERT_EQ(fv.f, brute_face_counts(g));
    }
}

TEST(FacePoset, VertexCountsPermutohedronAssociahedron) {
  long long fact = 1;
  const long long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 1; n <= 6; ++n) {
    fact *= (n + 1);
    if (n <= 5) EXPECT_EQ(static_cast<long long>(face_poset(graph_building_set(Graph::complete(n + 1))).vertices().size()), fact);
    EXPECT_EQ(static_cast<long long>(face_poset(graph_building_set(Graph::path(n + 1))).vertices().size()), catalan[n + 1]);
  }
}

TEST(SimpleFlag, Examples) {
  EXPECT_TRUE(check_simple_and_flag(face_poset(graph_building_set(Graph::path(3)))));
  EXPECT_TRUE(check_simple_and_flag(face_poset(graph_building_set(Graph::path(4)))));
  // triangular prism: sides 0,1,2 pairwise meet but share no vertex
  std::vector<Tubing> prism{{3, 0, 1}, {3, 1, 2}, {3, 0, 2}, {4, 0, 1}, {4, 1, 2}, {4, 0, 2}};
  EXPECT_FALSE(check_simple_and_flag(FacePoset::from_faces(3, 5, prism)));
  // a vertex in too many facets
  EXPECT_THROW(FacePoset::from_faces(2, 3, {{0, 1, 2}}), std::invalid_argument);
}

TEST(SimpleFlag, AllSmallGraphs) {
  for (int k = 2; k <= 5; ++k)
    for (const Graph& g : connected_graphs_up_to_isomorphism(k))
      EXPECT_TRUE(check_simple_and_flag(face_poset(graph_building_set(g))));
}

TEST(FaceVectors, PentagonAndPermutohedron) {
  FaceVectors pent = face_vectors(face_poset(graph_building_set(Graph::path(3))));
  EXPECT_EQ(pent.f, (std::vector<long long>{1, 5, 5}));
  EXPECT_EQ(pent.h, (std::vector<long long>{1, 3, 1}));
  FaceVectors pe3 = face_vectors(face_poset(graph_building_set(Graph::complete(4))));
  EXPECT_EQ(pe3.h, (std::vector<long long>{1, 11, 11, 1}));
}

TEST(FaceVectors, NarayanaEulerianAndPalindromes) {
  for (int n = 1; n <= 6; ++n) {
    FaceVectors as = face_vectors(face_poset(graph_building_set(Graph::path(n + 1))));
    for (int i = 0; i <= n; ++i) EXPECT_EQ(as.h[i], oracle::narayana(n, i));
  }
  for (int n = 1; n <= 5; ++n) {
    FaceVectors pe = face_vectors(face_poset(graph_building_set(Graph::complete(n + 1))));
    EXPECT_EQ(pe.h, oracle::eulerian_row(n + 1));
  }
  for (int k = 2; k <= 5; ++k)
    for (const Graph& g : connected_graphs_up_to_isomorphism(k)) {
      FaceVectors fv = face_vectors(face_poset(graph_building_set(g)));
      const int n = k - 1;
      for (int i = 0; i <= n; ++i) EXPECT_EQ(fv.h[i], fv.h[n - i]);
      long long sum = 0;
      for (auto x : fv.h) sum += x;
      EXPECT_EQ(sum, fv.f[n]);
      // Euler relation for the boundary sphere of dimension n-1
      long long chi = 0;
      for (int j = 1; j <= n; ++j) chi += ((j - 1) % 2 ? -1 : 1) * fv.f[j];
      EXPECT_EQ(chi, 1 - ((n % 2) ? -1 : 1));
      EXPECT_FALSE(fv.gamma.empty());
    }
}

TEST(FaceVectors, GammaExpansion) {
  // pentagon: 1 + 3t + t^2 = (1+t)^2 + t
  EXPECT_EQ(gamma_from_h({1, 3, 1}), (std::vector<long long>{1, 1}));
  // permutohedron Pe3: 1 + 11t + 11t^2 + t^3 = (1+t)^3 + 8t(1+t)
  EXPECT_EQ(gamma_from_h({1, 11, 11, 1}), (std::vector<long long>{1, 8}));
  EXPECT_TRUE(gamma_from_h({1, 2, 3}).empty());
}

TEST(SupportConstant, Examples) {
  BuildingSet l3 = graph_building_set(Graph::path(3));
  EXPECT_EQ(support_constant(l3, VertexSet{0}), 1);
  EXPECT_EQ(support_constant(l3, VertexSet{0, 1}), 3);
  EXPECT_EQ(support_constant(graph_building_set(Graph::complete(3)), VertexSet{0, 1, 2}), 7);
}

TEST(VertexCoordinates, Examples) {
  BuildingSet l3 = graph_building_set(Graph::path(3));
  EXPECT_EQ(to_strings(vertex_coordinates(l3, {VertexSet{0}, VertexSet{0, 1}})), (std::vector<std::string>{"1", "2", "3"}));
  BuildingSet l2 = graph_building_set(Graph::path(2));
  EXPECT_EQ(to_strings(vertex_coordinates(l2, {VertexSet{0}})), (std::vector<std::string>{"1", "2"}));
  EXPECT_THROW(vertex_coordinates(l3, {VertexSet{0}, VertexSet{0}}), std::invalid_argument);
}

TEST(VertexCoordinates, HexagonIsPermutationsOf124) {
  BuildingSet k3 = graph_building_set(Graph::complete(3));
  FacePoset p = face_poset(k3);
  std::set<RationalPoint> got;
  for (const auto& v : p.vertices()) got.insert(vertex_coordinates(k3, p.tubes_of(v)));
  std::set<RationalPoint> expected;
  std::vector<int> perm{1, 2, 4};
  do expected.insert(RationalPoint(perm.begin(), perm.end()));
  while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(got, expected);
}

TEST(Minkowski, OracleAgreesForSmallGraphs) {
  for (int k = 2; k <= 4; ++k)
    for (const Graph& g : all_connected_graphs(k)) {
      BuildingSet b = graph_building_set(g);
      FacePoset p = face_poset(b);
      std::set<RationalPoint> coords;
      for (const auto& v : p.vertices()) coords.insert(vertex_coordinates(b, p.tubes_of(v)));
      ASSERT_EQ(coords.size(), p.vertices().size());
      ASSERT_EQ(coords, minkowski_vertex_oracle(b));
    }
  auto seg = minkowski_vertex_oracle(graph_building_set(Graph::path(2)));
  EXPECT_EQ(seg, (std::set<RationalPoint>{{1, 2}, {2, 1}}));
}

TEST(BarycentricComplex, FlagCounts) {
  EXPECT_EQ(barycentric_complex(face_poset(graph_building_set(Graph::path(3)))).complex.top_count(), 10u);
  EXPECT_EQ(barycentric_complex(face_poset(graph_building_set(Graph::path(4)))).complex.top_count(), 84u);
  EXPECT_EQ(barycentric_complex(face_poset(graph_building_set(Graph::path(2)))).complex.top_count(), 2u);
}

TEST(BarycentricComplex, IsASimplicialBall) {
  FlagComplex k = barycentric_complex(face_poset(graph_building_set(Graph::path(4))));
  EXPECT_TRUE(validate_complex(k.complex));
  EXPECT_EQ(euler_characteristic(k.complex), 1);
  // vertex-determined: distinct top cells have distinct vertex sets
  std::set<std::vector<CellId>> seen;
  for (std::size_t t = 0; t < k.complex.top_count(); ++t) {
    auto v = k.complex.vertices(3, static_cast<CellId>(t));
    std::vector<CellId> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    EXPECT_TRUE(seen.insert(s).second);
  }
}

TEST(PiMap, PentagonExamples) {
  BuildingSet b = graph_building_set(Graph::path(3));
  FacePoset p = face_poset(b);
  FlagComplex k = barycentric_complex(p);
  auto img = pi_map(b, p, k);
  auto find_face = [&](const std::vector<VertexSet>& tubes) {
    Tubing t;
    for (auto s : tubes) t.push_back(static_cast<int>(std::find(p.facets.begin(), p.facets.end(), s) - p.facets.begin()));
    std::sort(t.begin(), t.end());
    const int d = p.n - static_cast<int>(t.size());
    const int id = p.index(t);
    for (std::size_t v = 0; v < k.face.size(); ++v)
      if (k.face[v] == std::pair{d, id}) return to_strings(img[v]);
    return std::vector<std::string>{};
  };
  EXPECT_EQ(find_face({VertexSet{0}}), (std::vector<std::string>{"0", "1/2", "1/2"}));
  EXPECT_EQ(find_face({VertexSet{0}, VertexSet{0, 1}}), (std::vector<std::string>{"0", "0", "1"}));
  EXPECT_EQ(find_face({}), (std::vector<std::string>{"1/3", "1/3", "1/3"}));
}

TEST(PiDegree, IsOneForSmallGraphs) {
  for (int k = 2; k <= 4; ++k)
    for (const Graph& g : all_connected_graphs(k)) {
      PiDegreeReport r = pi_degree(graph_building_set(g));
      EXPECT_EQ(r.degree, 1);
      EXPECT_TRUE(r.uniform);
      EXPECT_TRUE(r.facets_to_faces);
      EXPECT_TRUE(r.boundary_to_boundary);
    }
}
