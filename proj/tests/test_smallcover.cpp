#include <gtest/gtest.h>

#include "nestotope/homology.hpp"
#include "nestotope/smallcover.hpp"

using namespace nestotope;

namespace {

struct Built {
  BuildingSet b;
  FacePoset p;
  FlagComplex k;
  explicit Built(const Graph& g) : b(graph_building_set(g)), p(face_poset(b)), k(barycentric_complex(p)) {}
  int col(VertexSet s) const {
    return static_cast<int>(std::find(p.facets.begin(), p.facets.end(), s) - p.facets.begin());
  }
};

using V = std::vector<long long>;

}  // namespace

TEST(Lambda, CanonicalOnPath3) {
  Built s(Graph::path(3));
  auto l = lambda_can(s.b);
  const Gf2Vector b1 = basis_vector(1), b2 = basis_vector(2);
  EXPECT_EQ(l.columns[s.col(VertexSet{1})], b1);
  EXPECT_EQ(l.columns[s.col(VertexSet{0})], b1 ^ b2);
  EXPECT_EQ(l.columns[s.col(VertexSet{0, 1})], b2);
  EXPECT_EQ(l.columns[s.col(VertexSet{1, 2})], b1 ^ b2);
  EXPECT_EQ(l.columns[s.col(VertexSet{2})], b2);
  Built seg(Graph::path(2));
  EXPECT_EQ(lambda_can(seg.b).columns, (std::vector<Gf2Vector>{b1, b1}));
}

TEST(Lambda, ValidOnSmallGraphs) {
  for (int k = 2; k <= 5; ++k)
    for (const Graph& g : all_connected_graphs(k)) {
      if (k == 5 && g.edge_count() > 5) continue;
      BuildingSet b = graph_building_set(g);
      EXPECT_TRUE(validate_characteristic(face_poset(b), lambda_can(b)));
    }
  for (int n = 1; n <= 4; ++n) {
    BuildingSet b = graph_building_set(Graph::complete(n + 1));
    auto l = lambda_tomei(b);
    EXPECT_TRUE(validate_characteristic(face_poset(b), l));
    EXPECT_TRUE(is_orientable_smallcover(l));
  }
}

TEST(Lambda, StarOnAs3) {
  Built s(Graph::path(4));
  auto l = lambda_star_as3(s.b);
  EXPECT_EQ(l.columns[s.col(VertexSet{0, 1, 2})], basis_vector(1) ^ basis_vector(2) ^ basis_vector(3));
  EXPECT_EQ(l.columns[s.col(VertexSet{0})], basis_vector(1));
  EXPECT_EQ(l.columns[s.col(VertexSet{3})], basis_vector(2));
  EXPECT_EQ(l.columns[s.col(VertexSet{2, 3})], basis_vector(3));
  EXPECT_TRUE(validate_characteristic(s.p, l));
  EXPECT_TRUE(is_orientable_smallcover(l));
  EXPECT_THROW(lambda_star_as3(graph_building_set(Graph::star(4))), std::invalid_argument);
}

TEST(Lambda, ValidationAndOrientabilityExamples) {
  Built pent(Graph::path(3));
  EXPECT_TRUE(validate_characteristic(pent.p, lambda_can(pent.b)));
  CharacteristicFunction all_b1{2, std::vector<Gf2Vector>(5, basis_vector(1))};
  EXPECT_FALSE(validate_characteristic(pent.p, all_b1));
  EXPECT_FALSE(is_orientable_smallcover(lambda_can(pent.b)));
  Built hex(Graph::complete(3));
  EXPECT_TRUE(is_orientable_smallcover(lambda_tomei(hex.b)));
  for (int k = 3; k <= 4; ++k)
    for (const Graph& g : all_connected_graphs(k)) EXPECT_FALSE(is_orientable_smallcover(lambda_can(graph_building_set(g))));
}

TEST(Lambda, EveryPentagonFunctionIsNonOrientable) {
  Built pent(Graph::path(3));
  int count = 0;
  for_each_characteristic(pent.p, [&](const CharacteristicFunction& l) {
    ++count;
    EXPECT_FALSE(is_orientable_smallcover(l));
    EXPECT_FALSE(orient(small_cover(pent.p, pent.k, l).complex).orientable);
    return true;
  });
  EXPECT_GT(count, 0);
}

TEST(Glue, RealMomentAngleExamples) {
  Built seg(Graph::path(2));
  auto r = real_moment_angle(seg.p, seg.k);
  EXPECT_EQ(r.complex.top_count(), 8u);
  EXPECT_EQ(homology(r.complex).betti_q, (V{1, 1}));
  Built pent(Graph::path(3));
  auto rp = real_moment_angle(pent.p, pent.k);
  EXPECT_TRUE(pseudo_manifold_check(rp.complex, 2).is_pseudo);
  EXPECT_TRUE(orient(rp.complex).orientable);
  EXPECT_EQ(homology(rp.complex).betti_q, (V{1, 10, 1}));
  Built hex(Graph::complete(3));
  auto rh = real_moment_angle(hex.p, hex.k);
  EXPECT_TRUE(orient(rh.complex).orientable);
  // 64 hexagons, 192 edges, 96 vertices: genus 17
  EXPECT_EQ(homology(rh.complex).betti_q, (V{1, 34, 1}));
}

TEST(Glue, SmallCoverExamples) {
  Built pent(Graph::path(3));
  auto m = small_cover(pent.p, pent.k, lambda_can(pent.b));
  EXPECT_TRUE(validate_complex(m.complex));
  EXPECT_TRUE(pseudo_manifold_check(m.complex, 2).is_pseudo);
  EXPECT_EQ(euler_characteristic(m.complex), -1);
  auto h = homology(m.complex);
  EXPECT_EQ(h.betti_z2, (V{1, 3, 1}));
  EXPECT_EQ(h.betti_q, (V{1, 2, 0}));
  Built hex(Graph::complete(3));
  auto t = small_cover(hex.p, hex.k, lambda_tomei(hex.b));
  EXPECT_EQ(homology(t.complex).betti_q, (V{1, 4, 1}));
  Built seg(Graph::path(2));
  auto c = small_cover(seg.p, seg.k, lambda_can(seg.b));
  EXPECT_EQ(homology(c.complex).betti_q, (V{1, 1}));
  CharacteristicFunction bad{2, std::vector<Gf2Vector>(5, basis_vector(1))};
  EXPECT_THROW(small_cover(pent.p, pent.k, bad), std::invalid_argument);
}

TEST(Glue, BudgetRefusal) {
  Built pe3(Graph::complete(4));
  EXPECT_THROW(real_moment_angle(pe3.p, pe3.k), BudgetExceeded);
}

TEST(Covering, ProjectionFibers) {
  Built seg(Graph::path(2));
  auto l = lambda_can(seg.b);
  auto r = real_moment_angle(seg.p, seg.k);
  auto m = small_cover(seg.p, seg.k, l);
  auto rep = covering_projection(r, m, [&](Gf2Vector g) { return l.apply(g); }, gf2_kernel(l.columns));
  EXPECT_TRUE(rep.well_defined);
  EXPECT_EQ(rep.fiber_size, std::optional<std::size_t>(2));
  EXPECT_TRUE(rep.deck_action_ok);
  Built pent(Graph::path(3));
  auto lp = lambda_can(pent.b);
  auto rp = real_moment_angle(pent.p, pent.k);
  auto mp = small_cover(pent.p, pent.k, lp);
  auto rpp = covering_projection(rp, mp, [&](Gf2Vector g) { return lp.apply(g); }, gf2_kernel(lp.columns));
  EXPECT_TRUE(rpp.well_defined);
  EXPECT_EQ(rpp.fiber_size, std::optional<std::size_t>(8));
  EXPECT_TRUE(rpp.deck_action_ok);
}

TEST(OrientationCover, EtaConstructionMatchesDoubleCover) {
  for (const Graph& g : {Graph::path(3), Graph::complete(3), Graph::path(4)}) {
    Built s(g);
    auto l = lambda_can(s.b);
    auto m = small_cover(s.p, s.k, l);
    auto eta = orientation_cover_via_eta(s.p, s.k, l);
    auto dbl = orientation_double_cover(m.complex);
    auto he = homology(eta.complex), hd = homology(dbl.complex), hm = homology(m.complex);
    EXPECT_EQ(he.betti_q, hd.betti_q);
    EXPECT_EQ(eta.complex.top_count(), dbl.complex.top_count());
    for (int d = 0; d <= s.p.n; ++d) EXPECT_EQ(eta.complex.count(d), dbl.complex.count(d));
    auto oc = orient(eta.complex);
    EXPECT_TRUE(oc.orientable);
    EXPECT_EQ(oc.components, 1);
    const Gf2Vector low = (Gf2Vector{1} << l.n) - 1;
    auto rep = covering_projection(eta, m, [&](Gf2Vector x) { return x & low; }, {Gf2Vector{1} << l.n});
    EXPECT_EQ(rep.fiber_size, std::optional<std::size_t>(2));
    EXPECT_TRUE(rep.deck_action_ok);
    // Betti numbers of the orientation cover: b_i(M) + b_{n-i}(M)
    const int n = s.p.n;
    for (int i = 0; i <= n; ++i) EXPECT_EQ(he.betti_q[i], hm.betti_q[i] + hm.betti_q[n - i]);
  }
  Built hex(Graph::complete(3));
  EXPECT_EQ(homology(orientation_cover_via_eta(hex.p, hex.k, lambda_can(hex.b)).complex).betti_q, (V{1, 6, 1}));
  Built pent(Graph::path(3));
  EXPECT_EQ(homology(orientation_cover_via_eta(pent.p, pent.k, lambda_can(pent.b)).complex).betti_q, (V{1, 4, 1}));
  EXPECT_THROW(orientation_cover_via_eta(hex.p, hex.k, lambda_tomei(hex.b)), std::invalid_argument);
}

TEST(OrientationCover, ConnectedIffNonOrientable) {
  Built hex(Graph::complete(3));
  auto t = small_cover(hex.p, hex.k, lambda_tomei(hex.b));
  EXPECT_EQ(orient(orientation_double_cover(t.complex).complex).components, 2);
  auto h = small_cover(hex.p, hex.k, lambda_can(hex.b));
  EXPECT_EQ(orient(orientation_double_cover(h.complex).complex).components, 1);
}

TEST(SmallCover, Z2BettiEqualsHVector) {
  for (int k = 2; k <= 4; ++k)
    for (const Graph& g : all_connected_graphs(k)) {
      Built s(g);
      auto m = small_cover(s.p, s.k, lambda_can(s.b));
      HomologyOptions opt;
      opt.rational = false;
      EXPECT_EQ(homology(m.complex, opt).betti_z2, face_vectors(s.p).h);
    }
}

TEST(SmallCover, OrientabilityAgreesWithOrient) {
  Built as3(Graph::path(4));
  std::size_t checked = 0;
  for_each_characteristic(as3.p, [&](const CharacteristicFunction& l) {
    EXPECT_EQ(is_orientable_smallcover(l), orient(small_cover(as3.p, as3.k, l).complex).orientable);
    return ++checked < 40;
  });
  EXPECT_EQ(checked, 40u);
  auto found = find_orientable_characteristic(as3.p, 1'000'000);
  ASSERT_TRUE(found.has_value());
  EXPECT_TRUE(orient(small_cover(as3.p, as3.k, *found).complex).orientable);
}
