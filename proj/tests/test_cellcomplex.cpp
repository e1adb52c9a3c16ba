#include <gtest/gtest.h>

#include "nestotope/cellcomplex.hpp"
#include "nestotope/homology.hpp"
#include "nestotope/samples.hpp"

using namespace nestotope;

TEST(Complex, TwoArcCircleIsValid) {
  // two edges, both from vertex 0 to vertex 1
  auto c = SimplicialCellComplex::from_faces(2, {{{1, 0}, {1, 0}}});
  EXPECT_TRUE(validate_complex(c));
  EXPECT_EQ(c.count(1), 2u);
  auto cert = orient(c);
  EXPECT_TRUE(cert.is_pseudo);
  EXPECT_TRUE(cert.orientable);
  EXPECT_EQ(homology(c).betti_q, (std::vector<long long>{1, 1}));
}

TEST(Complex, SelfGluedArcIsInvalid) {
  auto c = SimplicialCellComplex::from_faces(1, {{{0, 0}}});
  std::string why;
  EXPECT_FALSE(validate_complex(c, &why));
  EXPECT_NE(why.find("repeats a vertex"), std::string::npos);
}

TEST(Complex, SimplicialIdentitiesDetected) {
  // a triangle whose edges do not close up consistently
  auto c = SimplicialCellComplex::from_faces(3, {{{1, 0}, {2, 0}, {2, 1}}, {{2, 0, 1}}});
  EXPECT_FALSE(validate_complex(c));
  auto good = SimplicialCellComplex::from_faces(3, {{{1, 0}, {2, 0}, {2, 1}}, {{2, 1, 0}}});
  EXPECT_TRUE(validate_complex(good));
}

TEST(Complex, InconsistentKeysFlagged) {
  // identify vertex 0 of one edge with vertex 1 of the other but edges as a whole
  auto c = SimplicialCellComplex::build(1, 2, [](std::size_t t, SlotMask mask) {
    if (mask == 3) return CellKey{9};
    return CellKey{static_cast<std::int64_t>(t == 0 ? mask : 3 - mask)};
  });
  EXPECT_FALSE(c.inconsistency().empty());
  EXPECT_FALSE(validate_complex(c));
}

TEST(Complex, SubcellNavigationMatchesTable) {
  auto z = boundary_simplex(4).build();
  for (std::size_t t = 0; t < z.top_count(); ++t)
    for (SlotMask m = 1; m <= full_mask(3); ++m)
      EXPECT_EQ(z.subcell(3, static_cast<CellId>(t), m), z.top_subcell(t, m));
}

TEST(PseudoManifold, Examples) {
  auto s2 = boundary_simplex(3).build();
  EXPECT_TRUE(pseudo_manifold_check(s2, 2).is_pseudo);
  EXPECT_FALSE(pseudo_manifold_check(s2, 3).is_pseudo);
  auto two_tets = SimplicialCellComplex::from_top_vertices(3, {{0, 1, 2, 3}, {0, 1, 2, 4}});
  EXPECT_FALSE(pseudo_manifold_check(two_tets, 3).is_pseudo);
  auto torus = torus7().build();
  EXPECT_TRUE(validate_complex(torus));
  EXPECT_TRUE(pseudo_manifold_check(torus, 2).is_pseudo);
}

TEST(Orient, SphereKleinAndDisjointSpheres) {
  auto s2 = orient(boundary_simplex(3).build());
  EXPECT_TRUE(s2.orientable);
  EXPECT_TRUE(s2.fundamental_cycle_closed);
  EXPECT_EQ(s2.components, 1);
  auto klein = klein_bottle().build();
  ASSERT_TRUE(validate_complex(klein));
  auto kc = orient(klein);
  EXPECT_TRUE(kc.is_pseudo);
  EXPECT_FALSE(kc.orientable);
  auto two = orient(disjoint_union(boundary_simplex(3), boundary_simplex(3)).build());
  EXPECT_TRUE(two.orientable);
  EXPECT_EQ(two.components, 2);
  EXPECT_FALSE(orient(rp2_6().build()).orientable);
}

TEST(DoubleCover, OrientableGivesTwoCopies) {
  auto torus = torus7().build();
  auto cov = orientation_double_cover(torus);
  EXPECT_EQ(cov.complex.top_count(), 2 * torus.top_count());
  auto cert = orient(cov.complex);
  EXPECT_TRUE(cert.orientable);
  EXPECT_EQ(cert.components, 2);
  auto map = induced_cell_map(cov.complex, torus, cov.top_projection);
  EXPECT_TRUE(map.well_defined);
  EXPECT_EQ(constant_fiber_size(map, torus), std::optional<std::size_t>(2));
}

TEST(DoubleCover, KleinBottleCoveredByTorus) {
  auto klein = klein_bottle().build();
  auto cov = orientation_double_cover(klein);
  ASSERT_TRUE(validate_complex(cov.complex));
  auto cert = orient(cov.complex);
  EXPECT_TRUE(cert.orientable);
  EXPECT_EQ(cert.components, 1);
  EXPECT_EQ(homology(cov.complex).betti_q, (std::vector<long long>{1, 2, 1}));
  auto map = induced_cell_map(cov.complex, klein, cov.top_projection);
  EXPECT_EQ(constant_fiber_size(map, klein), std::optional<std::size_t>(2));
}

TEST(DoubleCover, ProjectivePlaneCoveredBySphere) {
  auto cov = orientation_double_cover(rp2_6().build());
  EXPECT_EQ(homology(cov.complex).betti_q, (std::vector<long long>{1, 0, 1}));
  EXPECT_EQ(orient(cov.complex).components, 1);
}

TEST(Barycentric, CountsAndColouring) {
  auto seg = SimplicialCellComplex::from_top_vertices(1, {{0, 1}});
  EXPECT_EQ(barycentric_subdivide(seg).complex.top_count(), 2u);
  auto s2 = boundary_simplex(3).build();
  auto b = barycentric_subdivide(s2);
  EXPECT_EQ(b.complex.top_count(), 24u);
  EXPECT_TRUE(validate_complex(b.complex));
  // regular colouring: the two ends of every edge have different colours
  for (std::size_t e = 0; e < b.complex.count(1); ++e) {
    auto v = b.complex.vertices(1, static_cast<CellId>(e));
    EXPECT_NE(b.colour[v[0]], b.colour[v[1]]);
  }
  EXPECT_EQ(homology(b.complex).betti_q, (std::vector<long long>{1, 0, 1}));
}

TEST(Barycentric, OrientationIsInherited) {
  auto torus = torus7().build();
  auto o = orient(torus);
  auto b = barycentric_subdivide(torus, &o.orientation);
  auto ob = orient(b.complex);
  ASSERT_TRUE(ob.orientable);
  // inherited orientation agrees with a propagated one up to a global sign
  const int rel = ob.orientation[0] * b.orientation[0];
  for (std::size_t t = 0; t < b.complex.top_count(); ++t) EXPECT_EQ(ob.orientation[t] * b.orientation[t], rel);
}

TEST(Barycentric, OfSimplicialCellComplexIsSimplicial) {
  auto circle = SimplicialCellComplex::from_faces(2, {{{1, 0}, {1, 0}}});
  auto b = barycentric_subdivide(circle);
  EXPECT_EQ(b.complex.count(0), 4u);
  EXPECT_EQ(b.complex.top_count(), 4u);
  EXPECT_TRUE(orient(b.complex).is_pseudo);
}

TEST(Boundary, SquaredZero) {
  EXPECT_TRUE(boundary_squared_zero(boundary_simplex(5).build()));
  EXPECT_TRUE(boundary_squared_zero(barycentric_subdivide(klein_bottle().build()).complex));
}
