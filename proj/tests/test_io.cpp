#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "nestotope/io.hpp"

using namespace nestotope;
using io::json;

namespace {

std::string env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

std::string data(const std::string& file) { return env("NESTOTOPE_DATA") + "/" + file; }

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args) {
  Run r;
  const std::string cmd = env("NESTOTOPE_CLI") + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / ("nestotope_" + name)).string(); }

}  // namespace

TEST(Graph, ParseAndPresets) {
  Graph g = io::parse_graph(json::parse(R"({"n_vertices": 3, "edges": [[0, 1], [1, 2]]})"));
  EXPECT_EQ(g.edge_count(), 2);
  EXPECT_TRUE(g.is_standard_path());
  EXPECT_EQ(io::parse_graph(io::graph_json(Graph::cycle(5))).edges(), Graph::cycle(5).edges());
  EXPECT_EQ(io::graph_preset("star:4")->edges(), Graph::star(4).edges());
  EXPECT_EQ(io::graph_preset("complete:3")->edge_count(), 3);
  EXPECT_FALSE(io::graph_preset("wheel:4").has_value());
  EXPECT_THROW(io::parse_graph(json::parse(R"({"edges": []})")), std::invalid_argument);
  EXPECT_THROW(io::parse_graph(json::parse(R"({"n_vertices": 2, "edges": [[0, 0]]})")), std::invalid_argument);
  EXPECT_THROW(io::parse_graph(json::parse(R"({"n_vertices": "x", "edges": []})")), std::invalid_argument);
  EXPECT_THROW(io::load_graph(data("malformed_graph.json")), std::invalid_argument);
}

TEST(PseudoManifold, ParseWithOrientation) {
  auto in = io::load_pseudomanifold(data("sphere2.json"));
  EXPECT_EQ(in.complex.dim(), 2);
  EXPECT_EQ(in.complex.top_count(), 4u);
  ASSERT_TRUE(in.orientation.has_value());
  auto bad = io::read_json_file(data("sphere2.json"));
  bad["orientation"][0] = -bad["orientation"][0].get<int>();
  EXPECT_THROW(io::parse_pseudomanifold(bad), std::invalid_argument);
  bad["orientation"] = {1, 1};
  EXPECT_THROW(io::parse_pseudomanifold(bad), std::invalid_argument);
  EXPECT_THROW(io::parse_pseudomanifold(json::parse(R"({"dim": 1, "top_cells": [[0, 0]]})")), std::invalid_argument);
  EXPECT_EQ(io::load_pseudomanifold("torus7").complex.top_count(), 14u);
}

TEST(PseudoManifold, FaceListsRoundTrip) {
  // two edges on the same pair of vertices: a circle that is not vertex-determined
  auto c = SimplicialCellComplex::from_faces(2, {{{1, 0}, {0, 1}}});
  EXPECT_FALSE(io::vertex_determined(c));
  json j = io::complex_json(c);
  ASSERT_TRUE(j.contains("faces"));
  auto back = io::parse_pseudomanifold(j);
  EXPECT_EQ(back.complex.top_count(), 2u);
  EXPECT_EQ(back.complex.count(0), 2u);
  EXPECT_FALSE(io::complex_json(boundary_simplex(3).build()).contains("faces"));
}

TEST(Lambda, FileMatchesBuiltIn) {
  BuildingSet b = graph_building_set(Graph::path(4));
  FacePoset p = face_poset(b);
  auto l = io::parse_lambda(io::read_json_file(data("lambda_star_as3.json")), p);
  EXPECT_EQ(l.columns, lambda_star_as3(b).columns);
  EXPECT_EQ(io::parse_lambda(io::lambda_json(p, lambda_can(b)), p).columns, lambda_can(b).columns);
  json j = io::lambda_json(p, l);
  j["columns"].erase("[0]");
  EXPECT_THROW(io::parse_lambda(j, p), std::invalid_argument);
  j = io::lambda_json(p, l);
  j["columns"]["[0]"] = {0, 0, 0};
  EXPECT_THROW(io::parse_lambda(j, p), std::invalid_argument);
}

TEST(FaceReport, Pentagon) {
  BuildingSet b = graph_building_set(Graph::path(3));
  json j = io::face_report(b, face_poset(b));
  EXPECT_EQ(j["schema"], "nestotope/1");
  EXPECT_EQ(j["f"], json({5, 5, 1}));
  EXPECT_EQ(j["h"], json({1, 3, 1}));
  EXPECT_EQ(j["gamma"], json({1, 1}));
  EXPECT_EQ(j["vertices"].size(), 5u);
  EXPECT_EQ(j["vertices"][0].size(), 3u);
  EXPECT_TRUE(j["vertices"][0][0].is_string());
}

TEST(Cli, PosetIsDeterministic) {
  auto a = cli("poset --graph " + data("path4.json"));
  auto b = cli("poset --graph path:4");
  ASSERT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  auto j = json::parse(a.out);
  EXPECT_EQ(j["f"], json({14, 21, 9, 1}));
  EXPECT_EQ(j["h"], json({1, 6, 6, 1}));
}

TEST(Cli, ValidationErrorsExitTwo) {
  auto r = cli("poset --graph " + data("malformed_graph.json"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("malformed JSON"), std::string::npos);
  EXPECT_EQ(cli("poset --graph " + data("bad_edge_graph.json")).status, 2);
  EXPECT_EQ(cli("poset --graph " + data("missing.json")).status, 2);
  EXPECT_EQ(cli("poset").status, 2);
  EXPECT_EQ(cli("formulas --family x --n 3").status, 2);
  EXPECT_EQ(cli("realize --pseudomanifold " + data("sphere2.json") + " --graph path:4").status, 2);
}

TEST(Cli, KleinBottleIsRejected) {
  auto r = cli("realize --pseudomanifold " + data("klein.json") + " --graph " + data("path3.json"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("non-orientable input"), std::string::npos);
}

TEST(Cli, BudgetRefusalExitsThree) {
  auto r = cli("smallcover --graph complete:4 --lambda tomei --budget 10");
  EXPECT_EQ(r.status, 3);
  EXPECT_EQ(cli("realize --pseudomanifold circle.json --graph path:2 --closure-cap 1").status, 2);
  EXPECT_EQ(cli("realize --pseudomanifold " + data("circle.json") + " --graph path:2 --closure-cap 1").status, 3);
}

TEST(Cli, SmallCoverReport) {
  const std::string out = temp("as3.json");
  auto r = cli("smallcover --graph " + data("path4.json") + " --lambda " + data("lambda_star_as3.json") + " --homology --emit " + out);
  ASSERT_EQ(r.status, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["orientable"].get<bool>());
  EXPECT_EQ(j["homology"]["betti_z2"], json({1, 6, 6, 1}));
  EXPECT_EQ(j["homology"]["betti_q"].back(), 1);
  auto full = io::read_json_file(out);
  EXPECT_EQ(full["complex"]["top_cells"].size(), j["top_cells"].get<std::size_t>());
  auto pent = json::parse(cli("smallcover --graph path:3 --cover --homology").out);
  EXPECT_EQ(pent["homology"]["betti_q"], json({1, 4, 1}));
}

TEST(Cli, SubdivideAndRealizeRoundTrip) {
  const std::string y = temp("y.json");
  auto s = cli("subdivide --pseudomanifold " + data("sphere2.json") + " --graph " + data("star3.json") + " --certify --emit " + y);
  ASSERT_EQ(s.status, 0) << s.out;
  auto yj = io::read_json_file(y);
  EXPECT_TRUE(yj["certificate"]["ok"].get<bool>());
  EXPECT_EQ(yj["construction"], "lemma");
  EXPECT_EQ(yj["colour"].size(), io::parse_pseudomanifold(yj).complex.count(0));
  auto r = cli("realize --pseudomanifold " + data("circle.json") + " --graph " + data("path2.json") + " --budget 1e6");
  ASSERT_EQ(r.status, 0) << r.out;
  auto c = json::parse(r.out);
  EXPECT_EQ(c["r"], 6);
  EXPECT_EQ(c["s"], 2);
  EXPECT_EQ(c["mode"], "full");
  for (auto key : {"xi_involutions", "xi_commutation", "phi_involutions", "phi_commutation", "covering_fibers",
                   "epsilon_class_constant", "degree_independent"})
    EXPECT_TRUE(c["checks"][key].get<bool>()) << key;
  EXPECT_EQ(r.out, cli("realize --pseudomanifold boundary-simplex:2 --graph path:2").out);
}

TEST(Cli, FormulasAndVerify) {
  auto f = cli("formulas --family hessenberg --n 2");
  EXPECT_EQ(f.status, 0);
  EXPECT_EQ(f.out, "family,n,i,betti_q,cover_betti_q\nhessenberg,2,0,1,1\nhessenberg,2,1,3,6\nhessenberg,2,2,0,1\n");
  auto v = cli("verify --suite h-vs-z2betti --max-n 3");
  EXPECT_EQ(v.status, 0) << v.out;
  EXPECT_NE(v.out.find("PASS"), std::string::npos);
  EXPECT_EQ(cli("verify --suite nothing").status, 2);
}
