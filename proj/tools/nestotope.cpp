#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nestotope/formulas.hpp"
#include "nestotope/io.hpp"
#include "nestotope/verify.hpp"

using namespace nestotope;
using io::json;

namespace {

struct RunConfig {
  std::string graph, pseudomanifold, lambda = "can", emit, apex = "auto", strategy = "auto", family, suite = "all";
  double cell_budget = static_cast<double>(default_top_budget);
  double omega_budget = 1e6;
  double closure_cap = static_cast<double>(default_closure_cap);
  std::size_t samples = 10'000;
  std::uint64_t seed = RealizeOptions{}.seed;
  int n = 0;
  int max_n = 0;
  bool homology = false, certify = false, cover = false, timing = false, verbose = false;
};

std::size_t as_count(double x, const char* what) {
  if (!(x >= 1) || x > 1e15 || std::floor(x) != x) throw std::invalid_argument(std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(x);
}

void note(const RunConfig& c, const std::string& msg) {
  if (c.verbose) std::cerr << msg << "\n";
}

void emit(const RunConfig& c, const json& j) { io::write_text(c.emit.empty() ? "-" : c.emit, io::dump(j)); }

int cmd_poset(const RunConfig& c) {
  Graph g = io::load_graph(c.graph);
  BuildingSet b = graph_building_set(g);
  FacePoset p = face_poset(b);
  json j = io::face_report(b, p);
  j["graph"] = io::graph_json(g);
  emit(c, j);
  return 0;
}

CharacteristicFunction choose_lambda(const RunConfig& c, const BuildingSet& b, const FacePoset& p) {
  if (c.lambda == "can") return lambda_can(b);
  if (c.lambda == "tomei") return lambda_tomei(b);
  if (c.lambda == "star") return lambda_star_as3(b);
  return io::parse_lambda(io::read_json_file(c.lambda), p);
}

int cmd_smallcover(const RunConfig& c) {
  Graph g = io::load_graph(c.graph);
  BuildingSet b = graph_building_set(g);
  FacePoset p = face_poset(b);
  FlagComplex k = barycentric_complex(p);
  auto l = choose_lambda(c, b, p);
  const std::size_t budget = as_count(c.cell_budget, "--budget");
  const bool orientable = is_orientable_smallcover(l);
  if (c.cover && orientable) throw std::invalid_argument("orientable small cover: the orientation cover is two copies");
  note(c, "gluing " + std::to_string(k.complex.top_count()) + " flags per copy");
  auto m = c.cover ? orientation_cover_via_eta(p, k, l, budget) : small_cover(p, k, l, budget);
  json j;
  j["schema"] = io::schema;
  j["graph"] = io::graph_json(g);
  j["lambda"] = io::lambda_json(p, l);
  j["orientable"] = orientable;
  j["orientation_cover"] = c.cover;
  j["h"] = face_vectors(p).h;
  j["rank"] = m.rank;
  j["top_cells"] = m.complex.top_count();
  if (c.homology) {
    HomologyOptions ho;
    ho.cell_budget = budget * (std::size_t{1} << (p.n + 1));
    j["homology"] = io::homology_json(homology(m.complex, ho));
  }
  if (!c.emit.empty()) {
    json full = j;
    full["complex"] = io::complex_json(m.complex);
    io::write_text(c.emit, io::dump(full));
  }
  std::cout << io::dump(j);
  return 0;
}

SubdivisionStrategy parse_strategy(const RunConfig& c, std::optional<int>& apex) {
  if (c.apex != "auto") {
    try {
      std::size_t used = 0;
      apex = std::stoi(c.apex, &used);
      if (used != c.apex.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("--apex must be 'auto' or a vertex number");
    }
  }
  if (c.strategy == "lemma" || apex) return SubdivisionStrategy::Lemma;
  if (c.strategy == "auto") return SubdivisionStrategy::Auto;
  throw std::invalid_argument("--strategy must be auto or lemma");
}

int cmd_subdivide(const RunConfig& c) {
  auto z = io::load_pseudomanifold(c.pseudomanifold);
  Graph g = io::load_graph(c.graph);
  std::optional<int> apex;
  auto strategy = parse_strategy(c, apex);
  auto y = subdivide_pseudomanifold(z.complex, g, strategy, apex);
  json j = io::complex_json(y.complex, &y.orientation, &y.colour);
  j["schema"] = io::schema;
  j["construction"] = y.lemma ? "lemma" : "barycentric";
  if (y.lemma) j["apex"] = y.apex;
  if (c.certify) {
    auto cert = condition_star_check(y, g);
    j["certificate"] = {{"ok", cert.ok},
                        {"regular_colouring", cert.regular},
                        {"pseudo_manifold", cert.pseudo},
                        {"orientation_consistent", cert.orientation_consistent},
                        {"ridges_checked", cert.ridges_checked},
                        {"failures", cert.failures}};
    if (!cert.ok) j["certificate"]["failure"] = cert.failure;
  }
  emit(c, j);
  return c.certify && !j["certificate"]["ok"].get<bool>() ? 1 : 0;
}

int cmd_realize(const RunConfig& c) {
  auto z = io::load_pseudomanifold(c.pseudomanifold);
  Graph g = io::load_graph(c.graph);
  RealizeOptions o;
  o.omega_budget = as_count(c.omega_budget, "--budget");
  o.closure_cap = as_count(c.closure_cap, "--closure-cap");
  o.samples = c.samples;
  o.seed = c.seed;
  o.strategy = parse_strategy(c, o.apex);
  auto rep = realize(z.complex, g, o);
  json j = io::certificate_json(rep.certificate);
  j["construction"] = rep.y.lemma ? "lemma" : "barycentric";
  emit(c, j);
  return rep.certificate.ok() ? 0 : 1;
}

int cmd_formulas(const RunConfig& c) {
  io::write_text(c.emit.empty() ? "-" : c.emit, formulas_csv(parse_family(c.family), c.n));
  return 0;
}

int cmd_verify(const RunConfig& c) {
  std::vector<const verify::Suite*> chosen;
  if (c.suite == "all") {
    for (const auto& s : verify::suites()) chosen.push_back(&s);
  } else {
    const auto* s = verify::find_suite(c.suite);
    if (!s) {
      std::string names;
      for (const auto& x : verify::suites()) names += " " + x.name;
      throw std::invalid_argument("unknown suite '" + c.suite + "'; available:" + names);
    }
    chosen.push_back(s);
  }
  verify::SuiteOptions opt;
  if (c.max_n > 0) opt.max_n = c.max_n;
  json report;
  report["schema"] = io::schema;
  report["suites"] = json::array();
  bool all = true;
  for (const auto* s : chosen) {
    auto r = verify::run(*s, opt);
    all = all && r.ok();
    std::printf("%-16s %s", r.name.c_str(), r.ok() ? "PASS" : "FAIL");
    if (c.timing) std::printf(" %8.2fs", r.seconds);
    std::printf("  %s\n", r.title.c_str());
    json checks = json::array();
    for (const auto& k : r.checks) {
      if (!k.ok || c.verbose) std::printf("  %s %s\n", k.ok ? "ok  " : "FAIL", k.label.c_str());
      checks.push_back({{"label", k.label}, {"ok", k.ok}});
    }
    if (!r.error.empty()) std::printf("  error: %s\n", r.error.c_str());
    json js{{"name", r.name}, {"ok", r.ok()}, {"checks", checks}};
    if (!r.error.empty()) js["error"] = r.error;
    report["suites"].push_back(js);
  }
  report["ok"] = all;
  if (!c.emit.empty()) io::write_text(c.emit, io::dump(report));
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-associahedra, small covers and URC realization certificates"};
  app.require_subcommand(1);
  RunConfig c;
  app.add_flag("-v,--verbose", c.verbose, "Progress and per-check output");

  auto* poset = app.add_subcommand("poset", "Face poset, f/h/gamma vectors and vertex coordinates");
  poset->add_option("--graph", c.graph, "Graph JSON file or preset (path:k, cycle:k, complete:k, star:k)")->required();
  poset->add_option("--emit", c.emit, "Output file (default stdout)");

  auto* sc = app.add_subcommand("smallcover", "Small cover of a graph-associahedron");
  sc->add_option("--graph", c.graph, "Graph JSON file or preset")->required();
  sc->add_option("--lambda", c.lambda, "can, tomei, star or a lambda JSON file")->capture_default_str();
  sc->add_option("--emit", c.emit, "Write the report with the glued complex");
  sc->add_flag("--homology", c.homology, "Compute rational and Z2 homology");
  sc->add_flag("--cover", c.cover, "Build the orientation double cover instead");
  sc->add_option("--budget", c.cell_budget, "Top cell budget")->capture_default_str();

  auto* sd = app.add_subcommand("subdivide", "Coloured subdivision of an oriented pseudo-manifold");
  sd->add_option("--pseudomanifold", c.pseudomanifold, "Pseudo-manifold JSON file or preset (boundary-simplex:k, torus7, klein, rp2)")->required();
  sd->add_option("--graph", c.graph, "Graph JSON file or preset")->required();
  sd->add_option("--apex", c.apex, "auto or a vertex of the graph")->capture_default_str();
  sd->add_option("--strategy", c.strategy, "auto or lemma")->capture_default_str();
  sd->add_option("--emit", c.emit, "Output file (default stdout)");
  sd->add_flag("--certify", c.certify, "Check the colour condition on codimension-2 cells");

  auto* rz = app.add_subcommand("realize", "Covering and degree certificate");
  rz->add_option("--pseudomanifold", c.pseudomanifold, "Pseudo-manifold JSON file or preset")->required();
  rz->add_option("--graph", c.graph, "Graph JSON file or preset")->required();
  rz->add_option("--budget", c.omega_budget, "Largest Omega enumerated in full")->capture_default_str();
  rz->add_option("--closure-cap", c.closure_cap, "Cap on the total size of the involution sets")->capture_default_str();
  rz->add_option("--samples", c.samples, "Random elements checked in sampled mode")->capture_default_str();
  rz->add_option("--seed", c.seed, "Seed for sampled mode")->capture_default_str();
  rz->add_option("--apex", c.apex, "auto or a vertex of the graph")->capture_default_str();
  rz->add_option("--strategy", c.strategy, "auto or lemma")->capture_default_str();
  rz->add_option("--emit", c.emit, "Output file (default stdout)");

  auto* fm = app.add_subcommand("formulas", "Closed-form Betti numbers as CSV");
  fm->add_option("--family", c.family, "tomei, hessenberg or as")->required();
  fm->add_option("--n", c.n, "Dimension")->required();
  fm->add_option("--emit", c.emit, "Output file (default stdout)");

  auto* vf = app.add_subcommand("verify", "Run verification suites");
  vf->add_option("--suite", c.suite, "Suite name or all")->capture_default_str();
  vf->add_option("--max-n", c.max_n, "Upper bound on the dimension");
  vf->add_option("--emit", c.emit, "Write a JSON report");
  vf->add_flag("--timing", c.timing, "Print run times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (*poset) return cmd_poset(c);
    if (*sc) return cmd_smallcover(c);
    if (*sd) return cmd_subdivide(c);
    if (*rz) return cmd_realize(c);
    if (*fm) return cmd_formulas(c);
    if (*vf) return cmd_verify(c);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
