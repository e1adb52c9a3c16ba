// One line per acceptance criterion. Exit status is the number of failed criteria.

#include <cstdio>
#include <string>
#include <vector>

#include "nestotope/verify.hpp"
#include "oracles.hpp"

using namespace nestotope;

namespace {

struct Criterion {
  int id;
  const char* suite;
  double limit_seconds;
};

std::vector<std::pair<int, int>> edge_list(const Graph& g) { return g.edges(); }

/// Cross-checks against the test oracles, recorded into the suite report.
void oracle_checks(int id, verify::SuiteReport& r) {
  if (id == 1) {
    for (int n = 1; n <= 8; ++n) {
      const auto path = oracle::connected_subsets(n + 1, edge_list(Graph::path(n + 1))).size() - 1;
      r.check(path == graph_building_set(Graph::path(n + 1)).proper_tubes().size(), "oracle: path n=" + std::to_string(n));
    }
  } else if (id == 2) {
    for (int n = 1; n <= 6; ++n) {
      auto h = face_vectors(face_poset(graph_building_set(Graph::path(n + 1)))).h;
      bool ok = true;
      for (int i = 0; i <= n; ++i) ok = ok && h[i] == oracle::narayana(n, i);
      r.check(ok, "oracle: Narayana n=" + std::to_string(n));
    }
    for (int n = 1; n <= 5; ++n)
      r.check(face_vectors(face_poset(graph_building_set(Graph::complete(n + 1)))).h == oracle::eulerian_row(n + 1),
              "oracle: Eulerian n=" + std::to_string(n));
  } else if (id == 14) {
    bool ok = true;
    for (int m = 1; m <= 8; ++m) {
      auto row = eulerian_row(m);
      auto ref = oracle::eulerian_row(m);
      for (int k = 0; k < m; ++k) ok = ok && row[k] == ref[k];
    }
    r.check(ok, "oracle: Eulerian rows m <= 8");
    ok = true;
    for (int m = 0; m <= 9; ++m) ok = ok && zigzag(m) == oracle::alternating_count(m);
    r.check(ok, "oracle: zigzag m <= 9");
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "facet-counts", 1},      {2, "h-vectors", 10},       {3, "bv-inequality", 120},  {4, "minkowski", 30},
      {5, "pi-degree", 60},        {6, "h-vs-z2betti", 300},   {7, "tomei", 300},          {8, "pentagon-tower", 60},
      {9, "hessenberg", 60},       {10, "orientability", 300}, {11, "lemma", 60},          {12, "condition-star", 120},
      {13, "realization", 600},    {14, "closed-forms", 60},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto r = verify::run(*verify::find_suite(c.suite));
    oracle_checks(c.id, r);
    const bool in_time = r.seconds <= c.limit_seconds;
    const bool pass = r.ok() && in_time;
    failed += !pass;
    std::string detail;
    if (!r.error.empty()) {
      detail = "error: " + r.error;
    } else if (!r.ok()) {
      for (const auto& k : r.checks)
        if (!k.ok) {
          detail = "failed: " + k.label;
          break;
        }
      if (r.failures() > 1) detail += " (+" + std::to_string(r.failures() - 1) + " more)";
    } else if (!in_time) {
      detail = "over time limit";
    } else {
      detail = std::to_string(r.checks.size()) + " checks";
    }
    std::printf("criterion %2d %-16s %s %8.2fs / %4.0fs  %s\n", c.id, c.suite, pass ? "PASS" : "FAIL", r.seconds, c.limit_seconds,
                detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
