#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "homology.hpp"
#include "nestohedron.hpp"
#include "realization.hpp"
#include "samples.hpp"
#include "smallcover.hpp"

namespace nestotope::io {

using nlohmann::json;

inline constexpr const char* schema = "nestotope/1";

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

template <class T>
T get(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(what + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(what + ": field '" + std::string(key) + "' has the wrong type");
  }
}

}  // namespace detail

/// {"n_vertices": k, "edges": [[u, v], ...]}
inline Graph parse_graph(const json& j) {
  const int n = detail::get<int>(j, "n_vertices", "graph");
  if (n < 1 || n > 64) throw std::invalid_argument("graph: n_vertices must be in 1..64");
  auto edges = detail::get<std::vector<std::vector<int>>>(j, "edges", "graph");
  Graph g(n);
  for (const auto& e : edges) {
    if (e.size() != 2) throw std::invalid_argument("graph: every edge must have two endpoints");
    g.add_edge(e[0], e[1]);
  }
  return g;
}

inline json graph_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n_vertices", g.n_vertices()}, {"edges", edges}};
}

/// Presets path:k, cycle:k, complete:k, star:k.
inline std::optional<Graph> graph_preset(const std::string& name_arg) {
  const auto colon = name_arg.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string name = name_arg.substr(0, colon);
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(name_arg.substr(colon + 1), &used);
    if (used != name_arg.size() - colon - 1) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (k < 1 || k > 64) throw std::invalid_argument("graph preset size must be in 1..64");
  if (name == "path") return Graph::path(k);
  if (name == "cycle") return Graph::cycle(k);
  if (name == "complete") return Graph::complete(k);
  if (name == "star") return Graph::star(k);
  return std::nullopt;
}

/// A preset name or a JSON file.
inline Graph load_graph(const std::string& arg) {
  if (!std::filesystem::exists(arg))
    if (auto g = graph_preset(arg)) return *g;
  return parse_graph(read_json_file(arg));
}

/// Input pseudo-manifold, with the orientation relative to the listed vertex order.
struct PseudoManifoldInput {
  SimplicialCellComplex complex;
  std::vector<std::vector<int>> top_cells;
  std::optional<std::vector<int>> orientation;
};

/// The given orientation is coherent across every facet of the complex.
inline bool coherent_orientation(const SimplicialCellComplex& c, const std::vector<int>& slot_orientation) {
  auto cert = pseudo_manifold_check(c, c.dim());
  if (!cert.is_pseudo) return false;
  for (const auto& sides : cert.facet_incidence) {
    if (sides.size() != 2) return false;
    const int a = slot_orientation[sides[0].top] * (sides[0].slot % 2 ? -1 : 1);
    const int b = slot_orientation[sides[1].top] * (sides[1].slot % 2 ? -1 : 1);
    if (a == b) return false;
  }
  return true;
}

/// {"dim": n, "top_cells": [[v0..vn], ...], "orientation": [+-1, ...]?, "faces": [...]?}.
/// With "faces", faces[k-1][c] lists the k+1 faces of the k-cell c and top_cells is ignored
/// for the combinatorics.
inline PseudoManifoldInput parse_pseudomanifold(const json& j) {
  const int dim = detail::get<int>(j, "dim", "pseudo-manifold");
  if (dim < 0 || dim > 12) throw std::invalid_argument("pseudo-manifold: dim must be in 0..12");
  PseudoManifoldInput in;
  in.top_cells = detail::get<std::vector<std::vector<int>>>(j, "top_cells", "pseudo-manifold");
  if (in.top_cells.empty()) throw std::invalid_argument("pseudo-manifold: no top cells");
  std::vector<int> signs(in.top_cells.size(), 1);
  if (j.contains("faces")) {
    auto faces = detail::get<std::vector<std::vector<std::vector<CellId>>>>(j, "faces", "pseudo-manifold");
    if (static_cast<int>(faces.size()) != dim) throw std::invalid_argument("pseudo-manifold: faces must list dimensions 1..dim");
    std::size_t nv = 0;
    for (const auto& t : in.top_cells)
      for (int v : t) nv = std::max<std::size_t>(nv, v + 1);
    if (dim > 0 && faces[0].size()) {
      for (const auto& e : faces[0])
        for (auto v : e) nv = std::max<std::size_t>(nv, v + 1);
    }
    in.complex = SimplicialCellComplex::from_faces(nv, faces);
    if (in.complex.top_count() != in.top_cells.size()) throw std::invalid_argument("pseudo-manifold: top_cells and faces disagree");
  } else {
    for (const auto& t : in.top_cells)
      for (int v : t)
        if (v < 0) throw std::invalid_argument("pseudo-manifold: negative vertex label");
    in.complex = SimplicialCellComplex::from_top_vertices(dim, in.top_cells, &signs);
  }
  std::string why;
  if (!validate_complex(in.complex, &why)) throw std::invalid_argument("pseudo-manifold: invalid complex: " + why);
  if (j.contains("orientation")) {
    auto o = detail::get<std::vector<int>>(j, "orientation", "pseudo-manifold");
    if (o.size() != in.top_cells.size()) throw std::invalid_argument("pseudo-manifold: orientation length differs from top_cells");
    std::vector<int> slot(o.size());
    for (std::size_t t = 0; t < o.size(); ++t) {
      if (o[t] != 1 && o[t] != -1) throw std::invalid_argument("pseudo-manifold: orientation entries must be +1 or -1");
      slot[t] = o[t] * signs[t];
    }
    if (!coherent_orientation(in.complex, slot)) throw std::invalid_argument("pseudo-manifold: orientation is not coherent");
    in.orientation = std::move(o);
  }
  return in;
}

/// Presets boundary-simplex:k, torus7, klein, rp2, or a JSON file.
inline PseudoManifoldInput load_pseudomanifold(const std::string& arg) {
  if (!std::filesystem::exists(arg)) {
    std::optional<VertexListComplex> z;
    try {
      z = pseudomanifold_preset(arg);
    } catch (const std::invalid_argument&) {
    }
    if (z) {
      PseudoManifoldInput in;
      in.complex = z->build();
      in.top_cells = z->top_cells;
      return in;
    }
  }
  return parse_pseudomanifold(read_json_file(arg));
}

/// Distinct cells of every dimension have distinct vertex sets.
inline bool vertex_determined(const SimplicialCellComplex& c) {
  for (int k = 1; k <= c.dim(); ++k) {
    std::set<std::vector<CellId>> seen;
    for (std::size_t id = 0; id < c.count(k); ++id) {
      auto v = c.vertices(k, static_cast<CellId>(id));
      std::vector<CellId> s(v.begin(), v.end());
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end() || !seen.insert(s).second) return false;
    }
  }
  return true;
}

/// Same format as the input; "faces" is added when the complex is not vertex-determined.
inline json complex_json(const SimplicialCellComplex& c, const std::vector<int>* orientation = nullptr,
                         const std::vector<int>* colour = nullptr) {
  json j;
  j["dim"] = c.dim();
  json tops = json::array();
  for (std::size_t t = 0; t < c.top_count(); ++t) {
    auto v = c.vertices(c.dim(), static_cast<CellId>(t));
    tops.push_back(std::vector<CellId>(v.begin(), v.end()));
  }
  j["top_cells"] = std::move(tops);
  if (orientation) j["orientation"] = *orientation;
  if (colour) j["colour"] = *colour;
  if (!vertex_determined(c)) {
    json faces = json::array();
    for (int k = 1; k <= c.dim(); ++k) {
      json fk = json::array();
      for (std::size_t id = 0; id < c.count(k); ++id) {
        auto f = c.faces(k, static_cast<CellId>(id));
        fk.push_back(std::vector<CellId>(f.begin(), f.end()));
      }
      faces.push_back(std::move(fk));
    }
    j["faces"] = std::move(faces);
  }
  return j;
}

inline std::string tube_key(VertexSet s) {
  json a = s.members();
  return a.dump();
}

inline VertexSet parse_tube_key(const std::string& key) {
  json a;
  try {
    a = json::parse(key);
  } catch (const json::parse_error&) {
    throw std::invalid_argument("lambda: tube key '" + key + "' is not a JSON list");
  }
  if (!a.is_array()) throw std::invalid_argument("lambda: tube key '" + key + "' is not a JSON list");
  VertexSet s;
  for (const auto& v : a) {
    if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 63) throw std::invalid_argument("lambda: bad vertex in tube key '" + key + "'");
    s.insert(v.get<int>());
  }
  return s;
}

/// {"columns": {"[0,1]": [b_1, ..., b_n], ...}} with one entry per facet.
inline CharacteristicFunction parse_lambda(const json& j, const FacePoset& p) {
  if (!j.is_object() || !j.contains("columns") || !j["columns"].is_object()) throw std::invalid_argument("lambda: missing object 'columns'");
  CharacteristicFunction l;
  l.n = p.n;
  l.columns.assign(p.facet_count(), 0);
  std::vector<char> seen(p.facet_count(), 0);
  for (const auto& [key, bits] : j["columns"].items()) {
    VertexSet s = parse_tube_key(key);
    auto it = std::find(p.facets.begin(), p.facets.end(), s);
    if (it == p.facets.end()) throw std::invalid_argument("lambda: " + key + " is not a facet");
    if (!bits.is_array() || static_cast<int>(bits.size()) != p.n) throw std::invalid_argument("lambda: column " + key + " must have n entries");
    Gf2Vector col = 0;
    for (int i = 0; i < p.n; ++i) {
      if (!bits[i].is_number_integer() || (bits[i] != 0 && bits[i] != 1)) throw std::invalid_argument("lambda: entries must be 0 or 1");
      if (bits[i] == 1) col |= Gf2Vector{1} << i;
    }
    const std::size_t idx = it - p.facets.begin();
    l.columns[idx] = col;
    seen[idx] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw std::invalid_argument("lambda: every facet needs a column");
  if (!validate_characteristic(p, l)) throw std::invalid_argument("lambda: columns at some vertex are not a basis");
  return l;
}

inline json lambda_json(const FacePoset& p, const CharacteristicFunction& l) {
  json cols = json::object();
  for (std::size_t i = 0; i < p.facet_count(); ++i) {
    std::vector<int> bits(l.n);
    for (int k = 0; k < l.n; ++k) bits[k] = (l.columns[i] >> k) & 1;
    cols[tube_key(p.facets[i])] = bits;
  }
  return {{"columns", cols}};
}

inline json face_report(const BuildingSet& b, const FacePoset& p) {
  auto fv = face_vectors(p);
  json j;
  j["schema"] = schema;
  j["n"] = p.n;
  std::vector<int> dims;
  std::vector<long long> f;
  for (int d = 0; d <= p.n; ++d) {
    dims.push_back(d);
    f.push_back(static_cast<long long>(p.faces(d).size()));
  }
  j["dims"] = dims;
  j["f"] = f;
  j["h"] = fv.h;
  j["gamma"] = fv.gamma;
  json facets = json::array();
  for (auto s : p.facets) facets.push_back(s.members());
  j["facets"] = facets;
  json verts = json::array();
  for (const auto& t : p.vertices()) verts.push_back(to_strings(vertex_coordinates(b, p.tubes_of(t))));
  j["vertices"] = verts;
  return j;
}

inline json homology_json(const HomologyProfile& h) {
  json t = json::array();
  for (const auto& row : h.torsion) {
    json r = json::array();
    for (const auto& d : row) r.push_back(d.str());
    t.push_back(r);
  }
  return {{"betti_q", h.betti_q}, {"betti_z2", h.betti_z2}, {"torsion", t}};
}

inline std::string big_string(const BigInt& x) { return x.str(); }

/// Exact integers that fit are emitted as numbers, larger ones as decimal strings.
inline json big_json(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) return x.convert_to<long long>();
  return x.str();
}

inline json certificate_json(const CoveringCertificate& c) {
  json j;
  j["schema"] = schema;
  j["mode"] = c.mode;
  j["n"] = c.n;
  j["r"] = big_json(c.r);
  j["s"] = big_json(c.s);
  j["m"] = c.m;
  j["sigma_count"] = c.sigma_count;
  j["omega_size"] = big_json(c.omega_size);
  json sizes = json::object();
  for (const auto& [tube, size] : c.I_sizes) sizes[tube_key(tube)] = size;
  j["I_sizes"] = sizes;
  json checks = json::object();
  for (const auto& [name, v] : c.checks) checks[name] = v;
  j["checks"] = checks;
  json hist = json::object();
  for (const auto& [fiber, count] : c.fiber_histogram) hist[fiber.str()] = count;
  j["fiber_histogram"] = hist;
  j["omegas_checked"] = c.omegas_checked;
  if (c.mode == "sampled") j["seed"] = c.seed;
  j["pi_degree"] = c.pi_degree;
  j["degree"] = {{"plus", big_json(c.degree_plus)}, {"minus", big_json(c.degree_minus)}, {"probes", c.probes}};
  j["ok"] = c.ok();
  return j;
}

}  // namespace nestotope::io
