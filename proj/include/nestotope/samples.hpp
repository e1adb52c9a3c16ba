#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellcomplex.hpp"

namespace nestotope {

/// Pseudo-manifold given by vertex-labelled top cells.
struct VertexListComplex {
  int dim = 0;
  std::vector<std::vector<int>> top_cells;
  std::optional<std::vector<int>> orientation;

  SimplicialCellComplex build(std::vector<int>* sort_signs = nullptr) const {
    return SimplicialCellComplex::from_top_vertices(dim, top_cells, sort_signs);
  }
};

/// Boundary of the k-simplex on vertices 0..k.
inline VertexListComplex boundary_simplex(int k) {
  if (k < 1 || k > 12) throw std::invalid_argument("boundary simplex dimension out of range");
  VertexListComplex z;
  z.dim = k - 1;
  for (int skip = 0; skip <= k; ++skip) {
    std::vector<int> cell;
    for (int v = 0; v <= k; ++v)
      if (v != skip) cell.push_back(v);
    z.top_cells.push_back(cell);
  }
  return z;
}

/// Seven-vertex torus.
inline VertexListComplex torus7() {
  VertexListComplex z;
  z.dim = 2;
  for (int i = 0; i < 7; ++i) {
    z.top_cells.push_back({i, (i + 1) % 7, (i + 3) % 7});
    z.top_cells.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return z;
}

/// Six-vertex real projective plane.
inline VertexListComplex rp2_6() {
  return {2, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1}, {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}}, std::nullopt};
}

/// Klein bottle from a 4x4 grid: columns periodic, rows glued with a reflection.
inline VertexListComplex klein_bottle() {
  const int a = 4, b = 4;
  auto id = [&](int i, int j) {
    i = ((i % a) + a) % a;
    if (j == b) {
      j = 0;
      i = (a - i) % a;
    }
    return j * a + i;
  };
  VertexListComplex z;
  z.dim = 2;
  for (int j = 0; j < b; ++j)
    for (int i = 0; i < a; ++i) {
      z.top_cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      z.top_cells.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
    }
  return z;
}

/// Disjoint union of two copies.
inline VertexListComplex disjoint_union(const VertexListComplex& x, const VertexListComplex& y) {
  if (x.dim != y.dim) throw std::invalid_argument("disjoint union needs equal dimensions");
  int shift = 0;
  for (const auto& c : x.top_cells)
    for (int v : c) shift = std::max(shift, v + 1);
  VertexListComplex z = x;
  z.orientation.reset();
  for (auto c : y.top_cells) {
    for (int& v : c) v += shift;
    z.top_cells.push_back(c);
  }
  return z;
}

/// Named pseudo-manifold presets: boundary-simplex:k, torus7, klein, rp2.
inline VertexListComplex pseudomanifold_preset(const std::string& name) {
  if (name == "torus7") return torus7();
  if (name == "klein") return klein_bottle();
  if (name == "rp2") return rp2_6();
  const std::string prefix = "boundary-simplex:";
  if (name.rfind(prefix, 0) == 0) return boundary_simplex(std::stoi(name.substr(prefix.size())));
  throw std::invalid_argument("unknown pseudo-manifold preset '" + name + "'");
}

}  // namespace nestotope
