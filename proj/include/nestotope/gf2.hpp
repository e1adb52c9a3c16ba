#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace nestotope {

/// Vector in GF(2)^k, k <= 64; bit i is the coefficient of the i-th basis vector.
using Gf2Vector = std::uint64_t;

/// Subspace of GF(2)^k kept in reduced echelon form, so `reduce` yields a canonical
/// coset representative.
class Gf2Subspace {
public:
  Gf2Subspace() = default;
  explicit Gf2Subspace(const std::vector<Gf2Vector>& gens) {
    for (auto g : gens) insert(g);
  }

  /// Returns true when the vector enlarged the subspace.
  bool insert(Gf2Vector v) {
    v = reduce(v);
    if (v == 0) return false;
    const int pivot = 63 - std::countl_zero(v);
    for (auto& b : basis_)
      if ((b >> pivot) & 1u) b ^= v;
    basis_.push_back(v);
    pivots_.push_back(pivot);
    return true;
  }

  /// Least element of the coset v + W with respect to the pivot order.
  Gf2Vector reduce(Gf2Vector v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if ((v >> pivots_[i]) & 1u) v ^= basis_[i];
    return v;
  }

  bool contains(Gf2Vector v) const { return reduce(v) == 0; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<Gf2Vector>& basis() const { return basis_; }

private:
  std::vector<Gf2Vector> basis_;
  std::vector<int> pivots_;
};

inline int gf2_rank(const std::vector<Gf2Vector>& vectors) { return Gf2Subspace(vectors).dimension(); }

/// Basis of the kernel of the map GF(2)^m -> GF(2)^k sending e_j to columns[j] (m <= 64).
inline std::vector<Gf2Vector> gf2_kernel(const std::vector<Gf2Vector>& columns) {
  // Row-reduce (image, preimage) pairs; preimages whose image vanishes span the kernel.
  std::vector<Gf2Vector> kernel;
  std::vector<std::pair<Gf2Vector, Gf2Vector>> by_pivot(64, {0, 0});
  for (std::size_t j = 0; j < columns.size(); ++j) {
    Gf2Vector img = columns[j], pre = Gf2Vector{1} << j;
    while (img != 0) {
      const int p = 63 - std::countl_zero(img);
      if (by_pivot[p].first == 0) break;
      img ^= by_pivot[p].first;
      pre ^= by_pivot[p].second;
    }
    if (img == 0)
      kernel.push_back(pre);
    else
      by_pivot[63 - std::countl_zero(img)] = {img, pre};
  }
  return kernel;
}

}  // namespace nestotope
