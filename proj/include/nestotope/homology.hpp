#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cellcomplex.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace nestotope {

/// Sparse integer matrix stored by rows; entries sorted by column.
struct SparseIntMatrix {
  struct Entry {
    std::int32_t col;
    std::int64_t val;
  };
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<Entry>> row;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row(r) {}

  static SparseIntMatrix from_dense(const std::vector<std::vector<long long>>& d) {
    SparseIntMatrix m(d.size(), d.empty() ? 0 : d[0].size());
    for (std::size_t r = 0; r < d.size(); ++r)
      for (std::size_t c = 0; c < d[r].size(); ++c)
        if (d[r][c] != 0) m.row[r].push_back({static_cast<std::int32_t>(c), d[r][c]});
    return m;
  }

  /// Adds v to entry (r, c); call normalize() afterwards.
  void add(std::size_t r, std::size_t c, std::int64_t v) { row[r].push_back({static_cast<std::int32_t>(c), v}); }

  void normalize() {
    for (auto& rw : row) {
      std::sort(rw.begin(), rw.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
      std::vector<Entry> merged;
      for (const auto& e : rw) {
        if (!merged.empty() && merged.back().col == e.col)
          merged.back().val += e.val;
        else
          merged.push_back(e);
      }
      std::erase_if(merged, [](const Entry& e) { return e.val == 0; });
      rw = std::move(merged);
    }
  }
};

struct SmithResult {
  std::size_t rank = 0;
  /// Elementary divisors greater than one, in divisibility order; the other rank - size() are 1.
  std::vector<BigInt> divisors;

  std::vector<BigInt> all_divisors() const {
    std::vector<BigInt> out(rank - divisors.size(), BigInt(1));
    out.insert(out.end(), divisors.begin(), divisors.end());
    return out;
  }
};

namespace detail {

/// Dense Smith normal form; returns the nonzero diagonal in divisibility order.
inline std::vector<BigInt> dense_smith_diagonal(std::vector<std::vector<BigInt>> a) {
  const std::size_t R = a.size(), C = R ? a[0].size() : 0;
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      std::size_t pr = R, pc = C;
      for (std::size_t r = t; r < R; ++r)
        for (std::size_t c = t; c < C; ++c)
          if (a[r][c] != 0 && (pr == R || abs(a[r][c]) < abs(a[pr][pc]))) {
            pr = r;
            pc = c;
          }
      if (pr == R) return diag;
      std::swap(a[t], a[pr]);
      for (auto& rw : a) std::swap(rw[t], rw[pc]);
      bool clean = true;
      for (std::size_t r = t + 1; r < R; ++r) {
        if (a[r][t] == 0) continue;
        BigInt q = a[r][t] / a[t][t];
        for (std::size_t c = t; c < C; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        if (a[t][c] == 0) continue;
        BigInt q = a[t][c] / a[t][t];
        for (std::size_t r = t; r < R; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t r = t + 1; r < R && divides; ++r)
        for (std::size_t c = t + 1; c < C; ++c)
          if (a[r][c] % a[t][t] != 0) {
            for (std::size_t k = t; k < C; ++k) a[t][k] += a[r][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

inline std::int64_t checked_fma(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t prod, sum;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum))
    throw BudgetExceeded("integer entry growth exceeds 64 bits during elimination");
  return sum;
}

/// Sparse elimination with unit pivots chosen by smallest column then row length. Over GF(2)
/// when mod2 is set. Leaves the Schur complement of the eliminated block in `rest`.
inline std::size_t sparse_unit_elimination(SparseIntMatrix m, bool mod2, std::vector<std::vector<BigInt>>* rest,
                                           std::size_t dense_limit) {
  using Entry = SparseIntMatrix::Entry;
  auto& rows = m.row;
  if (mod2)
    for (auto& rw : rows) {
      for (auto& e : rw) e.val &= 1;
      std::erase_if(rw, [](const Entry& e) { return e.val == 0; });
    }
  std::vector<std::vector<std::int32_t>> col_rows(m.cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& e : rows[r]) col_rows[e.col].push_back(static_cast<std::int32_t>(r));
  std::vector<char> row_alive(rows.size(), 1), col_alive(m.cols, 1);
  auto value_at = [&](std::size_t r, std::int32_t c) -> std::int64_t {
    const auto& rw = rows[r];
    auto it = std::lower_bound(rw.begin(), rw.end(), c, [](const Entry& e, std::int32_t x) { return e.col < x; });
    return (it != rw.end() && it->col == c) ? it->val : 0;
  };
  auto clean = [&](std::int32_t c) {
    auto& cr = col_rows[c];
    std::sort(cr.begin(), cr.end());
    cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
    std::erase_if(cr, [&](std::int32_t r) { return !row_alive[r] || value_at(r, c) == 0; });
  };
  using Item = std::pair<std::size_t, std::int32_t>;
  std::size_t rank = 0;
  std::vector<Entry> merged;
  std::vector<std::int32_t> pending;
  for (std::size_t c = 0; c < m.cols; ++c) pending.push_back(static_cast<std::int32_t>(c));
  bool progress = true;
  while (progress && !pending.empty()) {
    progress = false;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (auto c : pending) heap.emplace(col_rows[c].size(), c);
    pending.clear();
    while (!heap.empty()) {
      auto [cnt, c] = heap.top();
      heap.pop();
      if (!col_alive[c]) continue;
      clean(c);
      if (col_rows[c].size() != cnt) {
        heap.emplace(col_rows[c].size(), c);
        continue;
      }
      if (cnt == 0) {
        col_alive[c] = 0;
        continue;
      }
      std::int32_t pr = -1;
      for (auto r : col_rows[c]) {
        const auto v = value_at(r, c);
        if ((v == 1 || v == -1) && (pr < 0 || rows[r].size() < rows[pr].size())) pr = r;
      }
      if (pr < 0) {
        pending.push_back(c);
        continue;
      }
      const std::int64_t u = value_at(pr, c);
      const auto& prow = rows[pr];
      for (auto r2 : col_rows[c]) {
        if (r2 == pr) continue;
        const std::int64_t f = -value_at(r2, c) * u;
        auto& rw = rows[r2];
        merged.clear();
        std::size_t i = 0, j = 0;
        while (i < rw.size() || j < prow.size()) {
          if (j == prow.size() || (i < rw.size() && rw[i].col < prow[j].col)) {
            merged.push_back(rw[i++]);
          } else if (i == rw.size() || prow[j].col < rw[i].col) {
            std::int64_t v = mod2 ? 1 : checked_fma(0, f, prow[j].val);
            col_rows[prow[j].col].push_back(r2);
            merged.push_back({prow[j++].col, v});
          } else {
            std::int64_t v = mod2 ? (rw[i].val ^ prow[j].val) : checked_fma(rw[i].val, f, prow[j].val);
            if (v != 0) merged.push_back({rw[i].col, v});
            ++i;
            ++j;
          }
        }
        rw.swap(merged);
      }
      row_alive[pr] = 0;
      col_alive[c] = 0;
      ++rank;
      progress = true;
      for (const auto& e : prow)
        if (col_alive[e.col]) heap.emplace(col_rows[e.col].size(), e.col);
    }
  }
  if (rest) {
    rest->clear();
    std::vector<std::int32_t> cols;
    for (auto c : pending)
      if (col_alive[c]) {
        clean(c);
        if (!col_rows[c].empty()) cols.push_back(c);
      }
    std::sort(cols.begin(), cols.end());
    std::vector<std::int32_t> live_rows;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (row_alive[r]) {
        bool any = false;
        for (const auto& e : rows[r])
          if (col_alive[e.col]) any = true;
        if (any) live_rows.push_back(static_cast<std::int32_t>(r));
      }
    if (live_rows.size() * cols.size() > dense_limit)
      throw BudgetExceeded("dense Smith block of " + std::to_string(live_rows.size()) + "x" + std::to_string(cols.size()) +
                           " exceeds the limit");
    for (auto r : live_rows) {
      std::vector<BigInt> d(cols.size());
      for (std::size_t k = 0; k < cols.size(); ++k) d[k] = value_at(r, cols[k]);
      rest->push_back(std::move(d));
    }
  }
  return rank;
}

}  // namespace detail

/// Rank and elementary divisors: unit pivots are eliminated sparsely, then the remaining
/// block gets a dense big-integer Smith form.
inline SmithResult smith_normal_form(SparseIntMatrix m, std::size_t dense_limit = 4'000'000) {
  m.normalize();
  std::vector<std::vector<BigInt>> rest;
  SmithResult out;
  out.rank = detail::sparse_unit_elimination(std::move(m), false, &rest, dense_limit);
  for (auto& d : detail::dense_smith_diagonal(std::move(rest))) {
    ++out.rank;
    if (d != 1) out.divisors.push_back(d);
  }
  return out;
}

inline std::size_t gf2_matrix_rank(SparseIntMatrix m) {
  m.normalize();
  return detail::sparse_unit_elimination(std::move(m), true, nullptr, 0);
}

/// Boundary map from k-cells (columns) to (k-1)-cells (rows), signs (-1)^i by slot.
inline SparseIntMatrix boundary_matrix(const SimplicialCellComplex& c, int k) {
  SparseIntMatrix m(c.count(k - 1), c.count(k));
  for (std::size_t id = 0; id < c.count(k); ++id) {
    auto f = c.faces(k, static_cast<CellId>(id));
    for (int i = 0; i <= k; ++i) m.add(f[i], id, i % 2 ? -1 : 1);
  }
  m.normalize();
  return m;
}

struct HomologyOptions {
  bool rational = true;  // integer elimination: rational Betti numbers and torsion
  bool z2 = true;
  std::size_t cell_budget = 200'000;
};

struct HomologyProfile {
  std::vector<long long> betti_q;
  std::vector<long long> betti_z2;
  /// torsion[k]: elementary divisors > 1 of H_k.
  std::vector<std::vector<BigInt>> torsion;
  bool euler_ok = true;

  long long total_q() const {
    long long s = 0;
    for (auto b : betti_q) s += b;
    return s;
  }
};

inline HomologyProfile homology(const SimplicialCellComplex& c, const HomologyOptions& opt = {}) {
  const int n = c.dim();
  if (opt.rational && c.total_cells() > opt.cell_budget)
    throw BudgetExceeded("complex has " + std::to_string(c.total_cells()) + " cells, above the integer homology budget of " +
                         std::to_string(opt.cell_budget));
  HomologyProfile h;
  const long long chi = euler_characteristic(c);
  auto bettis = [&](const std::vector<std::size_t>& rk) {
    std::vector<long long> b(n + 1);
    for (int k = 0; k <= n; ++k)
      b[k] = static_cast<long long>(c.count(k)) - static_cast<long long>(rk[k]) - static_cast<long long>(k < n ? rk[k + 1] : 0);
    long long alt = 0;
    for (int k = 0; k <= n; ++k) alt += (k % 2 ? -1 : 1) * b[k];
    if (alt != chi) h.euler_ok = false;
    return b;
  };
  if (opt.rational) {
    std::vector<std::size_t> rk(n + 1, 0);
    h.torsion.assign(n + 1, {});
    for (int k = 1; k <= n; ++k) {
      SmithResult s = smith_normal_form(boundary_matrix(c, k));
      rk[k] = s.rank;
      h.torsion[k - 1] = s.divisors;
    }
    h.betti_q = bettis(rk);
  }
  if (opt.z2) {
    std::vector<std::size_t> rk(n + 1, 0);
    for (int k = 1; k <= n; ++k) rk[k] = gf2_matrix_rank(boundary_matrix(c, k));
    h.betti_z2 = bettis(rk);
  }
  return h;
}

}  // namespace nestotope
