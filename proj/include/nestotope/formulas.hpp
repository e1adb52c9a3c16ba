#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace nestotope {

using BigVector = std::vector<BigInt>;

inline BigInt big_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Row A(m, 0..m-1) of Eulerian numbers (permutations of 1..m by ascents).
inline BigVector eulerian_row(int m) {
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  BigVector row{1};
  for (int j = 2; j <= m; ++j) {
    BigVector next(j, 0);
    for (int k = 0; k < j; ++k) {
      if (k < j - 1) next[k] += (k + 1) * row[k];
      if (k > 0) next[k] += (j - k) * row[k - 1];
    }
    row = std::move(next);
  }
  return row;
}

inline BigInt eulerian(int m, int k) {
  if (k < 0 || k >= std::max(m, 1)) return 0;
  return eulerian_row(m)[k];
}

/// Euler zigzag numbers E_0..E_max by the boustrophedon triangle.
inline BigVector zigzag_row(int max) {
  BigVector e{1};
  BigVector prev{1};
  for (int m = 1; m <= max; ++m) {
    BigVector cur(m + 1, 0);
    for (int k = 1; k <= m; ++k) cur[k] = cur[k - 1] + prev[m - k];
    e.push_back(cur[m]);
    prev = std::move(cur);
  }
  return e;
}

inline BigInt zigzag(int m) { return zigzag_row(m)[m]; }

inline BigInt total(const BigVector& v) {
  BigInt s = 0;
  for (const auto& x : v) s += x;
  return s;
}

/// Rational Betti numbers of the orientation cover from those of the base.
inline BigVector eckmann_cover(const BigVector& b) {
  const std::size_t n = b.size() - 1;
  BigVector out(b.size());
  for (std::size_t i = 0; i <= n; ++i) out[i] = b[i] + b[n - i];
  return out;
}

inline BigVector betti_tomei(int n) { return eulerian_row(n + 1); }

inline BigVector betti_hessenberg(int n) {
  auto e = zigzag_row(2 * n);
  BigVector b(n + 1);
  for (int i = 0; i <= n; ++i) b[i] = big_binomial(n + 1, 2 * i) * e[2 * i];
  return b;
}

inline BigVector betti_hessenberg_cover(int n) { return eckmann_cover(betti_hessenberg(n)); }

/// The doubled sum over 0 <= i <= floor((n+1)/2).
inline BigInt hessenberg_cover_total(int n) {
  auto e = zigzag_row(n + 1);
  BigInt s = 0;
  for (int i = 0; 2 * i <= n + 1; ++i) s += big_binomial(n + 1, 2 * i) * e[2 * i];
  return 2 * s;
}

inline BigVector betti_as_can(int n) {
  BigVector b(n + 1, 0);
  for (int i = 0; i <= n && i <= (n + 1) / 2; ++i) b[i] = big_binomial(n + 1, i) - big_binomial(n + 1, i - 1);
  return b;
}

inline BigVector betti_as_can_cover(int n) { return eckmann_cover(betti_as_can(n)); }

inline BigInt as_can_cover_total(int n) { return 2 * big_binomial(n + 1, (n + 1) / 2); }

struct InequalityChain {
  int n = 0;
  BigInt as_cover, pe_cover, tomei;
  bool holds = false;
};

inline InequalityChain check_inequality_chain(int n) {
  InequalityChain c;
  c.n = n;
  c.as_cover = as_can_cover_total(n);
  c.pe_cover = hessenberg_cover_total(n);
  c.tomei = factorial(n + 1);
  c.holds = c.as_cover < c.pe_cover && c.pe_cover < c.tomei;
  return c;
}

enum class Family { Tomei, Hessenberg, As };

inline Family parse_family(const std::string& s) {
  if (s == "tomei") return Family::Tomei;
  if (s == "hessenberg") return Family::Hessenberg;
  if (s == "as") return Family::As;
  throw std::invalid_argument("unknown family '" + s + "' (expected tomei, hessenberg or as)");
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::Tomei: return "tomei";
    case Family::Hessenberg: return "hessenberg";
    case Family::As: return "as";
  }
  return {};
}

/// Columns: family,n,i,betti_q,cover_betti_q. The Tomei manifold is orientable, so its
/// cover column is empty.
inline std::string formulas_csv(Family f, int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  BigVector b, c;
  switch (f) {
    case Family::Tomei: b = betti_tomei(n); break;
    case Family::Hessenberg: b = betti_hessenberg(n); c = eckmann_cover(b); break;
    case Family::As: b = betti_as_can(n); c = eckmann_cover(b); break;
  }
  std::ostringstream out;
  out << "family,n,i,betti_q,cover_betti_q\n";
  for (int i = 0; i <= n; ++i) {
    out << family_name(f) << ',' << n << ',' << i << ',' << b[i] << ',';
    if (!c.empty()) out << c[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace nestotope
