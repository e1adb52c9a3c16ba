#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace nestotope {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Exact point; coordinates in the standard basis e_0..e_n.
using RationalPoint = std::vector<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline std::vector<std::string> to_strings(const RationalPoint& p) {
  std::vector<std::string> out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(to_string(x));
  return out;
}

/// Exact determinant by Gaussian elimination.
inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Solves a square system exactly; returns false when it is singular.
inline bool solve_linear(RationalMatrix a, std::vector<Rational> b, std::vector<Rational>& x) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

/// Orientation sign of the n-simplex with vertices `pts` (each in R^{n+1}) lying in a
/// hyperplane parallel to x_0 + ... + x_n = 0; the all-ones normal closes the frame.
inline int hyperplane_orientation(const std::vector<RationalPoint>& pts) {
  const std::size_t dim = pts.size();
  RationalMatrix m(dim, std::vector<Rational>(dim));
  for (std::size_t r = 1; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m[r - 1][c] = pts[r][c] - pts[0][c];
  for (std::size_t c = 0; c < dim; ++c) m[dim - 1][c] = 1;
  Rational d = determinant(std::move(m));
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

}  // namespace nestotope
