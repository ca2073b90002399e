#pragma once

// Slow, independent reference computations used only by the tests.

#include <random>
#include <vector>

#include "twsusp/intlat.hpp"

namespace oracle {

using twsusp::IntMatrix;
using twsusp::Integer;
using twsusp::IntVector;

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = dist(rng);
  return a;
}

// Laplace expansion along the first row.
inline Integer cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    Integer term = a(0, j) * cofactor_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// d_k / d_{k-1}, where d_k is the gcd of all k x k minors.
inline IntVector invariant_factors_by_minors(const IntMatrix& a) {
  const std::size_t m = std::min(a.rows(), a.cols());
  IntVector factors;
  Integer prev = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(a.rows(), k, 0, cur, rs);
    subsets(a.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(r[i], c[j]);
        Integer d = cofactor_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) {
      factors.resize(m, 0);
      return factors;
    }
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

}  // namespace oracle

namespace oracle {

// Gaussian elimination over the rationals.
inline Integer rational_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det.get_num();
}

}  // namespace oracle
