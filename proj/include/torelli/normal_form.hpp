#pragma once

// Integer normal forms: row Hermite normal form, integer kernels, Smith
// invariant factors and fraction-free determinants.

#include <torelli/integer.hpp>

#include <algorithm>

namespace torelli::nf {

namespace detail {

// Extended gcd: g = s a + t b, g >= 0.
inline void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Floor division remainder in [0, m).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Integer div_floor(const Integer& a, const Integer& m) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return q;
}

// Rows i and j replaced by (s ri + t rj, -(b/g) ri + (a/g) rj), a unimodular step.
inline void combine_rows(IntMatrix& m, std::size_t i, std::size_t j, std::size_t c) {
  Integer g, s, t;
  const Integer a = m[i][c], b = m[j][c];
  xgcd(a, b, g, s, t);
  const Integer ag = a / g, bg = b / g;
  for (std::size_t k = 0; k < m[i].size(); ++k) {
    Integer ri = m[i][k], rj = m[j][k];
    m[i][k] = s * ri + t * rj;
    m[j][k] = ag * rj - bg * ri;
  }
}

}  // namespace detail

// Row-style HNF of the lattice spanned by the given rows: nonzero rows only,
// pivots strictly increasing to the right, pivots positive, entries above each
// pivot reduced into [0, pivot). Canonical for the spanned lattice.
inline IntMatrix hermite_rows(IntMatrix m) {
  if (m.empty()) return m;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      if (m[r][c] == 0) {
        std::swap(m[r], m[i]);
        continue;
      }
      detail::combine_rows(m, r, i, c);
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (auto& x : m[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = detail::div_floor(m[i][c], m[r][c]);
      if (q == 0) continue;
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= q * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return m;
}

// Basis (in HNF) of { x in Z^n : A x = 0 } for an m x n integer matrix A.
inline IntMatrix integer_kernel(const IntMatrix& a, std::size_t n) {
  // Row-reduce [A^T | I]; rows whose A^T part vanishes carry kernel vectors.
  const std::size_t m = a.size();
  IntMatrix aug(n, IntVector(m + n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug[i][j] = a[j][i];
    aug[i][m + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    for (std::size_t i = r + 1; i < n; ++i) {
      if (aug[i][c] == 0) continue;
      if (aug[r][c] == 0) {
        std::swap(aug[r], aug[i]);
        continue;
      }
      detail::combine_rows(aug, r, i, c);
    }
    if (aug[r][c] != 0) ++r;
  }
  IntMatrix kernel;
  for (std::size_t i = r; i < n; ++i) kernel.emplace_back(aug[i].begin() + static_cast<long>(m), aug[i].end());
  return hermite_rows(std::move(kernel));
}

// Nonzero Smith invariant factors d1 | d2 | ... of an integer matrix.
inline IntVector smith_invariants(const IntMatrix& input) {
  IntVector inv;
  IntMatrix m = hermite_rows(input);
  if (m.empty() || m[0].empty()) return inv;
  const std::size_t rows = m.size(), cols = m[0].size();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Move an entry of least magnitude to (t, t); each pass either clears
      // row and column t or leaves a strictly smaller remainder.
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (bi == rows || abs(m[i][j]) < abs(m[bi][bj]))) bi = i, bj = j;
      if (bi == rows) return inv;
      std::swap(m[t], m[bi]);
      for (auto& row : m) std::swap(row[t], row[bj]);
      const Integer p = m[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const Integer q = detail::div_floor(m[i][t], p);
        for (std::size_t k = t; k < cols; ++k) m[i][k] -= q * m[t][k];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const Integer q = detail::div_floor(m[t][j], p);
        for (std::size_t k = t; k < rows; ++k) m[k][j] -= q * m[k][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % p != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    inv.push_back(abs(m[t][t]));
  }
  return inv;
}

// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace torelli::nf
