#pragma once

// Exact Gaussian elimination over Q or a number field. T is Rational or Scalar.

#include <torelli/scalar.hpp>

#include <optional>

namespace torelli::linalg {

inline bool is_zero_value(const Rational& x) { return x == 0; }
inline bool is_zero_value(const Scalar& x) { return x.is_zero(); }

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Row-reduces in place to reduced echelon form; returns pivot columns.
template <class T>
std::vector<std::size_t> reduce_rows(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero_value(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const T inv = T(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero_value(m[i][c])) continue;
      const T f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return reduce_rows(m).size();
}

// Coefficients c with sum_i c_i * basis[i] == target, if they exist.
template <class T>
std::optional<std::vector<T>> solve_combination(const Matrix<T>& basis, const std::vector<T>& target) {
  const std::size_t k = basis.size(), n = target.size();
  // Augmented system: columns are basis vectors, last column the target.
  Matrix<T> m(n, std::vector<T>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = basis[j][i];
    m[i][k] = target[i];
  }
  const auto piv = reduce_rows(m);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  std::vector<T> c(k, T(0));
  for (std::size_t r = 0; r < piv.size(); ++r) c[piv[r]] = m[r][k];
  return c;
}

template <class T>
T determinant(Matrix<T> m) {
  const std::size_t n = m.size();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero_value(m[p][c])) ++p;
    if (p == n) return T(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    const T inv = T(1) / m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero_value(m[i][c])) continue;
      const T f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
    }
  }
  return det;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix m(n, RatVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  const auto piv = reduce_rows(m);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

inline Matrix<Scalar> rows_of(const std::vector<FVector>& vs) {
  Matrix<Scalar> m;
  m.reserve(vs.size());
  for (const auto& v : vs) m.push_back(v.coords());
  return m;
}

inline std::size_t rank(const std::vector<FVector>& vs) { return rank(rows_of(vs)); }

inline std::optional<std::vector<Scalar>> solve_combination(const std::vector<FVector>& basis, const FVector& target) {
  return solve_combination(rows_of(basis), target.coords());
}

}  // namespace torelli::linalg
