#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dva/exactfield.hpp"

namespace dva {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
Matrix<F> zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix<F>(rows, std::vector<F>(cols, F(0)));
}

template <class F>
Matrix<F> identity_matrix(std::size_t n) {
  Matrix<F> m = zero_matrix<F>(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = F(1);
  return m;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& a) {
  if (a.empty()) return {};
  Matrix<F> t = zero_matrix<F>(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

template <class F>
Matrix<F> matmul(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix<F> c = zero_matrix<F>(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!is_zero(b[l][j])) c[i][j] = c[i][j] + a[i][l] * b[l][j];
    }
  return c;
}

template <class F>
bool is_zero_matrix(const Matrix<F>& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!is_zero(x)) return false;
  return true;
}

// Row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> row_reduce(Matrix<F>& a, F* det_sign_and_pivots = nullptr) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  F det(1);
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!is_zero(a[i][c])) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      det = F(0) - det;
    }
    F inv = F(1) / a[r][c];
    det = det * a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      F f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!is_zero(a[r][j])) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  if (det_sign_and_pivots) *det_sign_and_pivots = det;
  return pivots;
}

template <class F>
F determinant(Matrix<F> a) {
  if (a.empty()) return F(1);
  if (a.size() != a[0].size()) throw std::invalid_argument("determinant of a non-square matrix");
  F d(0);
  auto piv = row_reduce(a, &d);
  if (piv.size() < a.size()) return F(0);
  return d;
}

template <class F>
std::size_t rank(Matrix<F> a) {
  return row_reduce(a).size();
}

template <class F>
Matrix<F> inverse(const Matrix<F>& a) {
  std::size_t n = a.size();
  Matrix<F> aug = zero_matrix<F>(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = F(1);
  }
  auto piv = row_reduce(aug);
  if (piv.size() < n || (n && piv[n - 1] >= n)) throw DivisionByZero("singular matrix");
  Matrix<F> inv = zero_matrix<F>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// Solve a x = b for one solution if it exists.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  Matrix<F> aug = zero_matrix<F>(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  auto piv = row_reduce(aug);
  std::vector<F> x(cols, F(0));
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == cols) return std::nullopt;
    x[piv[r]] = aug[r][cols];
  }
  return x;
}

// Unit upper/lower triangular inverse by substitution (no divisions).
template <class F>
Matrix<F> unitriangular_inverse(const Matrix<F>& a) {
  std::size_t n = a.size();
  Matrix<F> inv = identity_matrix<F>(n);
  // Solve a * inv = I column by column with a general triangular sweep.
  bool upper = true;
  for (std::size_t i = 0; i < n && upper; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!is_zero(a[i][j])) upper = false;
  if (upper) {
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = n; i-- > 0;) {
        F s = i == c ? F(1) : F(0);
        for (std::size_t k = i + 1; k < n; ++k)
          if (!is_zero(a[i][k])) s = s - a[i][k] * inv[k][c];
        inv[i][c] = s;
      }
    return inv;
  }
  return transpose(unitriangular_inverse(transpose(a)));
}

}  // namespace dva
