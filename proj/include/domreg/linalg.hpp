#pragma once

// Small dense linear algebra over an ordered field: row reduction, rank,
// affine solution sets and inverses. Sizes here never exceed a few dozen.

#include "domreg/exactfield.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace domreg {

template <OrderedField F>
using Matrix = std::vector<std::vector<F>>;

template <OrderedField F>
F dot(std::span<const F> u, std::span<const F> w) {
  if (u.size() != w.size()) throw std::invalid_argument("dot: dimension mismatch");
  F s{0};
  for (std::size_t i = 0; i < u.size(); ++i)
    if (sign(u[i]) != 0 && sign(w[i]) != 0) s = s + u[i] * w[i];
  return s;
}

template <OrderedField F>
F dot(const std::vector<F>& u, const std::vector<F>& w) {
  return dot(std::span<const F>(u), std::span<const F>(w));
}

// Reduced row echelon form in place; returns pivot columns.
template <OrderedField F>
std::vector<std::size_t> row_reduce(Matrix<F>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::optional<std::size_t> p;
    for (std::size_t i = r; i < a.size() && !p; ++i)
      if (sign(a[i][c]) != 0) p = i;
    if (!p) continue;
    std::swap(a[r], a[*p]);
    F inv = F(1) / a[r][c];
    for (auto& v : a[r]) v = v * inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sign(a[i][c]) == 0) continue;
      F f = a[i][c];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <OrderedField F>
std::size_t rank(Matrix<F> rows) {
  if (rows.empty()) return 0;
  return row_reduce(rows, rows[0].size()).size();
}

// Solution set {x0 + N y} of A x = b. Empty optional when inconsistent.
template <OrderedField F>
struct AffineSolution {
  std::vector<F> particular;
  Matrix<F> kernel;  // kernel[k] is the k-th basis vector (length n)
};

template <OrderedField F>
std::optional<AffineSolution<F>> solve_affine(const Matrix<F>& a,
                                              const std::vector<F>& b,
                                              std::size_t n) {
  Matrix<F> aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != n) throw std::invalid_argument("solve_affine: dimension mismatch");
    aug.push_back(a[i]);
    aug.back().push_back(b[i]);
  }
  auto pivots = row_reduce(aug, n);
  for (std::size_t i = pivots.size(); i < aug.size(); ++i)
    if (sign(aug[i][n]) != 0) return std::nullopt;

  AffineSolution<F> sol;
  sol.particular.assign(n, F(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    sol.particular[pivots[i]] = aug[i][n];
    is_pivot[pivots[i]] = true;
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(n, F(0));
    v[free] = F(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -aug[i][free];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

template <OrderedField F>
Matrix<F> inverse(const Matrix<F>& a) {
  const std::size_t n = a.size();
  Matrix<F> aug(n, std::vector<F>(2 * n, F(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("inverse: not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = F(1);
  }
  if (row_reduce(aug, n).size() != n) throw DivByZero();
  Matrix<F> inv(n, std::vector<F>(n, F(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

template <OrderedField F>
std::vector<F> mat_vec(const Matrix<F>& a, const std::vector<F>& x) {
  std::vector<F> out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(dot(row, x));
  return out;
}

}  // namespace domreg
