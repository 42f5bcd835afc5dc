#pragma once

// Dense two-phase primal simplex over an ordered field.
//
//   maximize c^T z   subject to   rows (<=, >=, =),   z >= 0
//
// Pivoting uses Bland's smallest-index rule for both the entering column and
// ties in the ratio test, so a given program always follows the same pivot
// sequence and cannot cycle.

#include "domreg/exactfield.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace domreg {

enum class RowSense { LessEqual, GreaterEqual, Equal };

template <OrderedField F>
struct LpRow {
  std::vector<F> coeffs;
  RowSense sense = RowSense::LessEqual;
  F rhs{0};
};

template <OrderedField F>
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<LpRow<F>> rows;
  std::vector<F> objective;  // maximized; empty means the zero objective

  void add_row(std::vector<F> coeffs, RowSense sense, F rhs) {
    if (coeffs.size() != num_vars)
      throw std::invalid_argument("LinearProgram: row length mismatch");
    rows.push_back({std::move(coeffs), sense, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <OrderedField F>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<F> x;
  F value{0};
};

namespace detail {

template <OrderedField F>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cells_(rows, std::vector<F>(cols + 1, F(0))), basis_(rows, 0) {}

  std::size_t rows() const { return cells_.size(); }
  std::size_t cols() const { return cells_.empty() ? 0 : cells_[0].size() - 1; }
  F& at(std::size_t r, std::size_t c) { return cells_[r][c]; }
  const F& at(std::size_t r, std::size_t c) const { return cells_[r][c]; }
  F& rhs(std::size_t r) { return cells_[r].back(); }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t basic(std::size_t r) const { return basis_[r]; }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = cells_[r];
    F p = prow[c];
    for (auto& v : prow) v = v / p;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (i == r || sign(cells_[i][c]) == 0) continue;
      F f = cells_[i][c];
      for (std::size_t j = 0; j < prow.size(); ++j)
        if (sign(prow[j]) != 0) cells_[i][j] = cells_[i][j] - f * prow[j];
    }
    basis_[r] = c;
  }

  void erase_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  // Maximizes cost^T z over the current basic feasible solution using only
  // columns flagged in `allowed`. Returns false when unbounded.
  bool optimize(const std::vector<F>& cost, const std::vector<bool>& allowed) {
    const std::size_t n = cols();
    std::vector<F> reduced(n, F(0));
    for (std::size_t j = 0; j < n; ++j) {
      F d = cost[j];
      for (std::size_t i = 0; i < rows(); ++i)
        if (sign(cells_[i][j]) != 0) d = d - cost[basis_[i]] * cells_[i][j];
      reduced[j] = d;
    }
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < n && !enter; ++j)
        if (allowed[j] && sign(reduced[j]) > 0) enter = j;
      if (!enter) return true;

      std::optional<std::size_t> leave;
      F best{0};
      for (std::size_t i = 0; i < rows(); ++i) {
        if (sign(cells_[i][*enter]) <= 0) continue;
        F ratio = cells_[i].back() / cells_[i][*enter];
        int cmp = leave ? sign(ratio - best) : -1;
        if (!leave || cmp < 0 || (cmp == 0 && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;

      pivot(*leave, *enter);
      F d = reduced[*enter];
      const auto& prow = cells_[*leave];
      for (std::size_t j = 0; j < n; ++j)
        if (sign(prow[j]) != 0) reduced[j] = reduced[j] - d * prow[j];
    }
  }

  F value(const std::vector<F>& cost) const {
    F v{0};
    for (std::size_t i = 0; i < rows(); ++i)
      v = v + cost[basis_[i]] * cells_[i].back();
    return v;
  }

 private:
  std::vector<std::vector<F>> cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

template <OrderedField F>
LpSolution<F> solve_lp(const LinearProgram<F>& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  if (!lp.objective.empty() && lp.objective.size() != n)
    throw std::invalid_argument("solve_lp: objective length mismatch");

  // Normalize to nonnegative right-hand sides.
  std::vector<LpRow<F>> rows = lp.rows;
  for (auto& row : rows) {
    if (row.coeffs.size() != n)
      throw std::invalid_argument("solve_lp: row length mismatch");
    if (sign(row.rhs) < 0) {
      for (auto& c : row.coeffs) c = -c;
      row.rhs = -row.rhs;
      if (row.sense == RowSense::LessEqual) row.sense = RowSense::GreaterEqual;
      else if (row.sense == RowSense::GreaterEqual) row.sense = RowSense::LessEqual;
    }
  }

  // Column layout: structural | slack/surplus | artificial.
  std::size_t num_slack = 0, num_art = 0;
  for (const auto& row : rows) {
    if (row.sense != RowSense::Equal) ++num_slack;
    if (row.sense != RowSense::LessEqual) ++num_art;
  }
  const std::size_t art_begin = n + num_slack;
  const std::size_t total = art_begin + num_art;

  detail::Tableau<F> tab(m, total);
  std::size_t next_slack = n, next_art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = rows[i].coeffs[j];
    tab.rhs(i) = rows[i].rhs;
    switch (rows[i].sense) {
      case RowSense::LessEqual:
        tab.at(i, next_slack) = F(1);
        tab.basic(i) = next_slack++;
        break;
      case RowSense::GreaterEqual:
        tab.at(i, next_slack++) = F(-1);
        tab.at(i, next_art) = F(1);
        tab.basic(i) = next_art++;
        break;
      case RowSense::Equal:
        tab.at(i, next_art) = F(1);
        tab.basic(i) = next_art++;
        break;
    }
  }

  std::vector<bool> allowed(total, true);
  if (num_art > 0) {
    std::vector<F> phase1(total, F(0));
    for (std::size_t j = art_begin; j < total; ++j) phase1[j] = F(-1);
    tab.optimize(phase1, allowed);
    if (sign(tab.value(phase1)) < 0) return {LpStatus::Infeasible, {}, F(0)};

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t i = tab.rows(); i-- > 0;) {
      if (tab.basic(i) < art_begin) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art_begin && !col; ++j)
        if (sign(tab.at(i, j)) != 0) col = j;
      if (col) tab.pivot(i, *col);
      else tab.erase_row(i);
    }
    for (std::size_t j = art_begin; j < total; ++j) allowed[j] = false;
  }

  std::vector<F> cost(total, F(0));
  for (std::size_t j = 0; j < lp.objective.size(); ++j) cost[j] = lp.objective[j];
  if (!tab.optimize(cost, allowed)) return {LpStatus::Unbounded, {}, F(0)};

  LpSolution<F> sol;
  sol.status = LpStatus::Optimal;
  sol.x.assign(n, F(0));
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basic(i) < n) sol.x[tab.basic(i)] = tab.rhs(i);
  sol.value = F(0);
  for (std::size_t j = 0; j < lp.objective.size(); ++j)
    sol.value = sol.value + lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace domreg
