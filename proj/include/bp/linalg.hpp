#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bp/scalar.hpp"

namespace bp::linalg {

template <class F>
using Row = std::vector<F>;

/// Reduced row echelon form in place; zero rows are dropped. Returns the pivot
/// column of each remaining row.
template <class F>
std::vector<std::size_t> rref(std::vector<Row<F>>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && is_zero(rows[sel][c])) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const F inv = F(1) / rows[r][c];
    for (std::size_t j = c; j < ncols; ++j)
      if (!is_zero(rows[r][j])) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || is_zero(rows[i][c])) continue;
      const F f = rows[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!is_zero(rows[r][j])) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Basis of {x : A x = 0} for A given by rows, each of length ncols.
template <class F>
std::vector<Row<F>> kernel(std::vector<Row<F>> rows, std::size_t ncols) {
  const auto pivots = rref(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Row<F>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Row<F> v(ncols, F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace bp::linalg
