#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "axmap/errors.hpp"
#include "axmap/rng.hpp"

namespace axmap {

// Square matrix of LAP cost coefficients, row-major.
struct LapMatrix {
  int n = 0;
  std::vector<double> values;

  LapMatrix() = default;
  LapMatrix(int n_, std::vector<double> v) : n(n_), values(std::move(v)) {}
  static LapMatrix zeros(int n_) {
    return LapMatrix(n_, std::vector<double>(std::size_t(n_) * std::size_t(n_)));
  }
  double at(int i, int j) const { return values[std::size_t(i) * n + j]; }
  double& at(int i, int j) { return values[std::size_t(i) * n + j]; }
};

struct LapSolution {
  Perm perm;     // row i is assigned column perm[i]
  double value;  // sum of matrix entries on the matched cells, row order
};

namespace detail {

// Shortest augmenting path with dual potentials (u, v); O(n^3).
// On return rows[j] holds the row matched to column j, and the duals are
// feasible: cost[i][j] - u[i] - v[j] >= 0 (up to roundoff) for all i, j.
inline void lap_sap(const LapMatrix& m, std::vector<int>& rows,
                    std::vector<double>& u, std::vector<double>& v) {
  const int n = m.n;
  const double inf = std::numeric_limits<double>::infinity();
  u.assign(std::size_t(n) + 1, 0.0);
  v.assign(std::size_t(n) + 1, 0.0);
  rows.assign(std::size_t(n) + 1, 0);  // 1-based internally, 0 = unmatched
  std::vector<int> way(std::size_t(n) + 1, 0);
  std::vector<double> minv(std::size_t(n) + 1);
  std::vector<char> used(std::size_t(n) + 1);
  for (int i = 1; i <= n; ++i) {
    rows[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = rows[j0];
      double delta = inf;
      int j1 = 0;
      const double* row = &m.values[std::size_t(i0 - 1) * n];
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[rows[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (rows[j0] != 0);
    do {
      const int j1 = way[j0];
      rows[j0] = rows[j1];
      j0 = j1;
    } while (j0 != 0);
  }
}

// Kuhn augmenting step over the tight-edge graph, avoiding pinned columns.
inline bool tight_augment(int row, const std::vector<std::vector<int>>& tight,
                          const std::vector<char>& pinned_col,
                          std::vector<int>& match_row, std::vector<int>& match_col,
                          std::vector<char>& visited) {
  for (int j : tight[std::size_t(row)]) {
    if (pinned_col[std::size_t(j)] || visited[std::size_t(j)]) continue;
    visited[std::size_t(j)] = 1;
    if (match_col[std::size_t(j)] < 0 ||
        tight_augment(match_col[std::size_t(j)], tight, pinned_col, match_row,
                      match_col, visited)) {
      match_row[std::size_t(row)] = j;
      match_col[std::size_t(j)] = row;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Exact LAP minimizer. Entries may be negative. Among all optimal
// permutations, returns the lexicographically smallest one (the optimal set
// is exactly the perfect matchings of the zero-reduced-cost graph of any
// optimal dual, so the refinement never leaves the optimal face).
inline LapSolution solve_lap(const LapMatrix& m) {
  const int n = m.n;
  if (n == 0) throw ValidationError("LAP matrix is empty");
  if (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != m.values.size())
    throw ValidationError("LAP matrix is not square");

  std::vector<int> rows;
  std::vector<double> u, v;
  detail::lap_sap(m, rows, u, v);

  std::vector<int> match_row(std::size_t(n), -1), match_col(std::size_t(n), -1);
  for (int j = 1; j <= n; ++j) {
    match_row[std::size_t(rows[j] - 1)] = j - 1;
    match_col[std::size_t(j - 1)] = rows[j] - 1;
  }

  // Tight edges w.r.t. the optimal duals, with a scale-relative tolerance for
  // accumulated roundoff.
  double scale = 1.0;
  for (double x : m.values) scale = std::max(scale, std::abs(x));
  const double tol = 1e-9 * scale;
  std::vector<std::vector<int>> tight(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(m.at(i, j) - u[std::size_t(i) + 1] - v[std::size_t(j) + 1]) <= tol)
        tight[std::size_t(i)].push_back(j);

  // Lexicographic refinement: fix rows in order, trying each smaller tight
  // column and keeping it when the remainder still matches perfectly.
  std::vector<char> pinned_col(std::size_t(n), 0);
  std::vector<char> visited(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j : tight[std::size_t(i)]) {
      if (j >= match_row[std::size_t(i)]) break;  // tight lists are ascending
      if (pinned_col[std::size_t(j)]) continue;
      const int displaced = match_col[std::size_t(j)];
      const int old = match_row[std::size_t(i)];
      match_row[std::size_t(i)] = j;
      match_col[std::size_t(j)] = i;
      match_row[std::size_t(displaced)] = -1;
      match_col[std::size_t(old)] = -1;
      std::fill(visited.begin(), visited.end(), 0);
      visited[std::size_t(j)] = 1;
      if (detail::tight_augment(displaced, tight, pinned_col, match_row,
                                match_col, visited)) {
        break;
      }
      match_row[std::size_t(displaced)] = j;
      match_col[std::size_t(j)] = displaced;
      match_row[std::size_t(i)] = old;
      match_col[std::size_t(old)] = i;
    }
    pinned_col[std::size_t(match_row[std::size_t(i)])] = 1;
  }

  LapSolution sol;
  sol.perm.assign(match_row.begin(), match_row.end());
  sol.value = 0.0;
  for (int i = 0; i < n; ++i) sol.value += m.at(i, sol.perm[std::size_t(i)]);
  return sol;
}

}  // namespace axmap
