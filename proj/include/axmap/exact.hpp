#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "axmap/detail/format.hpp"
#include "axmap/errors.hpp"
#include "axmap/io.hpp"
#include "axmap/tensor.hpp"

namespace axmap {

inline constexpr double kDefaultEnumerationCap = 1e8;

// (n!)^(M-1) as a double (may overflow to inf, which is fine for the cap
// comparison).
inline double feasible_solution_count(int dims, int card) {
  double f = 1.0;
  for (int i = 2; i <= card; ++i) f *= i;
  return std::pow(f, dims - 1);
}

struct ExactResult {
  Assignment assignment;
  double value = 0.0;
  std::uint64_t explored = 0;  // complete assignments reached by the search
};

namespace detail {

struct BruteForceState {
  const CostTensor* tensor;
  int n, m;
  std::vector<std::vector<char>> used;  // per dimension 1..m-1
  std::vector<std::vector<int>> chosen; // chosen[r] = tuple coords of row r
  std::vector<double> suffix_bound;     // sum over rows >= r of the row minimum
  double best;
  bool have_best;
  std::vector<std::vector<int>> best_rows;
  std::uint64_t explored;

  // Rows are filled in order; within a row, free coordinates are tried in
  // ascending lexicographic order, so with strict pruning/replacement the
  // first optimum found is the lexicographically smallest in row-major cell
  // order.
  void row(int r, double partial) {
    if (r == n) {
      ++explored;
      if (!have_best || partial < best) {
        have_best = true;
        best = partial;
        best_rows = chosen;
      }
      return;
    }
    if (have_best && partial + suffix_bound[std::size_t(r)] > best) return;
    coord(r, 1, std::size_t(r) * tensor->stride(0), partial);
  }

  void coord(int r, int d, std::size_t offset, double partial) {
    if (d == m) {
      row(r + 1, partial + tensor->costs()[offset]);
      return;
    }
    const std::size_t stride = tensor->stride(d);
    for (int v = 0; v < n; ++v) {
      if (used[std::size_t(d - 1)][std::size_t(v)]) continue;
      used[std::size_t(d - 1)][std::size_t(v)] = 1;
      chosen[std::size_t(r)][std::size_t(d)] = v;
      coord(r, d + 1, offset + stride * std::size_t(v), partial);
      used[std::size_t(d - 1)][std::size_t(v)] = 0;
    }
  }
};

}  // namespace detail

// Exhaustive search over all (n!)^(M-1) assignments with a row-minimum lower
// bound for pruning (valid for negative costs too). Ground truth for small
// instances.
inline ExactResult brute_force(const CostTensor& tensor,
                               double cap = kDefaultEnumerationCap) {
  const int n = tensor.card();
  const int m = tensor.dims();
  const double count = feasible_solution_count(m, n);
  if (count > cap)
    throw TooLargeForExactError(
        "instance has " + std::to_string(count) +
        " feasible assignments, enumeration cap is " + std::to_string(cap));

  detail::BruteForceState st;
  st.tensor = &tensor;
  st.n = n;
  st.m = m;
  st.used.assign(std::size_t(m - 1), std::vector<char>(std::size_t(n), 0));
  st.chosen.assign(std::size_t(n), std::vector<int>(std::size_t(m), 0));
  for (int r = 0; r < n; ++r) st.chosen[std::size_t(r)][0] = r;
  st.best = 0.0;
  st.have_best = false;
  st.explored = 0;

  st.suffix_bound.assign(std::size_t(n) + 1, 0.0);
  const std::size_t s0 = tensor.stride(0);
  std::vector<double> row_min(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    double mn = tensor.costs()[std::size_t(r) * s0];
    for (std::size_t off = 0; off < s0; ++off)
      mn = std::min(mn, tensor.costs()[std::size_t(r) * s0 + off]);
    row_min[std::size_t(r)] = mn;
  }
  for (int r = n - 1; r >= 0; --r)
    st.suffix_bound[std::size_t(r)] =
        st.suffix_bound[std::size_t(r) + 1] + row_min[std::size_t(r)];

  st.row(0, 0.0);

  ExactResult res;
  res.value = st.best;
  res.explored = st.explored;
  res.assignment.perms.assign(std::size_t(m - 1), Perm(std::size_t(n)));
  for (int r = 0; r < n; ++r)
    for (int d = 1; d < m; ++d)
      res.assignment.perms[std::size_t(d - 1)][std::size_t(r)] =
          st.best_rows[std::size_t(r)][std::size_t(d)];
  return res;
}

// LP-format export of the 0/1 program: n^M binary variables x_i1_..._iM
// (1-based indices), objective sum of c*x, and one equality per (dimension,
// index) pair. Solver-agnostic stand-in for an in-process ILP backend.
inline void export_ilp(const CostTensor& tensor, std::ostream& out) {
  const int n = tensor.card();
  const int m = tensor.dims();

  const auto var_name = [&](std::size_t flat) {
    std::string name = "x";
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int k = m - 1; k >= 0; --k) {
      idx[std::size_t(k)] = static_cast<int>(flat % std::size_t(n));
      flat /= std::size_t(n);
    }
    for (int k = 0; k < m; ++k)
      name += "_" + std::to_string(idx[std::size_t(k)] + 1);
    return name;
  };

  out << "\\ axial assignment instance M=" << m << " n=" << n << "\n";
  out << "Minimize\n obj:";
  int per_line = 0;
  for (std::size_t f = 0; f < tensor.size(); ++f) {
    const double c = tensor[f];
    out << (c < 0 ? " - " : " + ") << detail::fmt_double(std::abs(c)) << ' '
        << var_name(f);
    if (++per_line % 6 == 0) out << "\n    ";
  }
  out << "\nSubject To\n";
  // one constraint per (dimension k, index v): all cells with i_k = v
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    for (int v = 0; v < n; ++v) {
      out << " d" << (k + 1) << "_" << (v + 1) << ":";
      std::fill(idx.begin(), idx.end(), 0);
      idx[std::size_t(k)] = v;
      int terms = 0;
      for (;;) {
        out << " + " << var_name(tensor.flat_index(idx));
        if (++terms % 10 == 0) out << "\n    ";
        // odometer over all dimensions except k
        int d = m - 1;
        for (; d >= 0; --d) {
          if (d == k) continue;
          if (++idx[std::size_t(d)] < n) break;
          idx[std::size_t(d)] = 0;
        }
        if (d < 0) break;
      }
      out << " = 1\n";
    }
  }
  out << "Binary\n";
  for (std::size_t f = 0; f < tensor.size(); ++f) out << ' ' << var_name(f) << '\n';
  out << "End\n";
}

inline void export_ilp(const CostTensor& tensor, const std::string& path) {
  auto out = detail::open_out(path);
  export_ilp(tensor, out);
}

}  // namespace axmap
