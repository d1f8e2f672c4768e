#pragma once

#include <algorithm>
#include <vector>

#include "axmap/tensor.hpp"

namespace axmap {

struct GreedyResult {
  Assignment assignment;
  double value = 0.0;
};

// n rounds; round k scans every cell whose coordinates are all still
// available, takes the smallest (first in lexicographic index order on ties)
// and retires its coordinates in every dimension. No submatrix copies are
// materialized; the scan walks the original tensor through the surviving
// index lists.
inline GreedyResult greedy_solve(const CostTensor& tensor) {
  const int n = tensor.card();
  const int m = tensor.dims();
  const std::vector<double>& c = tensor.costs();

  // alive[k] = ascending list of still-available indices of dimension k
  std::vector<std::vector<int>> alive(static_cast<std::size_t>(m));
  for (auto& v : alive) v = [&] {
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ids[std::size_t(i)] = i;
    return ids;
  }();

  std::vector<std::size_t> strides(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) strides[std::size_t(k)] = tensor.stride(k);

  std::vector<std::vector<int>> picked;
  double total = 0.0;
  std::vector<int> cur(static_cast<std::size_t>(m));

  for (int round = 0; round < n; ++round) {
    double best = 0.0;
    bool have = false;
    std::vector<int> best_tuple;

    // depth-first odometer over alive index lists, ascending, so the first
    // minimum found is the lexicographically smallest
    const auto scan = [&](auto&& self, int depth, std::size_t offset) -> void {
      if (depth == m) {
        const double v = c[offset];
        if (!have || v < best) {
          have = true;
          best = v;
          best_tuple = cur;
        }
        return;
      }
      for (int idx : alive[std::size_t(depth)]) {
        cur[std::size_t(depth)] = idx;
        self(self, depth + 1, offset + strides[std::size_t(depth)] * std::size_t(idx));
      }
    };
    scan(scan, 0, 0);

    total += best;
    picked.push_back(best_tuple);
    for (int k = 0; k < m; ++k) {
      auto& v = alive[std::size_t(k)];
      v.erase(std::find(v.begin(), v.end(), best_tuple[std::size_t(k)]));
    }
  }

  std::sort(picked.begin(), picked.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  GreedyResult res;
  res.value = total;
  res.assignment.perms.assign(std::size_t(m - 1), Perm(std::size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int k = 1; k < m; ++k)
      res.assignment.perms[std::size_t(k - 1)][std::size_t(i)] =
          picked[std::size_t(i)][std::size_t(k)];
  return res;
}

}  // namespace axmap
