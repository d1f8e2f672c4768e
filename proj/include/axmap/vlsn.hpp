#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axmap/detail/format.hpp"
#include "axmap/errors.hpp"
#include "axmap/lap.hpp"
#include "axmap/rng.hpp"
#include "axmap/tensor.hpp"

namespace axmap {

// Descent variants. Steepest re-optimizes every dimension each iteration and
// takes the best improvement. The taboo variants exclude the dimension moved
// in the previous iteration from the candidate set for exactly one iteration
// (it cannot improve immediately after its own re-optimization anyway, so the
// recorded improving-dimension counts stay exact).
enum class Variant { Steepest, BestTaboo, FirstTaboo, RandomTaboo };

// Scan order for the first-improvement variant: continue upward from the
// last moved dimension, or restart the scan at dimension 1 every iteration.
enum class FirstScan { ContinueAscending, RestartAtOne };

struct VlsnConfig {
  Variant variant = Variant::Steepest;
  // Cap on explored neighbor solutions, i.e. LAP solves. Unset = unlimited.
  std::optional<std::uint64_t> node_budget;
  std::uint64_t seed = 0;  // used by the random-improving variant only
  FirstScan first_scan = FirstScan::ContinueAscending;
};

struct DescentStep {
  int iteration;        // 1-based count of accepted moves
  int dimension;        // dimension moved, 0-based
  double objective;     // objective after the move
  int improving_before; // improving-dimension count I before the move
};

// I is exact for variants that evaluate every candidate dimension (steepest,
// best, random); the first-improvement variant stops scanning at the first
// improvement, so its steps record I = 1.
struct DescentTrace {
  double start_objective = 0.0;
  double final_objective = 0.0;
  std::vector<DescentStep> steps;
  std::uint64_t lap_solves = 0;
  std::uint64_t projections = 0;
  bool budget_terminated = false;
};

// Projection of the tensor onto solution a with dimension k freed (0-based).
// For k >= 1: entry (i, j) is the cost of row i's selected cell with its k-th
// coordinate replaced by j. For k == 0: entry (i, j) is the cost of attaching
// first-dimension index i to the tuple currently in row j.
inline LapMatrix project(const CostTensor& tensor, const Assignment& a, int k) {
  const int n = tensor.card();
  const int m = tensor.dims();
  if (k < 0 || k >= m)
    throw ValidationError("projection dimension " + std::to_string(k + 1) +
                          " out of range 1.." + std::to_string(m));
  LapMatrix out = LapMatrix::zeros(n);
  const std::vector<double>& c = tensor.costs();
  if (k == 0) {
    const std::size_t s0 = tensor.stride(0);
    for (int j = 0; j < n; ++j) {
      std::size_t base = 0;
      for (int d = 1; d < m; ++d)
        base = base * std::size_t(n) + std::size_t(a.perms[d - 1][j]);
      for (int i = 0; i < n; ++i) out.at(i, j) = c[std::size_t(i) * s0 + base];
    }
  } else {
    const std::size_t sk = tensor.stride(k);
    for (int i = 0; i < n; ++i) {
      std::size_t base = std::size_t(i);
      for (int d = 1; d < m; ++d) {
        const std::size_t coord = (d == k) ? 0 : std::size_t(a.perms[d - 1][i]);
        base = base * std::size_t(n) + coord;
      }
      for (int j = 0; j < n; ++j) out.at(i, j) = c[base + sk * std::size_t(j)];
    }
  }
  return out;
}

namespace detail {

// Applies the optimal permutation of dimension k. For k >= 1 the k-th stored
// permutation is replaced. A dimension-1 move re-orders which tuple each
// first-index joins; composing every stored permutation with sigma keeps the
// stored form anchored to the identity in dimension 1 while selecting exactly
// the matched cells.
inline void apply_move(Assignment& a, int k, const Perm& sigma) {
  if (k == 0) {
    for (Perm& p : a.perms) {
      Perm np(p.size());
      for (std::size_t i = 0; i < p.size(); ++i)
        np[i] = p[std::size_t(sigma[i])];
      p = std::move(np);
    }
  } else {
    a.perms[std::size_t(k - 1)] = sigma;
  }
}

}  // namespace detail

struct DescentResult {
  Assignment assignment;
  double value = 0.0;
  DescentTrace trace;
};

// Algorithm: repeatedly solve LAP(project(C, k, S)) over candidate dimensions
// and accept a strictly improving optimal permutation until no dimension
// improves or the node budget runs out. Equal-value moves are rejected, which
// guarantees termination.
inline DescentResult descend(const CostTensor& tensor, Assignment start,
                             const VlsnConfig& config = {}) {
  validate_assignment(tensor, start);
  const int m = tensor.dims();
  DescentResult res;
  res.assignment = std::move(start);
  double y = evaluate(tensor, res.assignment);
  res.trace.start_objective = y;
  Rng rng = seeded_rng(config.seed);
  std::uint64_t budget_left =
      config.node_budget ? *config.node_budget : std::uint64_t(-1);
  const bool budgeted = config.node_budget.has_value();
  int taboo = -1;  // dimension excluded for one iteration, -1 = none
  int iteration = 0;

  const auto solve_dim = [&](int k, LapSolution& out) -> bool {
    if (budgeted && budget_left == 0) return false;
    LapMatrix b = project(tensor, res.assignment, k);
    ++res.trace.projections;
    out = solve_lap(b);
    ++res.trace.lap_solves;
    if (budgeted) --budget_left;
    return true;
  };

  for (;;) {
    int chosen = -1;
    double chosen_value = y;
    Perm chosen_perm;
    int improving = 0;
    bool out_of_budget = false;

    if (config.variant == Variant::FirstTaboo) {
      const int first = (config.first_scan == FirstScan::ContinueAscending &&
                         taboo >= 0)
                            ? (taboo + 1) % m
                            : 0;
      for (int step = 0; step < m && chosen < 0; ++step) {
        const int k = (first + step) % m;
        if (k == taboo) continue;
        LapSolution sol;
        if (!solve_dim(k, sol)) {
          out_of_budget = true;
          break;
        }
        if (sol.value < y) {
          chosen = k;
          chosen_value = sol.value;
          chosen_perm = std::move(sol.perm);
          improving = 1;
        }
      }
    } else {
      std::vector<std::pair<int, LapSolution>> improvers;
      for (int k = 0; k < m; ++k) {
        if (k == taboo && config.variant != Variant::Steepest) continue;
        LapSolution sol;
        if (!solve_dim(k, sol)) {
          out_of_budget = true;
          break;
        }
        if (sol.value < y) improvers.emplace_back(k, std::move(sol));
      }
      improving = static_cast<int>(improvers.size());
      if (!out_of_budget && !improvers.empty()) {
        std::size_t pick = 0;
        if (config.variant == Variant::RandomTaboo) {
          pick = static_cast<std::size_t>(uniform_below(rng, improvers.size()));
        } else {
          for (std::size_t c = 1; c < improvers.size(); ++c)
            if (improvers[c].second.value < improvers[pick].second.value)
              pick = c;  // ties keep the lowest dimension
        }
        chosen = improvers[pick].first;
        chosen_value = improvers[pick].second.value;
        chosen_perm = std::move(improvers[pick].second.perm);
      }
    }

    if (out_of_budget) {
      res.trace.budget_terminated = true;
      break;
    }
    if (chosen < 0) break;  // no improving move is left

    detail::apply_move(res.assignment, chosen, chosen_perm);
    y = chosen_value;
    ++iteration;
    res.trace.steps.push_back({iteration, chosen, y, improving});
    taboo = chosen;
  }

  res.value = y;
  res.trace.final_objective = y;
  return res;
}

// Number of dimensions whose LAP re-solve strictly improves the objective.
inline int count_improving_dimensions(const CostTensor& tensor,
                                      const Assignment& a) {
  validate_assignment(tensor, a);
  const double y = evaluate(tensor, a);
  int count = 0;
  for (int k = 0; k < tensor.dims(); ++k)
    if (solve_lap(project(tensor, a, k)).value < y) ++count;
  return count;
}

// Empirical absorbing-chain bound on descent length. p_self[i] is the
// fraction of moves originating at level i that stay at level i; levels with
// no observed departures contribute p = 0. nu[0] = 0,
// nu[I] = nu[I-1] + 1/(1 - p_self[I]) for 0 < I < M, nu[M] = 1 + nu[M-1].
struct LevelBound {
  std::vector<double> p_self;  // indexed by level 0..M
  std::vector<double> nu;      // indexed by level 0..M
};

inline LevelBound estimate_level_bound(std::span<const DescentTrace> traces,
                                       int dims) {
  std::vector<double> stays(std::size_t(dims) + 1, 0.0);
  std::vector<double> departs(std::size_t(dims) + 1, 0.0);
  for (const DescentTrace& tr : traces) {
    const auto& steps = tr.steps;
    for (std::size_t t = 0; t < steps.size(); ++t) {
      const int from = steps[t].improving_before;
      const bool last = t + 1 == steps.size();
      if (last && tr.budget_terminated) break;  // destination level unknown
      const int to = last ? 0 : steps[t + 1].improving_before;
      departs[std::size_t(from)] += 1.0;
      if (to == from) stays[std::size_t(from)] += 1.0;
    }
  }
  LevelBound out;
  out.p_self.assign(std::size_t(dims) + 1, 0.0);
  out.p_self[0] = 1.0;  // absorbing
  for (int i = 1; i < dims; ++i) {
    if (departs[std::size_t(i)] > 0.0) {
      out.p_self[std::size_t(i)] = stays[std::size_t(i)] / departs[std::size_t(i)];
      if (out.p_self[std::size_t(i)] >= 1.0)
        throw UndefinedBoundError(
            "no escape observed from level " + std::to_string(i), i);
    }
  }
  out.nu.assign(std::size_t(dims) + 1, 0.0);
  for (int i = 1; i < dims; ++i)
    out.nu[std::size_t(i)] =
        out.nu[std::size_t(i) - 1] + 1.0 / (1.0 - out.p_self[std::size_t(i)]);
  out.nu[std::size_t(dims)] = 1.0 + out.nu[std::size_t(dims) - 1];
  return out;
}

// Trace export: header with start/final objective, then one line per
// accepted move: "<iteration> <dimension> <objective> <I>".
inline void write_trace(const DescentTrace& tr, std::ostream& out) {
  out << "start " << detail::fmt_double(tr.start_objective) << '\n';
  out << "final " << detail::fmt_double(tr.final_objective) << '\n';
  out << "lap_solves " << tr.lap_solves << " projections " << tr.projections
      << " budget_terminated " << (tr.budget_terminated ? 1 : 0) << '\n';
  for (const DescentStep& s : tr.steps)
    out << s.iteration << ' ' << (s.dimension + 1) << ' '
        << detail::fmt_double(s.objective) << ' ' << s.improving_before << '\n';
}

}  // namespace axmap
