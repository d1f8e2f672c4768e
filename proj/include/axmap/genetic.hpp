#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "axmap/errors.hpp"
#include "axmap/rng.hpp"
#include "axmap/tensor.hpp"

namespace axmap {

// Chromosome: card x dims matrix whose columns are permutations; row r names
// the selected cell (col[0][r], ..., col[M-1][r]).
struct Chromosome {
  std::vector<Perm> columns;  // dims columns, each a permutation of 0..card-1

  int card() const { return columns.empty() ? 0 : static_cast<int>(columns[0].size()); }
  int dims() const { return static_cast<int>(columns.size()); }
};

inline void validate_chromosome(const CostTensor& tensor, const Chromosome& ch) {
  if (ch.dims() != tensor.dims() || ch.card() != tensor.card())
    throw InstanceMismatchError("chromosome shape does not match tensor");
  for (const Perm& col : ch.columns)
    if (!is_permutation_of_n(col))
      throw ValidationError("chromosome column is not a permutation");
}

namespace detail {

// Flat-index accumulation; callers guarantee a valid chromosome.
inline double fitness_unchecked(const CostTensor& tensor, const Chromosome& ch) {
  const int n = tensor.card();
  const int m = tensor.dims();
  const std::vector<double>& costs = tensor.costs();
  double total = 0.0;
  for (int r = 0; r < n; ++r) {
    std::size_t flat = 0;
    for (int k = 0; k < m; ++k)
      flat = flat * std::size_t(n) + std::size_t(ch.columns[std::size_t(k)][std::size_t(r)]);
    total += costs[flat];
  }
  return total;
}

}  // namespace detail

inline double fitness(const CostTensor& tensor, const Chromosome& ch) {
  validate_chromosome(tensor, ch);
  return detail::fitness_unchecked(tensor, ch);
}

// Sorts rows by the first column, i.e. composes every column with the
// inverse of column 1, giving the identity-anchored solution form.
inline Assignment to_assignment(const Chromosome& ch) {
  const int n = ch.card();
  const int m = ch.dims();
  const Perm inv = inverse_perm(ch.columns[0]);
  Assignment a;
  a.perms.assign(std::size_t(m - 1), Perm(std::size_t(n)));
  for (int i = 0; i < n; ++i) {
    const int row = inv[std::size_t(i)];
    for (int k = 1; k < m; ++k)
      a.perms[std::size_t(k - 1)][std::size_t(i)] =
          ch.columns[std::size_t(k)][std::size_t(row)];
  }
  return a;
}

// Whole columns are copied from either parent with probability 1/2 each, so
// feasibility is automatic.
inline Chromosome crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
  if (a.dims() != b.dims() || a.card() != b.card())
    throw InstanceMismatchError("crossover parents have different shapes");
  Chromosome child;
  child.columns.reserve(a.columns.size());
  for (std::size_t k = 0; k < a.columns.size(); ++k)
    child.columns.push_back((rng() & 1u) ? b.columns[k] : a.columns[k]);
  return child;
}

inline Chromosome crossover(const Chromosome& a, const Chromosome& b,
                            std::uint64_t seed) {
  Rng rng = seeded_rng(seed);
  return crossover(a, b, rng);
}

inline Chromosome random_chromosome(int dims, int card, Rng& rng) {
  Chromosome ch;
  ch.columns.reserve(std::size_t(dims));
  for (int k = 0; k < dims; ++k) ch.columns.push_back(random_perm(rng, card));
  return ch;
}

// Percentages follow the preset naming: p selects the elite parent pool,
// q < p the carried-over survivors, r the crossover offspring share.
struct GaParams {
  double elite_pct = 60.0;
  double carry_pct = 20.0;
  double cross_pct = 60.0;
  int generations = 2000;
  int population = 100;
  std::uint64_t seed = 0;
};

inline GaParams ga1_params(std::uint64_t seed = 0) {
  return GaParams{60.0, 20.0, 60.0, 2000, 100, seed};
}

// The second preset lowers the elite pool to 40% and runs longer; its
// carry-over and crossover shares are not separately specified and reuse the
// first preset's values.
inline GaParams ga2_params(std::uint64_t seed = 0) {
  return GaParams{40.0, 20.0, 60.0, 5000, 100, seed};
}

inline void validate_params(const GaParams& p) {
  if (!(p.carry_pct < p.elite_pct))
    throw ValidationError("carry-over fraction must be below the elite fraction");
  for (double f : {p.elite_pct, p.carry_pct, p.cross_pct})
    if (!(f > 0.0 && f <= 100.0))
      throw ValidationError("GA fractions must lie in (0, 100]");
  if (p.generations < 1) throw ValidationError("generations must be >= 1");
  if (p.population < 1) throw ValidationError("population must be >= 1");
}

struct GaResult {
  Assignment best;
  double value = 0.0;
  std::vector<double> best_curve;  // per-generation best fitness
  std::uint64_t evaluations = 0;
};

// Generation t+1 = carried top q% + r% crossover offspring of parents drawn
// uniformly from the top p% + fresh random chromosomes for the remainder.
// Counts are floor(fraction * population); the carry-over is at least one so
// the incumbent never regresses.
inline GaResult evolve(const CostTensor& tensor, const GaParams& params) {
  validate_params(params);
  const int pop = params.population;
  const int n_carry = std::max(1, static_cast<int>(params.carry_pct / 100.0 * pop));
  const int n_pool = std::max(1, static_cast<int>(params.elite_pct / 100.0 * pop));
  const int n_cross = std::min(static_cast<int>(params.cross_pct / 100.0 * pop),
                               pop - n_carry);

  Rng rng = seeded_rng(params.seed);
  std::vector<Chromosome> gen;
  gen.reserve(std::size_t(pop));
  for (int i = 0; i < pop; ++i)
    gen.push_back(random_chromosome(tensor.dims(), tensor.card(), rng));

  GaResult res;
  std::vector<double> fit(static_cast<std::size_t>(pop));
  std::vector<int> order(static_cast<std::size_t>(pop));
  Chromosome best_ch;
  double best_val = 0.0;
  bool have_best = false;

  const auto eval_all = [&] {
    for (int i = 0; i < pop; ++i) {
      fit[std::size_t(i)] = detail::fitness_unchecked(tensor, gen[std::size_t(i)]);
      ++res.evaluations;
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return fit[std::size_t(a)] < fit[std::size_t(b)];
    });
    const int top = order[0];
    if (!have_best || fit[std::size_t(top)] < best_val) {
      have_best = true;
      best_val = fit[std::size_t(top)];
      best_ch = gen[std::size_t(top)];
    }
  };

  eval_all();
  for (int g = 0; g < params.generations; ++g) {
    std::vector<Chromosome> next;
    next.reserve(std::size_t(pop));
    for (int i = 0; i < n_carry; ++i)
      next.push_back(gen[std::size_t(order[std::size_t(i)])]);
    for (int i = 0; i < n_cross && static_cast<int>(next.size()) < pop; ++i) {
      const auto pa = order[uniform_below(rng, std::uint64_t(n_pool))];
      const auto pb = order[uniform_below(rng, std::uint64_t(n_pool))];
      next.push_back(crossover(gen[std::size_t(pa)], gen[std::size_t(pb)], rng));
    }
    while (static_cast<int>(next.size()) < pop)
      next.push_back(random_chromosome(tensor.dims(), tensor.card(), rng));
    gen = std::move(next);
    eval_all();
    res.best_curve.push_back(fit[std::size_t(order[0])]);
  }

  res.best = to_assignment(best_ch);
  res.value = best_val;
  return res;
}

}  // namespace axmap
