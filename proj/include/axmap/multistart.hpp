#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "axmap/errors.hpp"
#include "axmap/greedy.hpp"
#include "axmap/parallel.hpp"
#include "axmap/rng.hpp"
#include "axmap/tensor.hpp"
#include "axmap/vlsn.hpp"

namespace axmap {

// Cyclic shift by offset k, 1 <= k <= n-1: result(i) = perm(i+k) with
// wrap-around.
inline Perm push_up(const Perm& p, int k) {
  const int n = static_cast<int>(p.size());
  if (k < 1 || k > n - 1)
    throw ValidationError("push offset must be in 1.." + std::to_string(n - 1));
  Perm out(p.size());
  for (int i = 0; i < n; ++i)
    out[std::size_t(i)] = p[std::size_t(i + k < n ? i + k : i + k - n)];
  return out;
}

// Inverse shift: result(i) = perm(n+i-k) for i < k, perm(i-k) otherwise.
inline Perm push_down(const Perm& p, int k) {
  const int n = static_cast<int>(p.size());
  if (k < 1 || k > n - 1)
    throw ValidationError("push offset must be in 1.." + std::to_string(n - 1));
  Perm out(p.size());
  for (int i = 0; i < n; ++i)
    out[std::size_t(i)] = p[std::size_t(i < k ? n + i - k : i - k)];
  return out;
}

// Deterministic grid of starting solutions: Pi0 holds the base permutation
// and its n-1 push-ups; the grid is every (M-1)-tuple over Pi0, enumerated
// lexicographically with the last dimension's choice varying fastest. The
// base permutation occupies dimension 1, so emitted assignments are
// canonicalized back to the identity-in-dimension-1 form.
class GridStarts {
 public:
  GridStarts(int dims, int card, Perm base = {})
      : dims_(dims), card_(card) {
    if (base.empty()) base = identity_perm(card);
    if (static_cast<int>(base.size()) != card || !is_permutation_of_n(base))
      throw ValidationError("grid base must be a permutation of the cardinality");
    base_inverse_ = inverse_perm(base);
    pool_.push_back(base);
    for (int k = 1; k < card; ++k) pool_.push_back(push_up(base, k));
  }

  // n^{M-1}, saturating.
  std::size_t size() const {
    std::size_t total = 1;
    for (int d = 1; d < dims_; ++d) {
      if (total > std::numeric_limits<std::size_t>::max() / std::size_t(card_))
        return std::numeric_limits<std::size_t>::max();
      total *= std::size_t(card_);
    }
    return total;
  }

  Assignment at(std::size_t index) const {
    std::vector<int> digits(static_cast<std::size_t>(dims_ - 1));
    for (int d = dims_ - 2; d >= 0; --d) {
      digits[std::size_t(d)] = static_cast<int>(index % std::size_t(card_));
      index /= std::size_t(card_);
    }
    Assignment a;
    a.perms.reserve(std::size_t(dims_ - 1));
    for (int d = 0; d < dims_ - 1; ++d) {
      const Perm& pi = pool_[std::size_t(digits[std::size_t(d)])];
      Perm canon(static_cast<std::size_t>(card_));
      for (int i = 0; i < card_; ++i)
        canon[std::size_t(i)] = pi[std::size_t(base_inverse_[std::size_t(i)])];
      a.perms.push_back(std::move(canon));
    }
    return a;
  }

 private:
  int dims_;
  int card_;
  Perm base_inverse_;
  std::vector<Perm> pool_;
};

inline std::vector<Assignment> grid_starts(int dims, int card, Perm base = {},
                                           std::optional<std::size_t> cap = {}) {
  GridStarts grid(dims, card, std::move(base));
  std::size_t count = grid.size();
  if (cap && *cap < count) count = *cap;
  std::vector<Assignment> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(grid.at(i));
  return out;
}

// mu starts of M-1 independent uniformly random permutations each.
inline std::vector<Assignment> random_starts(int dims, int card, int mu,
                                             std::uint64_t seed) {
  if (mu < 1) throw ValidationError("random multi-start needs mu >= 1");
  Rng rng = seeded_rng(seed);
  std::vector<Assignment> out(static_cast<std::size_t>(mu));
  for (Assignment& a : out) {
    a.perms.reserve(std::size_t(dims - 1));
    for (int d = 1; d < dims; ++d) a.perms.push_back(random_perm(rng, card));
  }
  return out;
}

enum class StartTag { SingleIdentity, Random, Grid, GreedyStart };

struct StartStrategy {
  StartTag tag = StartTag::SingleIdentity;
  int mu = 1;                            // random only
  std::optional<std::size_t> grid_cap;   // grid only
  std::uint64_t seed = 0;                // random only
};

struct MultiStartResult {
  Assignment best;
  double value = 0.0;
  std::size_t best_index = 0;  // enumeration index of the winning start
  std::vector<DescentTrace> traces;
};

// Descends from every start of the strategy and keeps the minimum final
// value; ties go to the earliest start in enumeration order, so the result
// does not depend on thread scheduling. The random-improving variant gets a
// per-start rng stream derived from (config.seed, start index).
inline MultiStartResult multi_start_solve(const CostTensor& tensor,
                                          const StartStrategy& strategy,
                                          const VlsnConfig& config = {},
                                          int threads = 0) {
  // Grid starts are decoded on demand; nothing forces the n^{M-1} grid into
  // memory at once.
  std::size_t count = 0;
  std::vector<Assignment> fixed;
  std::optional<GridStarts> grid;
  switch (strategy.tag) {
    case StartTag::SingleIdentity:
      fixed.push_back(Assignment::identity(tensor.dims(), tensor.card()));
      count = 1;
      break;
    case StartTag::Random:
      fixed = random_starts(tensor.dims(), tensor.card(), strategy.mu,
                            strategy.seed);
      count = fixed.size();
      break;
    case StartTag::Grid:
      grid.emplace(tensor.dims(), tensor.card());
      count = grid->size();
      if (strategy.grid_cap && *strategy.grid_cap < count)
        count = *strategy.grid_cap;
      break;
    case StartTag::GreedyStart:
      fixed.push_back(greedy_solve(tensor).assignment);
      count = 1;
      break;
  }

  std::vector<DescentResult> results(count);
  parallel_for(count, threads, [&](std::size_t i) {
    VlsnConfig local = config;
    local.seed = mix_seed(config.seed, i);
    Assignment start = grid ? grid->at(i) : fixed[i];
    results[i] = descend(tensor, std::move(start), local);
  });

  MultiStartResult out;
  out.traces.reserve(results.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].value < results[best].value) best = i;
    out.traces.push_back(std::move(results[i].trace));
  }
  out.best = std::move(results[best].assignment);
  out.value = results[best].value;
  out.best_index = best;
  return out;
}

}  // namespace axmap
