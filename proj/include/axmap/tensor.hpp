#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axmap/errors.hpp"
#include "axmap/rng.hpp"

namespace axmap {

inline constexpr std::size_t kDefaultMaxCells = 100'000'000;

// card^dims with saturation at SIZE_MAX.
inline std::size_t cell_count(int dims, int card) {
  std::size_t n = 1;
  for (int k = 0; k < dims; ++k) {
    if (card != 0 && n > std::numeric_limits<std::size_t>::max() / card)
      return std::numeric_limits<std::size_t>::max();
    n *= static_cast<std::size_t>(card);
  }
  return n;
}

// Dense M-dimensional cost array, cardinality n in every dimension.
// Cells are stored lexicographically with the last index varying fastest.
// Immutable after construction; safe to share across threads.
class CostTensor {
 public:
  CostTensor(int dims, int card, std::vector<double> costs)
      : dims_(dims), card_(card), costs_(std::move(costs)) {
    if (dims_ < 2) throw ValidationError("tensor dims must be >= 2");
    if (card_ < 1) throw ValidationError("tensor card must be >= 1");
    const std::size_t want = cell_count(dims_, card_);
    if (costs_.size() != want)
      throw ValidationError("cost array has " + std::to_string(costs_.size()) +
                            " values, expected " + std::to_string(want));
    for (double c : costs_)
      if (!std::isfinite(c))
        throw ValidationError("cost values must be finite");
  }

  static CostTensor zeros(int dims, int card) {
    return CostTensor(dims, card, std::vector<double>(cell_count(dims, card)));
  }

  int dims() const { return dims_; }
  int card() const { return card_; }
  std::size_t size() const { return costs_.size(); }
  const std::vector<double>& costs() const { return costs_; }

  // card^(dims-1-k): the flat-offset step of dimension k (0-based).
  std::size_t stride(int k) const {
    std::size_t s = 1;
    for (int m = dims_ - 1; m > k; --m) s *= static_cast<std::size_t>(card_);
    return s;
  }

  std::size_t flat_index(std::span<const int> idx) const {
    std::size_t off = 0;
    for (int k = 0; k < dims_; ++k)
      off = off * static_cast<std::size_t>(card_) +
            static_cast<std::size_t>(idx[k]);
    return off;
  }

  double at(std::span<const int> idx) const { return costs_[flat_index(idx)]; }
  double operator[](std::size_t flat) const { return costs_[flat]; }

 private:
  int dims_;
  int card_;
  std::vector<double> costs_;
};

// Feasible MAP solution: permutations for dimensions 2..M; dimension 1 is
// implicitly the identity, so the selected cells are (i, perms[0][i], ...,
// perms[M-2][i]) for i = 0..n-1.
struct Assignment {
  std::vector<Perm> perms;

  static Assignment identity(int dims, int card) {
    Assignment a;
    a.perms.assign(static_cast<std::size_t>(dims - 1), identity_perm(card));
    return a;
  }
};

inline void validate_assignment(const CostTensor& tensor, const Assignment& a) {
  if (a.perms.size() != static_cast<std::size_t>(tensor.dims() - 1))
    throw InstanceMismatchError(
        "assignment has " + std::to_string(a.perms.size()) +
        " permutations, tensor needs " + std::to_string(tensor.dims() - 1));
  for (const Perm& p : a.perms) {
    if (p.size() != static_cast<std::size_t>(tensor.card()))
      throw InstanceMismatchError("permutation size does not match tensor cardinality");
    if (!is_permutation_of_n(p))
      throw ValidationError("assignment row is not a permutation");
  }
}

// Sum of the n selected cells, accumulated in first-index order.
inline double evaluate(const CostTensor& tensor, const Assignment& a) {
  validate_assignment(tensor, a);
  const int n = tensor.card();
  const int m = tensor.dims();
  double total = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    idx[0] = i;
    for (int k = 1; k < m; ++k) idx[static_cast<std::size_t>(k)] = a.perms[k - 1][i];
    total += tensor.at(idx);
  }
  return total;
}

enum class CostDist { Uniform01, UniformInt1e6 };

inline std::string to_string(CostDist d) {
  return d == CostDist::Uniform01 ? "uniform01" : "uint1e6";
}

// Identical spec reproduces the identical tensor bit-for-bit.
struct InstanceSeedSpec {
  int dims = 3;
  int card = 3;
  std::uint64_t seed = 0;
  CostDist dist = CostDist::Uniform01;
};

inline CostTensor generate_instance(const InstanceSeedSpec& spec,
                                    std::size_t max_cells = kDefaultMaxCells) {
  if (spec.dims < 2) throw ValidationError("dims must be >= 2");
  if (spec.card < 1) throw ValidationError("card must be >= 1");
  const std::size_t cells = cell_count(spec.dims, spec.card);
  if (cells > max_cells)
    throw InstanceTooLargeError("instance needs " + std::to_string(cells) +
                                " cells, cap is " + std::to_string(max_cells));
  Rng rng = seeded_rng(spec.seed);
  std::vector<double> costs(cells);
  if (spec.dist == CostDist::Uniform01) {
    for (double& c : costs) c = uniform01(rng);
  } else {
    for (double& c : costs)
      c = static_cast<double>(uniform_below(rng, 1'000'000));
  }
  return CostTensor(spec.dims, spec.card, std::move(costs));
}

}  // namespace axmap
