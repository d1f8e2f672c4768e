#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace axmap {

// All randomness in the library flows through mt19937_64 seeded explicitly.
// Distribution helpers are hand-rolled so that generated streams are
// bit-identical across standard library implementations.
using Rng = std::mt19937_64;

inline Rng seeded_rng(std::uint64_t seed) { return Rng(seed); }

// splitmix64; used to derive independent stream seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0,1) with 53 random mantissa bits.
inline double uniform01(Rng& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_below(Rng& g, std::uint64_t n) {
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t v;
  do {
    v = g();
  } while (v >= limit);
  return v % n;
}

using Perm = std::vector<int>;  // 0-based values; 1-based only in file formats

inline Perm identity_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

// Fisher-Yates.
inline Perm random_perm(Rng& g, int n) {
  Perm p = identity_perm(n);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(uniform_below(g, std::uint64_t(i) + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

inline bool is_permutation_of_n(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline Perm inverse_perm(const Perm& p) {
  Perm inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace axmap
