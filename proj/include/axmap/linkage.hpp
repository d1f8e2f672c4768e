#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "axmap/detail/format.hpp"
#include "axmap/errors.hpp"
#include "axmap/parallel.hpp"
#include "axmap/rng.hpp"
#include "axmap/tensor.hpp"

namespace axmap {

// One source of deduplicated text records. Entries at index >= real_count are
// dummy padding whose similarity to anything is zero.
struct RecordDataset {
  int source_id = 0;
  std::vector<std::string> records;
  std::size_t real_count = 0;
};

inline RecordDataset make_dataset(int source_id,
                                  std::vector<std::string> records) {
  std::unordered_set<std::string> seen;
  for (const std::string& r : records) {
    if (r.empty()) throw ValidationError("records must be non-empty");
    if (!seen.insert(r).second)
      throw ValidationError("duplicate record in source " +
                            std::to_string(source_id) + ": '" + r + "'");
  }
  RecordDataset d;
  d.source_id = source_id;
  d.real_count = records.size();
  d.records = std::move(records);
  return d;
}

namespace detail {

inline constexpr char kPad = '\x02';

// Distinct byte trigrams of the padded string, packed 3 bytes per code,
// sorted ascending.
inline std::vector<std::uint32_t> trigram_codes(const std::string& s) {
  std::string padded;
  padded.reserve(s.size() + 4);
  padded += kPad;
  padded += kPad;
  padded += s;
  padded += kPad;
  padded += kPad;
  std::vector<std::uint32_t> codes;
  codes.reserve(padded.size());
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    const auto u = [&](std::size_t k) {
      return std::uint32_t(static_cast<unsigned char>(padded[i + k]));
    };
    codes.push_back((u(0) << 16) | (u(1) << 8) | u(2));
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

inline double jaccard(const std::vector<std::uint32_t>& a,
                      const std::vector<std::uint32_t>& b) {
  std::size_t inter = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace detail

// Jaccard coefficient of the padded character-trigram sets. The strings are
// framed with two boundary markers on each side, so single-character strings
// still produce trigrams and prefixes weigh like interior substrings.
inline double trigram_sim(const std::string& a, const std::string& b) {
  return detail::jaccard(detail::trigram_codes(a), detail::trigram_codes(b));
}

// Sum of pairwise similarities over all record pairs of the tuple.
inline double msim(std::span<const std::string> records) {
  double total = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i)
    for (std::size_t j = i + 1; j < records.size(); ++j)
      total += trigram_sim(records[i], records[j]);
  return total;
}

// Complementary dissimilarity: sum of (1 - sim) over pairs, identically
// M(M-1)/2 - msim.
inline double delta(std::span<const std::string> records) {
  double total = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i)
    for (std::size_t j = i + 1; j < records.size(); ++j)
      total += 1.0 - trigram_sim(records[i], records[j]);
  return total;
}

// Appends distinct placeholder records until every source has the length of
// the longest one. Dummies stay past real_count and never match anything.
inline std::vector<RecordDataset> pad_datasets(std::vector<RecordDataset> ds) {
  std::size_t longest = 0;
  for (const auto& d : ds) longest = std::max(longest, d.records.size());
  for (auto& d : ds) {
    int serial = 0;
    while (d.records.size() < longest)
      d.records.push_back(std::string(1, detail::kPad) + "dummy/" +
                          std::to_string(d.source_id) + "/" +
                          std::to_string(serial++));
  }
  return ds;
}

// delta cost tensor over the M sources: cell (i_1, ..., i_M) holds the sum of
// pairwise dissimilarities of the referenced records, with dummy records
// maximally dissimilar to everything (similarity 0).
inline CostTensor build_cost_tensor(const std::vector<RecordDataset>& ds,
                                    int threads = 0) {
  const int m = static_cast<int>(ds.size());
  if (m < 2) throw ValidationError("need at least 2 sources");
  const std::size_t n = ds[0].records.size();
  for (const auto& d : ds) {
    if (d.records.size() != n)
      throw ValidationError("sources must have equal length; pad first");
    std::unordered_set<std::string> seen;
    for (const std::string& r : d.records)
      if (!seen.insert(r).second)
        throw ValidationError("duplicate record in source " +
                              std::to_string(d.source_id));
  }

  // precompute trigram codes per record, then all pairwise similarity
  // matrices; cells are then plain sums
  std::vector<std::vector<std::vector<std::uint32_t>>> codes(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    codes[std::size_t(a)].resize(n);
    for (std::size_t i = 0; i < n; ++i)
      codes[std::size_t(a)][i] =
          detail::trigram_codes(ds[std::size_t(a)].records[i]);
  }
  std::vector<std::vector<double>> sims;  // for pair index (a,b), row-major n*n
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
  sims.assign(pairs.size(), std::vector<double>(n * n, 0.0));
  parallel_for(pairs.size(), threads, [&](std::size_t pi) {
    const auto [a, b] = pairs[pi];
    for (std::size_t i = 0; i < n; ++i) {
      const bool dummy_i = i >= ds[std::size_t(a)].real_count;
      for (std::size_t j = 0; j < n; ++j) {
        const bool dummy_j = j >= ds[std::size_t(b)].real_count;
        sims[pi][i * n + j] = (dummy_i || dummy_j)
                                  ? 0.0
                                  : detail::jaccard(codes[std::size_t(a)][i],
                                                    codes[std::size_t(b)][j]);
      }
    }
  });

  const std::size_t cells = cell_count(m, static_cast<int>(n));
  std::vector<double> costs(cells);
  parallel_for(n, threads, [&](std::size_t i0) {
    std::vector<int> idx(std::size_t(m), 0);
    idx[0] = static_cast<int>(i0);
    const std::size_t block = cells / n;
    std::size_t flat = i0 * block;
    for (;;) {
      double d = 0.0;
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto [a, b] = pairs[pi];
        d += 1.0 - sims[pi][std::size_t(idx[std::size_t(a)]) * n +
                            std::size_t(idx[std::size_t(b)])];
      }
      costs[flat++] = d;
      int k = m - 1;
      for (; k >= 1; --k) {
        if (++idx[std::size_t(k)] < static_cast<int>(n)) break;
        idx[std::size_t(k)] = 0;
      }
      if (k < 1) break;
    }
  });
  return CostTensor(m, static_cast<int>(n), std::move(costs));
}

inline constexpr const char* kDistortAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz ";

// Every character position is independently replaced with probability
// error_pct/100 by a uniform draw from A-Z, a-z, or space (the draw may
// reproduce the original character). Records that collide with an already
// emitted one are re-rolled from the original.
inline RecordDataset distort(const RecordDataset& ds, double error_pct,
                             std::uint64_t seed) {
  if (error_pct < 0.0 || error_pct > 100.0)
    throw ValidationError("error percentage must lie in [0, 100]");
  Rng rng = seeded_rng(seed);
  RecordDataset out;
  out.source_id = ds.source_id;
  out.real_count = ds.real_count;
  std::unordered_set<std::string> seen;
  for (const std::string& r : ds.records) {
    std::string s;
    do {
      s = r;
      for (char& ch : s)
        if (uniform01(rng) < error_pct / 100.0)
          ch = kDistortAlphabet[uniform_below(rng, 53)];
    } while (!seen.insert(s).second);
    out.records.push_back(std::move(s));
  }
  return out;
}

}  // namespace axmap

#include "axmap/solver.hpp"

namespace axmap {

struct LinkOptions {
  Algo algo = Algo::GreedyVlsn;
  std::uint64_t seed = 0;  // shuffle seed; also forwarded to the solver
  int threads = 0;
  VlsnConfig vlsn;
};

struct LinkageResult {
  // tuples[i][k] = 0-based record index in source k joined into tuple i
  std::vector<std::vector<int>> tuples;
  std::vector<bool> correct;
  double recall = 0.0;
  double objective = 0.0;
};

// Resolves row-aligned sources (record i of every source refers to entity i).
// Each source is shuffled with a recorded permutation before solving so that
// position carries no signal; recall is computed against that bookkeeping.
// Shorter sources are dummy-padded after the shuffle; tuples containing dummy
// padding count as incorrect.
inline LinkageResult link(std::vector<RecordDataset> sources,
                          const LinkOptions& opt = {}) {
  const int m = static_cast<int>(sources.size());

  // entity_at[k][pos] = entity occupying position pos of source k after the
  // shuffle, -1 for dummy padding
  std::vector<std::vector<int>> entity_at(static_cast<std::size_t>(m));
  Rng rng = seeded_rng(opt.seed);
  for (int k = 0; k < m; ++k) {
    auto& src = sources[std::size_t(k)];
    const std::size_t real = src.real_count;
    Perm shuffle = random_perm(rng, static_cast<int>(real));
    std::vector<std::string> reordered(real);
    entity_at[std::size_t(k)].resize(real);
    for (std::size_t pos = 0; pos < real; ++pos) {
      const int entity = shuffle[pos];
      reordered[pos] = src.records[std::size_t(entity)];
      entity_at[std::size_t(k)][pos] = entity;
    }
    src.records = std::move(reordered);
    src.real_count = real;
  }
  sources = pad_datasets(std::move(sources));
  const std::size_t n = sources.empty() ? 0 : sources[0].records.size();
  for (int k = 0; k < m; ++k) entity_at[std::size_t(k)].resize(n, -1);

  CostTensor tensor = build_cost_tensor(sources, opt.threads);
  SolveOptions sopt;
  sopt.algo = opt.algo;
  sopt.vlsn = opt.vlsn;
  sopt.seed = mix_seed(opt.seed, 0x11ee);
  sopt.threads = opt.threads;
  SolveOutcome sol = solve(tensor, sopt);

  LinkageResult res;
  res.objective = sol.value;
  int ok = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> tuple(static_cast<std::size_t>(m));
    tuple[0] = static_cast<int>(i);
    for (int k = 1; k < m; ++k)
      tuple[std::size_t(k)] = sol.assignment.perms[std::size_t(k - 1)][i];
    const int entity = entity_at[0][i];
    bool good = entity >= 0;
    for (int k = 1; k < m && good; ++k)
      good = entity_at[std::size_t(k)][std::size_t(tuple[std::size_t(k)])] == entity;
    if (good) ++ok;
    res.tuples.push_back(std::move(tuple));
    res.correct.push_back(good);
  }
  res.recall = n == 0 ? 0.0 : static_cast<double>(ok) / static_cast<double>(n);
  return res;
}

// Report: one line per tuple with 1-based indices and a correct/wrong flag,
// then recall and objective trailers.
inline void write_linkage_report(const LinkageResult& res, std::ostream& out) {
  for (std::size_t i = 0; i < res.tuples.size(); ++i) {
    for (int v : res.tuples[i]) out << (v + 1) << ' ';
    out << (res.correct[i] ? "correct" : "wrong") << '\n';
  }
  out << "recall " << detail::fmt_double(res.recall) << '\n';
  out << "objective " << detail::fmt_double(res.objective) << '\n';
}

}  // namespace axmap
