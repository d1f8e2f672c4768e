#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "axmap/errors.hpp"
#include "axmap/exact.hpp"
#include "axmap/genetic.hpp"
#include "axmap/greedy.hpp"
#include "axmap/multistart.hpp"
#include "axmap/tensor.hpp"
#include "axmap/vlsn.hpp"

namespace axmap {

// Algorithm tags exposed on the command line and in benchmark tables.
enum class Algo { Greedy, Vlsn1, VlsnMs, GridVlsn, GreedyVlsn, Ga1, Ga2, Exact };

inline std::string to_string(Algo a) {
  switch (a) {
    case Algo::Greedy: return "greedy";
    case Algo::Vlsn1: return "vlsn1";
    case Algo::VlsnMs: return "vlsnms";
    case Algo::GridVlsn: return "grid-vlsn";
    case Algo::GreedyVlsn: return "greedy-vlsn";
    case Algo::Ga1: return "ga1";
    case Algo::Ga2: return "ga2";
    default: return "exact";
  }
}

inline std::optional<Algo> parse_algo(const std::string& s) {
  for (Algo a : {Algo::Greedy, Algo::Vlsn1, Algo::VlsnMs, Algo::GridVlsn,
                 Algo::GreedyVlsn, Algo::Ga1, Algo::Ga2, Algo::Exact})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

struct SolveOptions {
  Algo algo = Algo::Greedy;
  VlsnConfig vlsn;                     // variant/budget for VLSN-family algos
  int starts = 8;                      // mu for the random multi-start
  std::optional<std::size_t> grid_cap; // cap for the grid multi-start
  std::uint64_t seed = 0;              // start sampling / GA seed
  int threads = 0;
  double exact_cap = kDefaultEnumerationCap;
};

struct SolveOutcome {
  Assignment assignment;
  double value = 0.0;
  // Explored-solution count: LAP solves for the VLSN family, fitness
  // evaluations for the GAs, enumerated complete assignments for exact, 1 for
  // greedy's single constructed solution.
  std::uint64_t nodes = 0;
  std::vector<DescentTrace> traces;
};

inline SolveOutcome solve(const CostTensor& tensor, const SolveOptions& opt) {
  SolveOutcome out;
  const auto from_multistart = [&](StartTag tag) {
    StartStrategy strategy;
    strategy.tag = tag;
    strategy.mu = opt.starts;
    strategy.grid_cap = opt.grid_cap;
    strategy.seed = opt.seed;
    MultiStartResult ms = multi_start_solve(tensor, strategy, opt.vlsn, opt.threads);
    out.assignment = std::move(ms.best);
    out.value = ms.value;
    for (const DescentTrace& tr : ms.traces) out.nodes += tr.lap_solves;
    out.traces = std::move(ms.traces);
  };

  switch (opt.algo) {
    case Algo::Greedy: {
      GreedyResult g = greedy_solve(tensor);
      out.assignment = std::move(g.assignment);
      out.value = g.value;
      out.nodes = 1;
      break;
    }
    case Algo::Vlsn1:
      from_multistart(StartTag::SingleIdentity);
      break;
    case Algo::VlsnMs:
      from_multistart(StartTag::Random);
      break;
    case Algo::GridVlsn:
      from_multistart(StartTag::Grid);
      break;
    case Algo::GreedyVlsn:
      from_multistart(StartTag::GreedyStart);
      break;
    case Algo::Ga1:
    case Algo::Ga2: {
      GaParams params = opt.algo == Algo::Ga1 ? ga1_params(opt.seed)
                                              : ga2_params(opt.seed);
      GaResult g = evolve(tensor, params);
      out.assignment = std::move(g.best);
      out.value = g.value;
      out.nodes = g.evaluations;
      break;
    }
    case Algo::Exact: {
      ExactResult e = brute_force(tensor, opt.exact_cap);
      out.assignment = std::move(e.assignment);
      out.value = e.value;
      out.nodes = e.explored;
      break;
    }
  }
  return out;
}

}  // namespace axmap
