// Command-line driver: instance generation, solving, record linkage,
// benchmark tables, and paired statistical comparison.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <axmap/axmap.hpp>
#include <axmap/detail/format.hpp>

namespace {

using namespace axmap;

struct CliError {
  int code;
  std::string message;
};

Algo algo_or_throw(const std::string& s) {
  auto a = parse_algo(s);
  if (!a) throw CLI::ValidationError("--algo", "unknown algorithm '" + s + "'");
  return *a;
}

Variant variant_or_throw(const std::string& s) {
  if (s == "steepest") return Variant::Steepest;
  if (s == "best") return Variant::BestTaboo;
  if (s == "first") return Variant::FirstTaboo;
  if (s == "random") return Variant::RandomTaboo;
  throw CLI::ValidationError("--variant", "unknown variant '" + s + "'");
}

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

RecordDataset read_dataset(const std::string& path, int source_id) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> records;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (!line.empty()) records.push_back(line);
  }
  return make_dataset(source_id, std::move(records));
}

struct BenchRow {
  int instance;
  std::string algo;
  double value;
  std::uint64_t nodes;
  double seconds;
};

int run(int argc, char** argv) {
  CLI::App app{"axial multidimensional assignment solver toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = all cores)");

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a random instance file");
  int g_dims = 3, g_card = 10;
  std::uint64_t g_seed = 0;
  std::string g_dist = "uniform01", g_out;
  gen->add_option("--dims", g_dims, "dimensionality M")->required();
  gen->add_option("--card", g_card, "cardinality n")->required();
  gen->add_option("--seed", g_seed, "rng seed")->required();
  gen->add_option("--dist", g_dist, "cost distribution")
      ->check(CLI::IsMember({"uniform01", "uint1e6"}));
  gen->add_option("--out", g_out, "instance file path")->required();

  // ---- solve --------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
  std::string s_in, s_algo = "greedy", s_variant = "steepest", s_out, s_trace;
  int s_starts = 8;
  std::uint64_t s_seed = 0;
  std::optional<std::uint64_t> s_budget;
  std::optional<std::size_t> s_grid_cap;
  solve_cmd->add_option("--in", s_in, "instance file")->required();
  solve_cmd->add_option("--algo", s_algo,
                        "greedy|vlsn1|vlsnms|grid-vlsn|greedy-vlsn|ga1|ga2|exact");
  solve_cmd->add_option("--variant", s_variant, "steepest|best|first|random");
  solve_cmd->add_option("--starts", s_starts, "mu for vlsnms");
  solve_cmd->add_option("--grid-cap", s_grid_cap, "cap on grid starts");
  solve_cmd->add_option("--budget", s_budget, "explored-node budget per descent");
  solve_cmd->add_option("--seed", s_seed, "rng seed");
  solve_cmd->add_option("--out", s_out, "solution file path");
  solve_cmd->add_option("--trace", s_trace, "descent trace path");

  // ---- link ---------------------------------------------------------------
  auto* link_cmd = app.add_subcommand("link", "multipartite record linkage");
  std::vector<std::string> l_sources;
  double l_error = 0.0;
  std::uint64_t l_seed = 0;
  std::string l_algo = "greedy-vlsn", l_report;
  link_cmd->add_option("--sources", l_sources, "record files, one per source")
      ->required()
      ->expected(2, 16);
  link_cmd->add_option("--error", l_error, "distortion percentage 0..100");
  link_cmd->add_option("--seed", l_seed, "rng seed");
  link_cmd->add_option("--algo", l_algo, "solver for the delta tensor");
  link_cmd->add_option("--report", l_report, "linkage report path");

  // ---- bench --------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "per-instance values table");
  int b_dims = 3, b_card = 10, b_instances = 10;
  std::uint64_t b_seed = 0;
  std::string b_algos = "greedy,vlsn1", b_out, b_dist = "uniform01";
  int b_starts = 8;
  bench->add_option("--dims", b_dims)->required();
  bench->add_option("--card", b_card)->required();
  bench->add_option("--instances", b_instances)->required();
  bench->add_option("--algos", b_algos, "comma-separated algorithm list")
      ->required();
  bench->add_option("--seed", b_seed, "base seed; instance i uses seed+i");
  bench->add_option("--dist", b_dist)->check(CLI::IsMember({"uniform01", "uint1e6"}));
  bench->add_option("--starts", b_starts, "mu for vlsnms");
  bench->add_option("--out", b_out, "table path (default stdout)");

  // ---- stats --------------------------------------------------------------
  auto* stats = app.add_subcommand("stats", "paired comparison from a bench table");
  std::string st_table, st_a1, st_a2, st_method = "paired";
  int st_dims = 0, st_card = 0;
  std::string st_zero = "strict";
  stats->add_option("--bench-table", st_table, "bench CSV")->required();
  stats->add_option("--a1", st_a1, "search-family algorithm")->required();
  stats->add_option("--a2", st_a2, "comparison algorithm")->required();
  stats->add_option("--method", st_method)->check(CLI::IsMember({"paired", "cox"}));
  stats->add_option("--dims", st_dims, "M label for the report row");
  stats->add_option("--card", st_card, "n label for the report row");
  stats->add_option("--zero-policy", st_zero)->check(CLI::IsMember({"strict", "epsilon"}));

  // ---- ilp-export ---------------------------------------------------------
  auto* ilp = app.add_subcommand("ilp-export", "write the instance as an LP file");
  std::string i_in, i_out;
  ilp->add_option("--in", i_in, "instance file")->required();
  ilp->add_option("--out", i_out, "LP file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (*gen) {
    InstanceSeedSpec spec;
    spec.dims = g_dims;
    spec.card = g_card;
    spec.seed = g_seed;
    spec.dist = g_dist == "uniform01" ? CostDist::Uniform01 : CostDist::UniformInt1e6;
    write_instance(generate_instance(spec), g_out);
    return 0;
  }

  if (*solve_cmd) {
    CostTensor tensor = read_instance(s_in);
    SolveOptions opt;
    opt.algo = algo_or_throw(s_algo);
    opt.vlsn.variant = variant_or_throw(s_variant);
    opt.vlsn.node_budget = s_budget;
    opt.vlsn.seed = s_seed;
    opt.starts = s_starts;
    opt.grid_cap = s_grid_cap;
    opt.seed = s_seed;
    opt.threads = threads;
    SolveOutcome res = solve(tensor, opt);
    if (!s_out.empty())
      write_solution(res.assignment, res.value, s_out);
    if (!s_trace.empty()) {
      auto out = detail::open_out(s_trace);
      for (const DescentTrace& tr : res.traces) write_trace(tr, out);
    }
    std::cout << "objective " << detail::fmt_double(res.value) << " nodes "
              << res.nodes << "\n";
    return 0;
  }

  if (*link_cmd) {
    std::vector<RecordDataset> sources;
    for (std::size_t k = 0; k < l_sources.size(); ++k)
      sources.push_back(read_dataset(l_sources[k], static_cast<int>(k) + 1));
    // the first source stays clean as the reference copy; every later source
    // is distorted with its own derived seed
    for (std::size_t k = 1; k < sources.size(); ++k)
      sources[k] = distort(sources[k], l_error, mix_seed(l_seed, k));
    LinkOptions opt;
    opt.algo = algo_or_throw(l_algo);
    opt.seed = l_seed;
    opt.threads = threads;
    LinkageResult res = link(std::move(sources), opt);
    if (!l_report.empty()) {
      auto out = detail::open_out(l_report);
      write_linkage_report(res, out);
    }
    std::cout << "recall " << detail::fmt_double(res.recall) << " objective "
              << detail::fmt_double(res.objective) << "\n";
    return 0;
  }

  if (*bench) {
    std::vector<std::string> algos = split_list(b_algos);
    if (algos.empty()) throw CLI::ValidationError("--algos", "empty list");
    std::vector<BenchRow> rows;
    for (int i = 0; i < b_instances; ++i) {
      InstanceSeedSpec spec;
      spec.dims = b_dims;
      spec.card = b_card;
      spec.seed = b_seed + static_cast<std::uint64_t>(i);
      spec.dist = b_dist == "uniform01" ? CostDist::Uniform01 : CostDist::UniformInt1e6;
      CostTensor tensor = generate_instance(spec);
      for (const std::string& name : algos) {
        SolveOptions opt;
        opt.algo = algo_or_throw(name);
        opt.seed = mix_seed(spec.seed, 0xbe);
        opt.starts = b_starts;
        opt.threads = threads;
        const auto t0 = std::chrono::steady_clock::now();
        SolveOutcome res = solve(tensor, opt);
        rows.push_back({i + 1, name, res.value, res.nodes, elapsed_seconds(t0)});
      }
    }
    std::ostringstream table;
    table << "instance,algo,value,nodes,seconds\n";
    for (const BenchRow& r : rows)
      table << r.instance << ',' << r.algo << ',' << detail::fmt_double(r.value)
            << ',' << r.nodes << ',' << detail::fmt_fixed(r.seconds, 6) << '\n';
    if (b_out.empty()) {
      std::cout << table.str();
    } else {
      auto out = detail::open_out(b_out);
      out << table.str();
    }
    return 0;
  }

  if (*stats) {
    std::ifstream in(st_table);
    if (!in) throw Error("cannot open " + st_table);
    std::string line;
    if (!std::getline(in, line) || line.rfind("instance,algo,value", 0) != 0)
      throw Error("not a bench table: " + st_table);
    std::map<int, std::map<std::string, double>> values;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto fields = split_list(line);
      if (fields.size() < 3) throw Error("malformed bench row: " + line);
      values[std::stoi(fields[0])][fields[1]] = std::stod(fields[2]);
    }
    PairedSample sample;
    sample.label_a1 = st_a1;
    sample.label_a2 = st_a2;
    for (const auto& [instance, by_algo] : values) {
      const auto i1 = by_algo.find(st_a1);
      const auto i2 = by_algo.find(st_a2);
      if (i1 == by_algo.end() || i2 == by_algo.end()) continue;
      sample.diffs.push_back(i2->second - i1->second);
    }
    std::cout << "a1,a2,M,n,mean,std,ci_lower,ci_upper,winner\n";
    if (st_method == "paired") {
      PairedCi ci = paired_ci(sample);
      std::cout << st_a1 << ',' << st_a2 << ',' << st_dims << ',' << st_card
                << ',' << detail::fmt_fixed(ci.mean, 3) << ','
                << detail::fmt_fixed(ci.stddev, 3) << ','
                << detail::fmt_fixed(ci.lower, 3) << ','
                << detail::fmt_fixed(ci.upper, 3) << ',' << to_string(ci.verdict)
                << "\n";
    } else {
      const ZeroPolicy policy =
          st_zero == "strict" ? ZeroPolicy::Strict : ZeroPolicy::Epsilon;
      CoxCi ci = cox_log_ci(sample, 0.95, policy);
      const std::string winner = ci.lower > 0.0 ? "VLSN" : "None";
      std::cout << st_a1 << ',' << st_a2 << ',' << st_dims << ',' << st_card
                << ',' << detail::fmt_fixed(ci.log_mean, 3) << ','
                << detail::fmt_fixed(ci.log_stddev, 3) << ','
                << detail::fmt_fixed(ci.lower, 3) << ','
                << detail::fmt_fixed(ci.upper, 3) << ',' << winner << "\n";
      if (ci.substituted > 0)
        std::cerr << "note: " << ci.substituted
                  << " non-positive differences floored\n";
    }
    return 0;
  }

  if (*ilp) {
    export_ilp(read_instance(i_in), i_out);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const axmap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
