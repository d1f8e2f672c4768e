#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <axmap/io.hpp>

using namespace axmap;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(AXMAP_CLI_PATH) + " " + args;
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen writes reproducible instances", "[cli]") {
  REQUIRE(run("gen --dims 3 --card 3 --seed 42 --out cli_a.map >/dev/null") == 0);
  REQUIRE(run("gen --dims 3 --card 3 --seed 42 --out cli_b.map >/dev/null") == 0);
  CHECK(slurp("cli_a.map") == slurp("cli_b.map"));
  CostTensor t = read_instance("cli_a.map");
  CHECK(t.dims() == 3);
  CHECK(t.card() == 3);
}

TEST_CASE("solve honors the oracle bound and dominance", "[cli]") {
  REQUIRE(run("gen --dims 3 --card 3 --seed 42 --out cli_c.map >/dev/null") == 0);
  REQUIRE(run("solve --in cli_c.map --algo exact --out cli_exact.sol >/dev/null") == 0);
  REQUIRE(run("solve --in cli_c.map --algo greedy --out cli_greedy.sol >/dev/null") == 0);
  REQUIRE(run("solve --in cli_c.map --algo greedy-vlsn --out cli_gv.sol >/dev/null") == 0);
  SolutionFile exact = read_solution("cli_exact.sol", 3, 3);
  SolutionFile greedy = read_solution("cli_greedy.sol", 3, 3);
  SolutionFile gv = read_solution("cli_gv.sol", 3, 3);
  CHECK(exact.objective <= greedy.objective + 1e-12);
  CHECK(gv.objective <= greedy.objective + 1e-12);

  CostTensor t = read_instance("cli_c.map");
  CHECK(evaluate(t, exact.assignment) == Catch::Approx(exact.objective).margin(1e-9));
}

TEST_CASE("solve writes traces", "[cli]") {
  REQUIRE(run("gen --dims 3 --card 6 --seed 7 --out cli_d.map >/dev/null") == 0);
  REQUIRE(run("solve --in cli_d.map --algo vlsn1 --trace cli_d.trace --out cli_d.sol >/dev/null") == 0);
  const std::string trace = slurp("cli_d.trace");
  CHECK(trace.rfind("start ", 0) == 0);
  CHECK(trace.find("final ") != std::string::npos);
}

TEST_CASE("exit codes: usage 2, solver error 1, success 0", "[cli]") {
  CHECK(run("solve --in cli_c.map --algo warp-drive 2>/dev/null") == 2);
  CHECK(run("frobnicate 2>/dev/null") == 2);
  CHECK(run("solve --in does_not_exist.map --algo greedy 2>/dev/null") == 1);
  CHECK(run("gen --dims 3 --card 3 --seed 1 --out cli_ok.map >/dev/null 2>&1") == 0);
  // exact on an instance over the enumeration cap
  REQUIRE(run("gen --dims 3 --card 30 --seed 1 --out cli_big.map >/dev/null") == 0);
  CHECK(run("solve --in cli_big.map --algo exact 2>/dev/null") == 1);
}

TEST_CASE("ilp export through the CLI", "[cli]") {
  REQUIRE(run("gen --dims 2 --card 2 --seed 3 --out cli_e.map >/dev/null") == 0);
  REQUIRE(run("ilp-export --in cli_e.map --out cli_e.lp") == 0);
  const std::string lp = slurp("cli_e.lp");
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("Binary") != std::string::npos);
  CHECK(lp.find("x_2_2") != std::string::npos);
}

TEST_CASE("bench and stats pipeline", "[cli]") {
  REQUIRE(run("bench --dims 3 --card 4 --instances 6 --algos greedy,greedy-vlsn "
              "--seed 11 --out cli_bench.csv >/dev/null") == 0);
  const std::string table = slurp("cli_bench.csv");
  CHECK(table.rfind("instance,algo,value,nodes,seconds", 0) == 0);
  int lines = 0;
  for (char c : table) lines += c == '\n';
  CHECK(lines == 1 + 6 * 2);

  REQUIRE(run("stats --bench-table cli_bench.csv --a1 greedy-vlsn --a2 greedy "
              "--dims 3 --card 4 --method paired > cli_stats.csv") == 0);
  const std::string row = slurp("cli_stats.csv");
  CHECK(row.rfind("a1,a2,M,n,mean,std,ci_lower,ci_upper,winner", 0) == 0);
  CHECK(row.find("greedy-vlsn,greedy,3,4,") != std::string::npos);

  // identical algorithms tie
  REQUIRE(run("bench --dims 3 --card 4 --instances 5 --algos greedy,greedy "
              "--seed 11 --out cli_bench2.csv >/dev/null") == 0);
  REQUIRE(run("stats --bench-table cli_bench2.csv --a1 greedy --a2 greedy "
              "--method paired > cli_stats2.csv") == 0);
  CHECK(slurp("cli_stats2.csv").find("Tie") != std::string::npos);
}

TEST_CASE("linkage end to end", "[cli]") {
  {
    std::ofstream names("cli_names.txt");
    names << "Marie Curie\nLouis Pasteur\nRosalind Franklin\nGregor Mendel\n"
             "Barbara McClintock\nCharles Darwin\nLise Meitner\nNikola Tesla\n";
  }
  REQUIRE(run("link --sources cli_names.txt cli_names.txt cli_names.txt "
              "--error 10 --seed 4 --algo greedy-vlsn --report cli_link.txt "
              ">/dev/null") == 0);
  const std::string report = slurp("cli_link.txt");
  CHECK(report.find("recall ") != std::string::npos);
  CHECK(report.find("objective ") != std::string::npos);
  int tuple_lines = 0;
  std::stringstream ss(report);
  std::string line;
  while (std::getline(ss, line))
    if (line.find("correct") != std::string::npos ||
        line.find("wrong") != std::string::npos)
      ++tuple_lines;
  CHECK(tuple_lines == 8);
}

TEST_CASE("identical seeds give byte-identical outputs", "[cli]") {
  REQUIRE(run("solve --in cli_c.map --algo vlsnms --starts 4 --seed 9 "
              "--out cli_r1.sol >/dev/null") == 0);
  REQUIRE(run("solve --in cli_c.map --algo vlsnms --starts 4 --seed 9 "
              "--out cli_r2.sol >/dev/null") == 0);
  CHECK(slurp("cli_r1.sol") == slurp("cli_r2.sol"));
}
