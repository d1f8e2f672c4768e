#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <axmap/exact.hpp>
#include <axmap/genetic.hpp>
#include <axmap/greedy.hpp>
#include <axmap/linkage.hpp>
#include <axmap/multistart.hpp>

#include "oracles.hpp"

using namespace axmap;

namespace {

// Table-style three-partite similarity example: the pairwise sims of the
// matched records along the true alignment, with 0.6/0.1 elsewhere.
CostTensor example_delta_tensor() {
  // sim tables between sources (A,B), (B,C), (A,C); 0-based
  double ab[3][3] = {{0.4, 0.6, 0.6}, {0.6, 0.6, 0.6}, {0.6, 0.6, 1.0}};
  double bc[3][3] = {{1.0, 0.1, 0.1}, {0.1, 1.0, 0.1}, {0.1, 0.1, 1.0}};
  double ac[3][3] = {{1.0, 0.1, 0.1}, {0.1, 1.0, 0.1}, {0.1, 0.1, 1.0}};
  std::vector<double> costs;
  costs.reserve(27);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        costs.push_back((1.0 - ab[i][j]) + (1.0 - bc[j][k]) + (1.0 - ac[i][k]));
  return CostTensor(3, 3, costs);
}

}  // namespace

TEST_CASE("recovers the true matching of the similarity example", "[exact]") {
  CostTensor t = example_delta_tensor();
  // matched-tuple dissimilarities: sims (0.4, 1, 1) -> 0.6 and (1, 1, 1) -> 0
  std::vector<int> idx{0, 0, 0};
  CHECK(t.at(idx) == Catch::Approx(0.6).margin(1e-12));
  idx = {1, 1, 1};
  CHECK(t.at(idx) == Catch::Approx(0.4).margin(1e-12));
  idx = {2, 2, 2};
  CHECK(t.at(idx) == Catch::Approx(0.0).margin(1e-12));
  ExactResult res = brute_force(t);
  CHECK(res.value == Catch::Approx(1.0).margin(1e-9));
  CHECK(res.assignment.perms == Assignment::identity(3, 3).perms);
  CHECK(res.value == Catch::Approx(oracle::brute_force_min(t)).margin(1e-12));
}

TEST_CASE("single-cell instance", "[exact]") {
  CostTensor t(3, 1, {0.75});
  ExactResult res = brute_force(t);
  CHECK(res.value == 0.75);
  CHECK(res.explored == 1);
}

TEST_CASE("matches the enumeration oracle", "[exact]") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    CostTensor t3 = generate_instance({3, 4, 100 + seed, CostDist::Uniform01});
    CHECK(brute_force(t3).value ==
          Catch::Approx(oracle::brute_force_min(t3)).margin(1e-12));
    CostTensor t4 = generate_instance({4, 3, 200 + seed, CostDist::Uniform01});
    CHECK(brute_force(t4).value ==
          Catch::Approx(oracle::brute_force_min(t4)).margin(1e-12));
  }
  // negative costs keep the pruning bound valid
  CostTensor t = generate_instance({3, 4, 9, CostDist::Uniform01});
  std::vector<double> costs = t.costs();
  for (double& c : costs) c -= 0.5;
  CostTensor shifted(3, 4, costs);
  CHECK(brute_force(shifted).value ==
        Catch::Approx(oracle::brute_force_min(shifted)).margin(1e-12));
}

TEST_CASE("lower-bounds every heuristic", "[exact]") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CostTensor t = generate_instance({3, 4, 300 + seed, CostDist::Uniform01});
    const double opt = brute_force(t).value;
    CHECK(greedy_solve(t).value >= opt - 1e-12);
    StartStrategy identity;
    CHECK(multi_start_solve(t, identity).value >= opt - 1e-12);
    GaParams ga;
    ga.population = 20;
    ga.generations = 20;
    ga.seed = seed;
    CHECK(evolve(t, ga).value >= opt - 1e-12);
  }
}

TEST_CASE("enumeration cap", "[exact]") {
  CostTensor t = generate_instance({4, 20, 1, CostDist::Uniform01});
  CHECK_THROWS_AS(brute_force(t), TooLargeForExactError);
}

TEST_CASE("LP export counts variables and constraints", "[exact]") {
  {
    CostTensor t = generate_instance({2, 2, 3, CostDist::Uniform01});
    std::stringstream lp;
    export_ilp(t, lp);
    const std::string text = lp.str();
    int binaries = 0, constraints = 0;
    std::stringstream in(text);
    std::string line;
    bool in_binary = false;
    while (std::getline(in, line)) {
      if (line == "Binary") in_binary = true;
      else if (line == "End") in_binary = false;
      else if (in_binary) ++binaries;
      if (line.find(" = 1") != std::string::npos) ++constraints;
    }
    CHECK(binaries == 4);
    CHECK(constraints == 4);
  }
  {
    CostTensor t = generate_instance({3, 3, 3, CostDist::Uniform01});
    std::stringstream lp;
    export_ilp(t, lp);
    const std::string text = lp.str();
    int binaries = 0, constraints = 0;
    std::stringstream in(text);
    std::string line;
    bool in_binary = false;
    while (std::getline(in, line)) {
      if (line == "Binary") in_binary = true;
      else if (line == "End") in_binary = false;
      else if (in_binary) ++binaries;
      if (line.find(" = 1") != std::string::npos) ++constraints;
    }
    CHECK(binaries == 27);
    CHECK(constraints == 9);
  }
}

TEST_CASE("exported example solves to the known optimum externally", "[exact][external]") {
  if (std::system("python3 -c 'import scipy' >/dev/null 2>&1") != 0) {
    SKIP("scipy not available");
  }
  CostTensor t = example_delta_tensor();
  const std::string lp_path = "table1.lp";
  export_ilp(t, lp_path);
  const std::string cmd = "python3 " AXMAP_TEST_DIR "/solve_lp.py " + lp_path +
                          " > table1.lp.out 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream in("table1.lp.out");
  double objective = -1.0;
  in >> objective;
  CHECK(objective == Catch::Approx(1.0).margin(1e-6));
}
