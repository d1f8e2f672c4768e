#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <axmap/exact.hpp>
#include <axmap/genetic.hpp>

#include "oracles.hpp"

using namespace axmap;

TEST_CASE("fitness of identity columns on the zero tensor", "[genetic]") {
  CostTensor t = CostTensor::zeros(3, 4);
  Chromosome ch;
  ch.columns = {identity_perm(4), identity_perm(4), identity_perm(4)};
  CHECK(fitness(t, ch) == 0.0);
}

TEST_CASE("chromosome and assignment forms agree", "[genetic]") {
  Rng rng = seeded_rng(41);
  CostTensor t = generate_instance({3, 5, 314, CostDist::Uniform01});
  for (int trial = 0; trial < 25; ++trial) {
    Chromosome ch = random_chromosome(3, 5, rng);
    const double direct = fitness(t, ch);
    // independent summation straight off the rows
    double by_rows = 0.0;
    std::vector<int> idx(3);
    for (int r = 0; r < 5; ++r) {
      for (int k = 0; k < 3; ++k) idx[std::size_t(k)] = ch.columns[std::size_t(k)][std::size_t(r)];
      by_rows += t.at(idx);
    }
    CHECK(direct == Catch::Approx(by_rows).margin(1e-12));
    CHECK(evaluate(t, to_assignment(ch)) == Catch::Approx(direct).margin(1e-12));
  }
}

TEST_CASE("infeasible chromosomes are rejected", "[genetic]") {
  CostTensor t = CostTensor::zeros(3, 3);
  Chromosome bad;
  bad.columns = {identity_perm(3), {0, 0, 2}, identity_perm(3)};
  CHECK_THROWS_AS(fitness(t, bad), ValidationError);
  Chromosome wrong_shape;
  wrong_shape.columns = {identity_perm(3), identity_perm(3)};
  CHECK_THROWS_AS(fitness(t, wrong_shape), InstanceMismatchError);
}

TEST_CASE("crossover copies whole columns", "[genetic]") {
  Rng rng = seeded_rng(77);
  Chromosome a = random_chromosome(4, 6, rng);
  Chromosome b = random_chromosome(4, 6, rng);

  Chromosome same = crossover(a, a, std::uint64_t(5));
  for (int k = 0; k < 4; ++k) CHECK(same.columns[std::size_t(k)] == a.columns[std::size_t(k)]);

  int from_a = 0, from_b = 0, total = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    Chromosome child = crossover(a, b, rng);
    for (int k = 0; k < 4; ++k) {
      const bool is_a = child.columns[std::size_t(k)] == a.columns[std::size_t(k)];
      const bool is_b = child.columns[std::size_t(k)] == b.columns[std::size_t(k)];
      REQUIRE((is_a || is_b));
      from_a += is_a;
      from_b += is_b;
      ++total;
    }
  }
  // column source frequency within 5 sigma of one half
  const double sigma = std::sqrt(total * 0.25);
  CHECK(std::abs(from_a - total / 2.0) <= 5.0 * sigma);

  Chromosome small = random_chromosome(4, 5, rng);
  CHECK_THROWS_AS(crossover(a, small, std::uint64_t(1)), InstanceMismatchError);
}

TEST_CASE("evolution reaches the optimum of a tiny instance", "[genetic]") {
  CostTensor t = generate_instance({3, 2, 2718, CostDist::Uniform01});
  const double opt = oracle::brute_force_min(t);
  GaParams params;
  params.population = 20;
  params.generations = 50;
  params.seed = 3;
  GaResult res = evolve(t, params);
  CHECK(res.value == Catch::Approx(opt).margin(1e-12));
  CHECK(evaluate(t, res.best) == Catch::Approx(res.value).margin(1e-12));
}

TEST_CASE("per-generation best never worsens", "[genetic]") {
  CostTensor t = generate_instance({3, 6, 5150, CostDist::Uniform01});
  GaParams params;
  params.population = 30;
  params.generations = 40;
  params.seed = 8;
  GaResult res = evolve(t, params);
  REQUIRE(res.best_curve.size() == 40);
  for (std::size_t g = 1; g < res.best_curve.size(); ++g)
    CHECK(res.best_curve[g] <= res.best_curve[g - 1]);
  CHECK(res.value == res.best_curve.back());

  // population of one degenerates to elitist survival
  GaParams solo;
  solo.population = 1;
  solo.generations = 10;
  GaResult r1 = evolve(t, solo);
  for (std::size_t g = 1; g < r1.best_curve.size(); ++g)
    CHECK(r1.best_curve[g] <= r1.best_curve[g - 1]);
}

TEST_CASE("presets differ only in elite share and generations", "[genetic]") {
  GaParams a = ga1_params(1);
  GaParams b = ga2_params(1);
  CHECK(a.elite_pct == 60.0);
  CHECK(b.elite_pct == 40.0);
  CHECK(a.generations == 2000);
  CHECK(b.generations == 5000);
  CHECK(a.carry_pct == b.carry_pct);
  CHECK(a.cross_pct == b.cross_pct);
  CHECK(a.population == b.population);
}

TEST_CASE("parameter validation", "[genetic]") {
  CostTensor t = CostTensor::zeros(3, 2);
  GaParams bad;
  bad.carry_pct = 70.0;  // must stay below the elite share
  CHECK_THROWS_AS(evolve(t, bad), ValidationError);
  bad = GaParams{};
  bad.generations = 0;
  CHECK_THROWS_AS(evolve(t, bad), ValidationError);
  bad = GaParams{};
  bad.cross_pct = 0.0;
  CHECK_THROWS_AS(evolve(t, bad), ValidationError);
}

TEST_CASE("fixed seed reproduces the run", "[genetic]") {
  CostTensor t = generate_instance({3, 5, 12, CostDist::Uniform01});
  GaParams params;
  params.population = 25;
  params.generations = 30;
  params.seed = 99;
  GaResult a = evolve(t, params);
  GaResult b = evolve(t, params);
  CHECK(a.value == b.value);
  CHECK(a.best_curve == b.best_curve);
  CHECK(a.best.perms == b.best.perms);
}
