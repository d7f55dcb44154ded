#include "doctest.h"
#include "permcode/error.hpp"
#include "permcode/reduction.hpp"
#include "permcode/stab_chain.hpp"

using namespace permcode;

namespace {

std::vector<bool> random_assignment(std::size_t n, Rng& rng) {
  std::vector<bool> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = rng() & 1;
  return a;
}

}  // namespace

TEST_CASE("DIMACS parsing") {
  auto inst = parse_dimacs("c example\np cnf 3 2\n1 -2 0\n-3 2 0\n");
  CHECK(inst.variables == 3);
  REQUIRE(inst.clauses.size() == 2);
  CHECK(inst.clauses[0] == Clause{{0, false}, {1, true}});
  CHECK(inst.clauses[1] == Clause{{2, true}, {1, false}});
  CHECK(inst.target == 2);
  CHECK(parse_dimacs("p cnf 2 1\n1\n2 0\n", 0).target == 0);
  CHECK(parse_dimacs(to_dimacs(inst)).clauses == inst.clauses);
  CHECK(parse_dimacs("p cnf 0 0\n").clauses.empty());

  for (const char* bad : {"1 2 0\n", "p cnf 2 1\n1 1 0\n", "p cnf 2 1\n1 -1 0\n", "p cnf 2 1\n1 3 0\n",
                          "p cnf 3 1\n1 2 3 0\n", "p cnf 2 2\n1 2 0\n", "p cnf 2 1\n1 x 0\n",
                          "p cnf 2 1\n1 2\n"}) {
    CHECK_THROWS_AS(parse_dimacs(bad), Error);
  }
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 0\n", 2), Error);
}

TEST_CASE("single clause gadget") {
  Max2SatInstance inst{2, {{{0, false}, {1, false}}}, 1};
  auto red = reduce(inst);
  CHECK(red.degree == 6);
  REQUIRE(red.generators.size() == 2);
  CHECK(red.generators[0] == Permutation::from_cycles(6, {{1, 2}, {3, 4}}));
  CHECK(red.generators[1] == Permutation::from_cycles(6, {{1, 2}, {5, 6}}));
  CHECK(red.sigma == Permutation::from_cycles(6, {{1, 2}, {3, 4}, {5, 6}}));
  CHECK(red.threshold == 4);
  CHECK(solve_subgroup_distance_brute(red).agreement == 4);

  auto sigma_for = [](bool a, bool b) { return reduce({2, {{{0, a}, {1, b}}}, 1}).sigma; };
  CHECK(sigma_for(true, true) == Permutation::from_cycles(6, {{1, 2}}));
  CHECK(sigma_for(true, false) == Permutation::from_cycles(6, {{5, 6}}));
  CHECK(sigma_for(false, true) == Permutation::from_cycles(6, {{3, 4}}));
}

TEST_CASE("brute-force Max-2-SAT") {
  Max2SatInstance one{2, {{{0, false}, {1, false}}}, 1};
  CHECK(solve_max2sat_brute(one).satisfied == 1);
  Max2SatInstance all4{2,
                       {{{0, false}, {1, false}},
                        {{0, true}, {1, false}},
                        {{0, false}, {1, true}},
                        {{0, true}, {1, true}}},
                       0};
  CHECK(solve_max2sat_brute(all4).satisfied == 3);
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    auto inst = random_max2sat(8, 12, rng);
    auto best = solve_max2sat_brute(inst);
    CHECK(4 * best.satisfied >= 3 * inst.clauses.size());
    CHECK(satisfied_count(inst, best.assignment) == best.satisfied);
  }
  Max2SatInstance big;
  big.variables = 25;
  CHECK_THROWS_AS(solve_max2sat_brute(big), Error);
}

TEST_CASE("empty formula and trivial groups") {
  auto red = reduce(Max2SatInstance{});
  CHECK(red.degree == 0);
  CHECK(red.generators.empty());
  auto sol = solve_subgroup_distance_brute(red);
  CHECK(sol.agreement == 0);
  CHECK(sol.agreement >= red.threshold);

  SubgroupDistanceInstance trivial{4, {}, Permutation::identity(4), 4};
  CHECK(solve_subgroup_distance_brute(trivial).agreement == 4);
  SubgroupDistanceInstance bad{3, {Permutation::from_cycles(3, {{1, 2, 3}})}, Permutation::identity(3), 0};
  CHECK_THROWS_AS(solve_subgroup_distance_brute(bad), Error);
}

TEST_CASE("reduction equivalence on random instances") {
  Rng rng(72);
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<std::size_t> nv(2, 10);
    const std::size_t n = nv(rng);
    std::uniform_int_distribution<std::size_t> nc((n + 1) / 2, 12);
    auto inst = random_max2sat(n, nc(rng), rng);
    std::vector<bool> seen(n, false);
    for (const auto& c : inst.clauses) seen[c.first.variable] = seen[c.second.variable] = true;
    CHECK(std::find(seen.begin(), seen.end(), false) == seen.end());

    auto red = reduce(inst);
    CHECK(commuting_involutions(red.generators));
    CHECK(build_chain(red.generators).order() == BigInt(1) << n);

    auto sat = solve_max2sat_brute(inst);
    auto dist = solve_subgroup_distance_brute(red);
    CHECK(dist.agreement == 4 * sat.satisfied);
    // Witnesses translate both ways.
    CHECK(agreement(assignment_element(red, sat.assignment), red.sigma) == 4 * sat.satisfied);
    auto mask = decompose(red, dist.element);
    REQUIRE(mask);
    CHECK(*mask == dist.generator_mask);
    CHECK(satisfied_count(inst, *mask) * 4 == dist.agreement);

    // Per clause: 4 agreements when satisfied, none otherwise.
    auto a = random_assignment(n, rng);
    auto g = assignment_element(red, a);
    for (std::size_t j = 0; j < inst.clauses.size(); ++j) {
      std::size_t agree = 0;
      for (Point x = static_cast<Point>(6 * j); x < 6 * j + 6; ++x) agree += g[x] == red.sigma[x];
      CHECK(agree == (clause_satisfied(inst.clauses[j], a) ? 4u : 0u));
    }
  }
  CHECK_THROWS_AS(random_max2sat(9, 4, rng), Error);
}

TEST_CASE("decomposition and JSON") {
  Rng rng(73);
  auto inst = random_max2sat(6, 7, rng);
  auto red = reduce(inst);
  for (int t = 0; t < 20; ++t) {
    auto a = random_assignment(6, rng);
    CHECK(decompose(red, assignment_element(red, a)) == a);
  }
  CHECK_FALSE(decompose(red, Permutation::from_cycles(red.degree, {{1, 3}})));
  CHECK_FALSE(decompose(red, Permutation::from_cycles(red.degree, {{1, 2, 3}})));

  auto back = subgroup_distance_from_json(to_json(red));
  CHECK(back.degree == red.degree);
  CHECK(back.generators == red.generators);
  CHECK(back.sigma == red.sigma);
  CHECK(back.threshold == red.threshold);
  CHECK(to_json(reduce({2, {{{0, false}, {1, false}}}, 1})) ==
        "{\"degree\":6,\"generators\":[[2,1,4,3,5,6],[2,1,3,4,6,5]],\"sigma\":[2,1,4,3,6,5],"
        "\"threshold\":4}\n");
  CHECK_THROWS_AS(subgroup_distance_from_json("{\"degree\":2}"), Error);
}
