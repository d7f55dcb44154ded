#include <map>

#include "doctest.h"
#include "permcode/error.hpp"
#include "permcode/perm.hpp"

using namespace permcode;

namespace {

Permutation P(std::vector<std::int64_t> one_based) { return Permutation::from_one_based(one_based); }

// Pointwise evaluation straight from the right-action definition.
std::vector<Point> apply_then(const Permutation& g, const Permutation& h) {
  std::vector<Point> out;
  for (Point x = 0; x < g.degree(); ++x) out.push_back(h[g[x]]);
  return out;
}

}  // namespace

TEST_CASE("compose follows the right action") {
  auto g = P({2, 3, 1});
  CHECK(compose(g, g) == P({3, 1, 2}));
  CHECK(compose(Permutation::identity(3), g) == g);
  CHECK(compose(g, inverse(g)).is_identity());
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    auto a = random_permutation(7, rng);
    auto b = random_permutation(7, rng);
    auto ab = compose(a, b);
    CHECK(std::vector<Point>(ab.images().begin(), ab.images().end()) == apply_then(a, b));
  }
  CHECK_THROWS_AS(compose(g, Permutation::identity(4)), Error);
}

TEST_CASE("inverse") {
  CHECK(inverse(P({2, 3, 1})) == P({3, 1, 2}));
  CHECK(inverse(Permutation::identity(5)).is_identity());
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    auto g = random_permutation(1 + t % 8, rng);
    CHECK(compose(g, inverse(g)).is_identity());
  }
}

TEST_CASE("validation of list forms") {
  std::vector<std::int64_t> bad{1, 1, 2};
  CHECK_THROWS_AS(Permutation::from_one_based(bad), Error);
  std::vector<std::int64_t> zero{0, 1};
  CHECK_THROWS_AS(Permutation::from_one_based(zero), Error);
  std::vector<std::int64_t> word{1, 1, 3};
  auto w = Word::from_one_based(word);
  CHECK_FALSE(w.is_permutation());
  CHECK(w.to_one_based() == word);
  std::vector<std::int64_t> out_of_range{1, 4, 3};
  CHECK_THROWS_AS(Word::from_one_based(out_of_range), Error);
}

TEST_CASE("hamming distance") {
  auto g = P({2, 3, 1});
  CHECK(hamming_distance(g, g) == 0);
  CHECK(hamming_distance(g, Permutation::identity(3)) == 3);
  CHECK_THROWS_AS(hamming_distance(g, Permutation::identity(4)), Error);
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    auto a = random_permutation(6, rng);
    auto b = random_permutation(6, rng);
    auto c = random_permutation(6, rng);
    auto k = random_permutation(6, rng);
    const auto ab = hamming_distance(a, b);
    CHECK(ab == support(compose(a, inverse(b))).size());
    CHECK(ab == 6 - fixed_points(compose(a, inverse(b))).size());
    CHECK(ab == hamming_distance(b, a));
    CHECK(hamming_distance(a, c) <= ab + hamming_distance(b, c));
    CHECK(ab == hamming_distance(compose(a, k), compose(b, k)));
    CHECK(ab == hamming_distance(conjugate(a, k), conjugate(b, k)));
    CHECK((ab == 0) == (a == b));
  }
}

TEST_CASE("support and fixed points") {
  CHECK(support(Permutation::identity(4)).empty());
  CHECK(support(P({2, 1, 3})) == std::vector<Point>{0, 1});
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    auto g = random_permutation(9, rng);
    CHECK(support(g).size() + fixed_points(g).size() == 9);
  }
}

TEST_CASE("cycle type") {
  CHECK(cycle_type(Permutation::identity(4)) == CycleType{1, 1, 1, 1});
  CHECK(cycle_type(P({2, 3, 1})) == CycleType{3});
  CHECK(cycle_type(P({2, 1, 4, 5, 3})) == CycleType{3, 2});
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    auto g = random_permutation(7, rng);
    auto k = random_permutation(7, rng);
    CHECK(cycle_type(g) == cycle_type(conjugate(g, k)));
  }
  CHECK(element_order(P({2, 1, 4, 5, 3})) == 6);
  CHECK(power(P({2, 1, 4, 5, 3}), 6).is_identity());
  CHECK(power(P({2, 3, 1}), -1) == P({3, 1, 2}));
}

TEST_CASE("random permutations") {
  Rng rng(6);
  CHECK(random_permutation(1, rng) == P({1}));
  Rng a(99), b(99);
  CHECK(random_permutation(20, a) == random_permutation(20, b));
  CHECK_THROWS_AS(random_permutation(0, rng), Error);

  std::map<Permutation, int> counts;
  const int draws = 60000;
  for (int t = 0; t < draws; ++t) ++counts[random_permutation(3, rng)];
  CHECK(counts.size() == 6);
  for (const auto& [g, c] : counts) {
    CHECK(c > draws / 6.0 * 0.95);
    CHECK(c < draws / 6.0 * 1.05);
  }
}

TEST_CASE("text forms") {
  auto g = P({2, 3, 1, 4});
  CHECK(to_list_string(g) == "[2,3,1,4]");
  CHECK(to_cycle_string(g) == "(1 2 3)");
  CHECK(to_cycle_string(Permutation::identity(3)) == "()");
  std::vector<std::vector<Point>> cyc{{1, 2, 3}};
  CHECK(Permutation::from_cycles(4, cyc) == g);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
}
