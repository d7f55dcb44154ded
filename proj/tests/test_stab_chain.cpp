#include <algorithm>
#include <set>
#include <unordered_set>

#include "doctest.h"
#include "permcode/error.hpp"
#include "permcode/stab_chain.hpp"

using namespace permcode;

namespace {

Permutation P(std::vector<std::int64_t> one_based) { return Permutation::from_one_based(one_based); }
Permutation C(std::size_t n, std::vector<std::vector<Point>> cycles) {
  return Permutation::from_cycles(n, cycles);
}

// Closure of the generators by breadth-first multiplication.
std::unordered_set<Permutation> closure(const std::vector<Permutation>& gens) {
  std::unordered_set<Permutation> seen{Permutation::identity(gens.front().degree())};
  std::vector<Permutation> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& g : frontier) {
      for (const auto& s : gens) {
        auto h = compose(g, s);
        if (seen.insert(h).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Point> images(n);
  for (Point x = 0; x < n; ++x) images[x] = x;
  std::vector<Permutation> out;
  do out.emplace_back(images);
  while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// C_m wr S_n on points j*m+i, generated by a column shift and column moves.
std::vector<Permutation> small_wreath(std::size_t m, std::size_t n) {
  std::vector<Point> shift(m * n), swap(m * n), cyc(m * n);
  for (Point p = 0; p < m * n; ++p) shift[p] = swap[p] = cyc[p] = p;
  for (Point i = 0; i < m; ++i) {
    shift[i] = (i + 1) % m;
    swap[i] = m + i;
    swap[m + i] = i;
    for (Point j = 0; j < n; ++j) cyc[j * m + i] = static_cast<Point>(((j + 1) % n) * m + i);
  }
  return {Permutation(shift), Permutation(swap), Permutation(cyc)};
}

std::set<std::vector<Point>> as_set(const BlockSystem& b) {
  return {b.blocks.begin(), b.blocks.end()};
}

}  // namespace

TEST_CASE("orders") {
  CHECK(build_chain(std::vector{Permutation::identity(5)}).order() == 1);
  CHECK(build_chain(std::vector{Permutation::identity(5)}).base().empty());
  std::vector s4{C(4, {{1, 2}}), C(4, {{1, 2, 3, 4}})};
  CHECK(build_chain(s4).order() == 24);
  CHECK(build_chain(small_wreath(3, 2)).order() == 18);
  CHECK(build_chain(small_wreath(2, 3)).order() == 48);
  CHECK_THROWS_AS(build_chain(std::vector{Permutation::identity(3), Permutation::identity(4)}), Error);
}

TEST_CASE("order equals closure size on random subgroups") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + t % 6;
    std::vector gens{random_permutation(n, rng), random_permutation(n, rng)};
    auto chain = build_chain(gens, {}, &rng);
    auto elements = closure(gens);
    CHECK(chain.order() == elements.size());
    // Sifting accepts exactly the closure.
    if (n <= 6) {
      for (const auto& g : all_permutations(n)) CHECK(chain.contains(g) == elements.count(g));
    }
  }
}

TEST_CASE("known-order path agrees with the deterministic one") {
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 4 + t % 6;
    std::vector gens{random_permutation(n, rng), random_permutation(n, rng)};
    auto exact = build_chain(gens);
    ChainOptions options;
    options.known_order = exact.order();
    options.rng = &rng;
    auto fast = StabilizerChain::build(gens, options);
    CHECK(fast.order() == exact.order());
    for (int s = 0; s < 20; ++s) {
      auto g = random_permutation(n, rng);
      CHECK(fast.contains(g) == exact.contains(g));
    }
  }
  ChainOptions wrong;
  std::vector s4{C(4, {{1, 2}}), C(4, {{1, 2, 3, 4}})};
  wrong.known_order = BigInt(48);
  CHECK_THROWS_AS(StabilizerChain::build(s4, wrong), Error);
}

TEST_CASE("sifting") {
  std::vector a4{C(4, {{1, 2, 3}}), C(4, {{2, 3, 4}})};
  auto chain = build_chain(a4);
  CHECK(chain.order() == 12);
  CHECK(chain.contains(Permutation::identity(4)));
  CHECK_FALSE(chain.contains(C(4, {{1, 2}})));
  auto verdict = chain.sift(C(4, {{1, 2}}));
  CHECK_FALSE(verdict.member);
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    Permutation g = Permutation::identity(4);
    for (int k = 0; k < 6; ++k) g = compose(g, a4[rng() % 2]);
    CHECK(chain.contains(g));
  }
}

TEST_CASE("chain invariants") {
  Rng rng(14);
  for (int t = 0; t < 20; ++t) {
    std::vector gens{random_permutation(8, rng), random_permutation(8, rng)};
    auto chain = build_chain(gens, {}, &rng);
    BigInt product = 1;
    for (std::size_t i = 0; i < chain.levels().size(); ++i) {
      const auto& level = chain.levels()[i];
      CHECK(level.orbit.size() > 1);
      product *= level.orbit.size();
      for (std::size_t k = 0; k < level.orbit.size(); ++k) {
        CHECK(level.transversal[k][level.base_point] == level.orbit[k]);
        for (std::size_t l = 0; l < i; ++l) {
          const Point b = chain.levels()[l].base_point;
          CHECK(level.transversal[k][b] == b);
        }
      }
      CHECK(level.representative(level.base_point).is_identity());
    }
    CHECK(product == chain.order());
  }
}

TEST_CASE("preferred base") {
  std::vector s4{C(4, {{1, 2}}), C(4, {{1, 2, 3, 4}})};
  std::vector<Point> pref{3, 1};
  auto chain = build_chain(s4, pref);
  REQUIRE(chain.base().size() >= 2);
  CHECK(chain.base()[0] == 3);
  CHECK(chain.base()[1] == 1);
  // A redundant preferred point is dropped.
  std::vector<Point> redundant{0, 1, 2, 3};
  CHECK(build_chain(s4, redundant).base() == std::vector<Point>{0, 1, 2});
}

TEST_CASE("element reconstruction") {
  auto gens = small_wreath(3, 3);
  auto chain = build_chain(gens);
  std::vector<Point> base = chain.base();
  CHECK(chain.reconstruct(base)->is_identity());

  std::unordered_set<Permutation> realized;
  chain.for_each_element([&](const Permutation& g) {
    std::vector<Point> images;
    for (Point b : base) images.push_back(g[b]);
    auto back = chain.reconstruct(images);
    REQUIRE(back);
    CHECK(*back == g);
    realized.insert(g);
    return true;
  });
  CHECK(realized.size() == chain.order());

  // Exhaustive over all image tuples: exactly |G| are realizable.
  std::size_t found = 0;
  std::vector<Point> images(base.size(), 0);
  const std::size_t n = chain.degree();
  while (true) {
    if (auto g = chain.reconstruct(images)) {
      ++found;
      for (std::size_t i = 0; i < base.size(); ++i) CHECK((*g)[base[i]] == images[i]);
    }
    std::size_t i = 0;
    while (i < images.size() && ++images[i] == n) images[i++] = 0;
    if (i == images.size()) break;
  }
  CHECK(found == chain.order());

  std::vector<Permutation> fixer{C(4, {{1, 2}})};
  auto small = build_chain(fixer);
  std::vector<Point> bad{2};
  CHECK_FALSE(small.reconstruct(bad));
}

TEST_CASE("rank and unrank") {
  Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    std::vector gens{random_permutation(6, rng), random_permutation(6, rng)};
    auto chain = build_chain(gens, {}, &rng);
    const auto order = static_cast<std::size_t>(chain.order());
    std::set<Permutation> seen;
    for (std::size_t k = 0; k < order; ++k) {
      auto g = chain.element_from_rank(k);
      CHECK(chain.contains(g));
      CHECK(chain.rank_of(g) == BigInt(k));
      seen.insert(g);
    }
    CHECK(seen.size() == order);
    CHECK_THROWS_AS(chain.element_from_rank(chain.order()), Error);

    // The encoding depends on the group and base only.
    ChainOptions options;
    options.preferred_base = chain.base();
    options.known_order = chain.order();
    options.rng = &rng;
    std::vector shuffled{gens[1], gens[0], compose(gens[0], gens[1])};
    auto other = StabilizerChain::build(shuffled, options);
    REQUIRE(other.base() == chain.base());
    for (std::size_t k = 0; k < order; k += 1 + order / 50) {
      CHECK(other.element_from_rank(k) == chain.element_from_rank(k));
    }
  }
  std::vector a4{C(4, {{1, 2, 3}}), C(4, {{2, 3, 4}})};
  CHECK_FALSE(build_chain(a4).rank_of(C(4, {{1, 2}})));
}

TEST_CASE("check_base") {
  auto gens = small_wreath(2, 3);
  std::vector<Point> row{0, 2, 4};
  auto check = check_base(gens, row);
  CHECK(check.is_base);
  CHECK(check.irredundant);
  std::vector<Point> missing{0, 2};
  CHECK_FALSE(check_base(gens, missing).is_base);
  std::vector<Point> extra{0, 1, 2, 4};
  auto e = check_base(gens, extra);
  CHECK(e.is_base);
  CHECK_FALSE(e.irredundant);
}

TEST_CASE("block systems") {
  auto gens = small_wreath(3, 4);
  auto blocks = minimal_block_system(gens);
  std::set<std::vector<Point>> columns{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}};
  CHECK(as_set(blocks) == columns);
  CHECK(is_block_system(gens, blocks));
  CHECK(blocks.block_size() == 3);
  CHECK_FALSE(blocks.is_trivial());

  std::vector s4{C(4, {{1, 2}}), C(4, {{1, 2, 3, 4}})};
  CHECK(minimal_block_system(s4).is_trivial());
  CHECK(minimal_block_system(s4).blocks.size() == 4);

  std::vector<Permutation> intransitive{C(4, {{1, 2}})};
  CHECK_THROWS_AS(minimal_block_system(intransitive), Error);

  Rng rng(16);
  for (int t = 0; t < 10; ++t) {
    auto g = random_permutation(12, rng);
    std::vector<Permutation> conj;
    for (const auto& h : gens) conj.push_back(conjugate(h, g));
    std::set<std::vector<Point>> moved;
    for (const auto& b : columns) {
      std::vector<Point> image;
      for (Point x : b) image.push_back(g[x]);
      std::sort(image.begin(), image.end());
      moved.insert(image);
    }
    CHECK(as_set(minimal_block_system(conj)) == moved);
  }
}

TEST_CASE("coarsest block system is found above a finer one") {
  // S_4 is primitive on the columns, so the columns are coarsest; C_8 has
  // blocks of size 2 and 4.
  auto gens = small_wreath(2, 4);
  auto blocks = minimal_block_system(gens);
  CHECK(blocks.block_size() == 2);
  std::vector cyc8{C(8, {{1, 2, 3, 4, 5, 6, 7, 8}})};
  CHECK(minimal_block_system(cyc8).block_size() == 4);
}

TEST_CASE("centralizers") {
  CHECK(centralizer_elements(nullptr, Permutation::identity(3)).size() == 6);
  auto c = centralizer_elements(nullptr, C(3, {{1, 2}}));
  CHECK(c.size() == 2);
  CHECK(c.front().is_identity());
  std::set<Permutation> expect{Permutation::identity(3), C(3, {{1, 2}})};
  CHECK(std::set<Permutation>(c.begin(), c.end()) == expect);

  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 3 + t % 4;
    auto h = random_permutation(n, rng);
    auto elements = all_permutations(n);
    std::set<Permutation> brute, conj_class;
    for (const auto& z : elements) {
      if (conjugate(h, z) == h) brute.insert(z);
      conj_class.insert(conjugate(h, z));
    }
    auto cent = centralizer_elements(nullptr, h);
    CHECK(cent.size() == brute.size());
    CHECK(std::set<Permutation>(cent.begin(), cent.end()) == brute);
    CHECK(symmetric_centralizer_order(cycle_type(h)) == brute.size());
    CHECK(brute.size() * conj_class.size() == elements.size());
  }

  std::vector a4{C(4, {{1, 2, 3}}), C(4, {{2, 3, 4}})};
  auto ambient = build_chain(a4);
  auto in_a4 = centralizer_elements(&ambient, C(4, {{1, 2}, {3, 4}}));
  CHECK(in_a4.size() == 4);

  CentralizerOptions tight;
  tight.degree_limit = 5;
  CHECK_THROWS_AS(centralizer_elements(nullptr, Permutation::identity(6), tight), Error);
}

TEST_CASE("conjugating elements") {
  auto a = C(4, {{1, 2, 3}});
  auto b = C(4, {{2, 3, 4}});
  auto z = find_conjugating_element(a, b);
  REQUIRE(z);
  CHECK(conjugate(a, *z) == b);
  CHECK(find_conjugating_element(a, a)->is_identity());
  CHECK_FALSE(find_conjugating_element(a, C(4, {{1, 2}})));
  Rng rng(18);
  for (int t = 0; t < 50; ++t) {
    auto x = random_permutation(9, rng);
    auto y = conjugate(x, random_permutation(9, rng));
    auto w = find_conjugating_element(x, y);
    REQUIRE(w);
    CHECK(conjugate(x, *w) == y);
  }
}

TEST_CASE("orbits") {
  std::vector<Permutation> gens{C(6, {{1, 2}, {4, 5, 6}})};
  auto o = orbit(gens, 3);
  CHECK(std::set<Point>(o.begin(), o.end()) == std::set<Point>{3, 4, 5});
}
