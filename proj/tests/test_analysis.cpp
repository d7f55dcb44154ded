#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "permcode/analysis.hpp"
#include "permcode/error.hpp"

using namespace permcode;

TEST_CASE("partitions") {
  auto empty = enumerate_partitions(0, 5, 2);
  REQUIRE(empty->size() == 1);
  CHECK(empty->front().parts.empty());

  auto three = enumerate_partitions(3, 3, 2);
  REQUIRE(three->size() == 2);
  CHECK(three->at(0).parts == std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {1, 1}});
  CHECK(three->at(1).parts == std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}});

  for (std::size_t k = 0; k <= 20; ++k) {
    for (std::size_t n : {1, 3, 7, 20}) {
      for (std::size_t r : {1, 2, 4, 20}) {
        auto parts = enumerate_partitions(k, n, r);
        CHECK(parts->size() == oracle::count_partitions(k, n, r));
        for (const auto& p : *parts) {
          CHECK(p.total() == k);
          CHECK(p.part_count() <= n);
          for (auto [size, mult] : p.parts) CHECK(size <= r);
        }
      }
    }
  }
  CHECK(enumerate_partitions(7, 4, 3).get() == enumerate_partitions(7, 4, 3).get());
}

TEST_CASE("correctable pattern count: closed forms") {
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{5, 3}, {5, 100}, {7, 10}, {9, 4}}) {
    const std::size_t r = (m - 1) / 2;
    CHECK(correctable_pattern_count(m, n, r, 0) == 1);
    CHECK(correctable_pattern_count(m, n, r, 1) == m * n);
    CHECK(correctable_pattern_count(m, n, r, 2) == binomial(m * n, 2));
    // Column-wise generating function: (sum_{i<=r} C(m,i) x^i)^n.
    BigInt all = 0, by_columns = 0;
    for (std::size_t k = 0; k <= n * r; ++k) all += correctable_pattern_count(m, n, r, k);
    BigInt per_column = 0;
    for (std::size_t i = 0; i <= r; ++i) per_column += binomial(m, i);
    by_columns = pow(per_column, static_cast<unsigned>(n));
    CHECK(all == by_columns);
    CHECK(correctable_pattern_count(m, n, r, n * r + 1) == 0);
  }
}

TEST_CASE("correctable pattern count against the majority decoder") {
  Rng rng(41);
  for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 4}, {3, 3}, {5, 2}, {4, 3}, {6, 2}, {3, 4}}) {
    WreathCode code(m, n);
    auto counts = oracle::majority_pattern_counts(code, rng);
    const std::size_t r = code.capacity();
    for (std::size_t k = 0; k <= code.degree(); ++k) {
      CHECK(correctable_pattern_count(m, n, r, k) == counts[k]);
    }
  }
}

TEST_CASE("success probability and thresholds") {
  CHECK(success_probability(5, 100, 2, 0) == 1);
  for (std::size_t k = 0; k <= 60; ++k) {
    auto p = success_probability(5, 100, 2, k);
    CHECK(p >= 0);
    CHECK(p <= 1);
  }
  CHECK(success_probability(5, 100, 2, 19) >= parse_probability("0.95"));
  CHECK(correctable_threshold(5, 100, 2, parse_probability("0.95")) == 19);
  CHECK(correctable_threshold(5, 100, 2, parse_probability("0.90")) == 24);
  CHECK(correctable_threshold(5, 100, 2, parse_probability("0.80")) == 31);
  CHECK(correctable_threshold(5, 100, 2, parse_probability("0.50")) == 46);
  std::size_t previous = 0;
  for (std::size_t n = 20; n <= 100; n += 10) {
    auto k = correctable_threshold(5, n, 2, parse_probability("0.95"));
    CHECK(k >= previous);
    previous = k;
  }
}

TEST_CASE("ISD exponent") {
  CHECK(isd_exponent(500, 0, 10).alpha == 0);
  CHECK(isd_exponent(500, 100, 0).alpha == 0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0) == 0);
  CHECK(binary_entropy(1) == 0);
  for (double k = 0; k < 400; k += 20) {
    for (double r = 0; r < 100; r += 5) {
      auto a = isd_exponent(500, k, r).alpha;
      CHECK(a >= 0);
      CHECK(a <= binary_entropy(r / 500) + 1e-12);
      CHECK(isd_exponent(500, k + 20, r).alpha >= a - 1e-12);
      CHECK(isd_exponent(500, k, r + 5).alpha >= a - 1e-12);
    }
  }
  auto sat = isd_exponent(10, 8, 5);
  CHECK(sat.saturated);
  CHECK(sat.alpha == doctest::Approx(binary_entropy(0.5)));
  CHECK(isd_exponent(10, 10, 1).saturated);
}

TEST_CASE("two-subsets security curve") {
  CHECK(security_bits_two_subsets(5) > 0);
  double peak = 0;
  for (std::size_t m = 5; m <= 1000; ++m) {
    const double b = security_bits_two_subsets(m);
    CHECK(b < 80);
    peak = std::max(peak, b);
  }
  CHECK(peak > 25);
  // Increasing once past the bend at m = 14; slightly decreasing from 9 to 14.
  for (std::size_t m = 14; m < 200; ++m) CHECK(security_bits_two_subsets(m + 1) > security_bits_two_subsets(m));
  CHECK(security_bits_two_subsets(9) > security_bits_two_subsets(14));
  CHECK_THROWS_AS(security_bits_two_subsets(4), Error);
}

TEST_CASE("CSV emission") {
  std::ostringstream empty;
  write_threshold_curve(empty, {});
  CHECK(empty.str() == "m,n,prob_level,max_k,error_rate\n");

  std::ostringstream curve;
  write_decoding_curve(curve, {{5}, {100}, {}});
  std::istringstream lines(curve.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "m,n,k,E_numerator_digits,ratio");
  bool found = false;
  while (std::getline(lines, line)) {
    if (line.rfind("5,100,19,", 0) == 0) {
      found = true;
      double ratio = std::stod(line.substr(line.rfind(',') + 1));
      CHECK(ratio >= 0.95);
    }
  }
  CHECK(found);

  std::ostringstream thresholds;
  write_threshold_curve(thresholds, {{5}, {100}, {"0.95", "0.90", "0.80", "0.50"}});
  CHECK(thresholds.str().find("5,100,0.95,19,0.038000\n") != std::string::npos);
  CHECK(thresholds.str().find("5,100,0.50,46,") != std::string::npos);

  std::ostringstream two;
  write_security_two_subsets(two, {{5, 10}, {}, {}});
  CHECK(two.str().rfind("m,bits\n5,", 0) == 0);

  std::ostringstream wreath;
  write_security_wreath(wreath, {{5, 7}, {10, 20}, {"0.95"}});
  const std::string text = wreath.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
