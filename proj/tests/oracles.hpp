#pragma once

// Independent brute-force oracles shared by the unit tests and the
// acceptance runner.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "permcode/perm.hpp"
#include "permcode/wreath.hpp"

namespace oracle {

using permcode::Permutation;
using permcode::Point;
using permcode::Word;

/// Whether decode_majority recovers g for every tried symbol assignment on
/// the corrupted positions: one adversarial assignment (all errors of a
/// column vote for the same wrong shift and the same wrong column) and
/// `random_trials` uniform wrong-symbol assignments.
inline bool majority_corrects(const permcode::WreathCode& code, const Permutation& g,
                              const std::vector<Point>& positions, int random_trials,
                              permcode::Rng& rng) {
  const std::size_t m = code.m(), n = code.n(), N = code.degree();
  Word adversarial(g);
  for (Point x : positions) {
    const Point s = g[x];
    const Point row = s % m, column = s / m;
    adversarial.set(x, static_cast<Point>(((column + 1) % n) * m + (row + 1) % m));
  }
  auto first = code.decode_majority(adversarial);
  if (!first.element || *first.element != g) return false;
  std::uniform_int_distribution<Point> pick(0, static_cast<Point>(N - 2));
  for (int t = 0; t < random_trials; ++t) {
    Word w(g);
    for (Point x : positions) {
      Point s = pick(rng);
      if (s >= g[x]) ++s;
      w.set(x, s);
    }
    auto out = code.decode_majority(w);
    if (!out.element || *out.element != g) return false;
  }
  return true;
}

/// counts[k] = number of k-subsets of positions that majority decoding
/// corrects, by exhaustive enumeration of all 2^(mn) position sets.
inline std::vector<std::uint64_t> majority_pattern_counts(const permcode::WreathCode& code,
                                                          permcode::Rng& rng,
                                                          int random_trials = 20) {
  const std::size_t N = code.degree();
  std::vector<std::uint64_t> counts(N + 1, 0);
  const Permutation g = code.to_permutation(code.random_element(rng));
  std::vector<Point> positions;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
    positions.clear();
    for (Point x = 0; x < N; ++x) {
      if (mask >> x & 1u) positions.push_back(x);
    }
    if (majority_corrects(code, g, positions, random_trials, rng)) ++counts[positions.size()];
  }
  return counts;
}

/// Partitions of k into at most n parts of size at most r, generated as
/// non-increasing sequences.
inline std::size_t count_partitions(std::size_t k, std::size_t n, std::size_t r) {
  if (k == 0) return 1;
  if (n == 0 || r == 0) return 0;
  std::size_t total = 0;
  for (std::size_t first = 1; first <= std::min(k, r); ++first) {
    total += count_partitions(k - first, n - 1, first);
  }
  return total;
}

}  // namespace oracle
