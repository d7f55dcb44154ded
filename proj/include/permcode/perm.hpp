#pragma once

// List-form permutations and words under the right-action convention:
// x.(gh) = (x.g).h. Points are 0-based in memory; everything that crosses a
// serialization boundary is 1-based.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace permcode {

using Point = std::uint32_t;
using Rng = std::mt19937_64;

class Permutation {
 public:
  Permutation() = default;

  /// Takes 0-based images; throws InvalidArgument unless they form a
  /// bijection on {0..n-1}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  static Permutation from_one_based(std::span<const std::int64_t> images);
  /// Builds from 1-based disjoint cycles, e.g. {{1,2},{3,4,5}}.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point x) const noexcept { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }
  std::vector<std::int64_t> to_one_based() const;

  bool is_identity() const noexcept;

  /// Right-action product: x.(g * h) = (x.g).h
  Permutation operator*(const Permutation& rhs) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}
  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);
  friend Permutation power(const Permutation&, std::int64_t);

  std::vector<Point> images_;
};

/// A received list of n symbols from {0..n-1}; repeats allowed.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Point> symbols);
  explicit Word(const Permutation& g);
  static Word from_one_based(std::span<const std::int64_t> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  Point operator[](std::size_t x) const noexcept { return symbols_[x]; }
  void set(std::size_t x, Point symbol);
  std::span<const Point> symbols() const noexcept { return symbols_; }
  std::vector<std::int64_t> to_one_based() const;
  bool is_permutation() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Point> symbols_;
};

using CycleType = std::vector<std::size_t>;  // parts in non-increasing order

Permutation compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& g);
Permutation power(const Permutation& g, std::int64_t exponent);
/// g^{-1} h g
Permutation conjugate(const Permutation& h, const Permutation& g);

std::size_t hamming_distance(std::span<const Point> a, std::span<const Point> b);
inline std::size_t hamming_distance(const Permutation& a, const Permutation& b) {
  return hamming_distance(a.images(), b.images());
}
inline std::size_t hamming_distance(const Word& a, const Permutation& b) {
  return hamming_distance(a.symbols(), b.images());
}
inline std::size_t hamming_distance(const Permutation& a, const Word& b) {
  return hamming_distance(a.images(), b.symbols());
}
inline std::size_t hamming_distance(const Word& a, const Word& b) {
  return hamming_distance(a.symbols(), b.symbols());
}

std::vector<Point> support(const Permutation& g);
std::vector<Point> fixed_points(const Permutation& g);
/// Disjoint cycles (0-based), each starting at its smallest point, ordered
/// by starting point; fixed points included as 1-cycles.
std::vector<std::vector<Point>> cycles(const Permutation& g);
CycleType cycle_type(const Permutation& g);
std::uint64_t element_order(const Permutation& g);

/// Uniform over S_n (Fisher-Yates).
Permutation random_permutation(std::size_t degree, Rng& rng);

/// Canonical text form: JSON array of 1-based images without spaces.
std::string to_list_string(const Permutation& g);
/// Cycle notation, for diagnostics only.
std::string to_cycle_string(const Permutation& g);

/// splitmix64 step, used to derive independent rng streams from one seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace permcode

template <>
struct std::hash<permcode::Permutation> {
  std::size_t operator()(const permcode::Permutation& g) const noexcept;
};
