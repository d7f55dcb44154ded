#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "permcode/bigint.hpp"
#include "permcode/perm.hpp"

namespace permcode {

struct ChainOptions {
  /// The base starts with these points (redundant ones are dropped).
  std::vector<Point> preferred_base;
  /// Shuffles the order in which further base points are chosen and drives
  /// the random Schreier-Sims path. Without it points are taken ascending.
  Rng* rng = nullptr;
  /// When set, random Schreier-Sims runs until the product of orbit sizes
  /// reaches this order; reaching it certifies the chain. It must be the
  /// true order of the generated group.
  std::optional<BigInt> known_order;
  /// Known-order path: consecutive trivially-sifting random elements after
  /// which the generators are declared to generate a smaller group.
  std::size_t stall_limit = 64;
};

/// A base and strong generating set with explicit transversals.
/// Immutable after build.
class StabilizerChain {
 public:
  struct Level {
    Point base_point = 0;
    std::vector<std::size_t> generator_ids;  // into strong_generators()
    std::vector<Point> orbit;
    std::vector<std::int32_t> position;     // per point: index into orbit or -1
    std::vector<Permutation> transversal;   // base_point . transversal[k] == orbit[k]

    bool in_orbit(Point x) const { return position[x] >= 0; }
    const Permutation& representative(Point x) const { return transversal[position[x]]; }
  };

  struct SiftResult {
    Permutation residue;
    std::size_t failed_level = 0;  // == levels().size() when every level passed
    bool member = false;
  };

  static StabilizerChain build(std::span<const Permutation> generators,
                               const ChainOptions& options = {});

  std::size_t degree() const noexcept { return degree_; }
  std::vector<Point> base() const;
  const std::vector<Level>& levels() const noexcept { return levels_; }
  const std::vector<Permutation>& strong_generators() const noexcept { return strong_; }
  BigInt order() const;

  SiftResult sift(const Permutation& g) const;
  bool contains(const Permutation& g) const { return sift(g).member; }

  /// Element reconstruction: the unique g with base[i].g == images[i], or
  /// nullopt when no such element exists.
  std::optional<Permutation> reconstruct(std::span<const Point> images) const;

  /// Bijection [0, |G|) -> G determined by the group and the base only (not
  /// by the strong generators): level i contributes a digit selecting the
  /// base image of b_i among its sorted admissible images. Level 0 is the
  /// least significant digit.
  Permutation element_from_rank(const BigInt& rank) const;
  std::optional<BigInt> rank_of(const Permutation& g) const;

  /// Visits every element once; stops early when visit returns false.
  /// Returns false if stopped.
  bool for_each_element(const std::function<bool(const Permutation&)>& visit) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> strong_;
  std::vector<Level> levels_;

  friend class ChainBuilder;
};

StabilizerChain build_chain(std::span<const Permutation> generators,
                            std::span<const Point> preferred_base = {}, Rng* rng = nullptr);

struct BaseCheck {
  bool is_base = false;
  bool irredundant = false;  // every point of the list survives as a base point
};
/// Decides whether the point list is a base of <generators>, and whether it
/// is irredundant in the given order.
BaseCheck check_base(std::span<const Permutation> generators, std::span<const Point> points,
                     const std::optional<BigInt>& known_order = std::nullopt);

struct BlockSystem {
  std::vector<std::vector<Point>> blocks;  // each sorted; ordered by smallest point

  std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
  bool is_trivial() const;
  /// block index of every point
  std::vector<std::size_t> block_of(std::size_t degree) const;
};

/// Finest block system in which all the seed points lie in one block.
BlockSystem finest_block_system(std::span<const Permutation> generators,
                                std::span<const Point> seed);
/// Coarsest nontrivial block system reachable by pair seeding followed by
/// coarsening; the singleton system for primitive groups. Throws
/// Inapplicable for intransitive input.
BlockSystem minimal_block_system(std::span<const Permutation> generators);
bool is_block_system(std::span<const Permutation> generators, const BlockSystem& system);

struct CentralizerOptions {
  std::size_t degree_limit = 12;
};

/// Visits {z in <ambient> : z^{-1} h z = h}, identity first; nullptr ambient
/// means the full symmetric group. Throws LimitExceeded above the degree
/// limit. Returns false when stopped by the visitor.
bool for_each_centralizer_element(const StabilizerChain* ambient, const Permutation& h,
                                  const std::function<bool(const Permutation&)>& visit,
                                  const CentralizerOptions& options = {});
std::vector<Permutation> centralizer_elements(const StabilizerChain* ambient,
                                              const Permutation& h,
                                              const CentralizerOptions& options = {});
/// |C_{S_n}(h)| from the cycle type: prod_l l^{c_l} c_l!
BigInt symmetric_centralizer_order(const CycleType& type);

/// Some z with z^{-1} a z = b (cycles aligned in canonical order; identity
/// when a == b), or nullopt when the cycle types differ.
std::optional<Permutation> find_conjugating_element(const Permutation& a, const Permutation& b);

/// Orbit of a point under the generators, in discovery order.
std::vector<Point> orbit(std::span<const Permutation> generators, Point start);

}  // namespace permcode
