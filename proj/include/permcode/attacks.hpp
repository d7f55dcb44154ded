#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permcode/analysis.hpp"
#include "permcode/crypto.hpp"

namespace permcode {

/// Outcome of one attack run. `success` is only set after the recovered
/// material has been checked against the public data.
struct AttackReport {
  std::string attack;
  bool success = false;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> stream;  // rng stream seed of the winning worker
  double elapsed_ms = 0;
  std::string note;

  // Plaintext attacks.
  std::optional<Permutation> element;
  std::optional<BigInt> message;
  std::optional<std::size_t> distance;  // to the ciphertext word
  std::size_t nearest_count = 0;        // exhaustive enumeration only

  // Key recovery: a group H' and g' with g'^{-1} H' g' equal to the public group.
  std::vector<Permutation> recovered_generators;
  std::optional<Permutation> recovered_conjugator;
};

/// Message index of h when it lies in the public group, within distance r
/// of the ciphertext word and matches its checksum.
std::optional<BigInt> verify_plaintext(const PublicContext& pk, const Ciphertext& c,
                                       const Permutation& h);
/// True iff conjugating each generator by g lands in the public group and
/// the generated group has the public order.
bool verify_key(const PublicContext& pk, std::span<const Permutation> generators,
                const Permutation& conjugator);

inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;

/// Walks every element of the public group; reports the nearest one.
/// Throws LimitExceeded when the group order is over the limit.
AttackReport brute_force_enumerate(const PublicContext& pk, const Ciphertext& c,
                                   std::uint64_t limit = kDefaultEnumerationLimit);

/// C(n, r) (n-1)^r, the size of the search over words at distance r.
BigInt ball_bound(std::size_t n, std::size_t r);

/// Tries every permutation within distance r of the word: for each r-subset
/// of positions, every arrangement of the symbols missing from the rest.
/// Throws LimitExceeded when ball_bound is over the limit.
AttackReport brute_force_ball(const PublicContext& pk, const Ciphertext& c,
                              std::uint64_t limit = kDefaultEnumerationLimit);

struct IsdOptions {
  std::uint64_t max_iterations = 100'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// One information-set step: a chain on a freshly shuffled base, the
/// element whose base images are read off the word, accepted within
/// distance r.
std::optional<Permutation> isd_iteration(std::span<const Permutation> generators,
                                         const BigInt& order, const Word& w, std::size_t r,
                                         Rng& rng);

/// Repeats isd_iteration until a verified plaintext is found or the budget
/// is spent. Workers draw from streams derived from the seed; the first
/// success stops the others.
AttackReport isd_attack(const PublicContext& pk, const Ciphertext& c, const IsdOptions& options);

/// Decoding through the public group's block structure alone: the coarsest
/// block system, the kernel of the action on blocks (checked to be regular
/// on every block), then per-block votes for the block image and for the
/// kernel element.
class BlockSystemAttack {
 public:
  /// Throws Inapplicable without a nontrivial block system or when the
  /// kernel is not regular on some block.
  explicit BlockSystemAttack(const PublicContext& pk);

  const BlockSystem& blocks() const noexcept { return blocks_; }
  BigInt kernel_order() const;
  AttackReport attack(const Ciphertext& c) const;

 private:
  struct RegularAction {
    std::vector<Point> points;               // sorted block
    std::vector<std::vector<Point>> elements;  // local images
    std::vector<std::vector<std::uint32_t>> lookup;  // [a][b] -> element sending a to b
  };

  const PublicContext* pk_;
  BlockSystem blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> local_index_;
  StabilizerChain extended_;
  std::size_t block_levels_ = 0;
  std::vector<RegularAction> regular_;
};

AttackReport block_system_attack(const PublicContext& pk, const Ciphertext& c);

struct ConjugatorSearchOptions {
  std::uint64_t max_iterations = kDefaultEnumerationLimit;
  /// Public generator to pivot on; default is the one with the smallest
  /// centralizer.
  std::optional<std::size_t> pivot;
};

/// Cycle types of S_m whose action on 2-subsets has the given cycle type.
std::vector<CycleType> pullback_cycle_types(std::size_t m, const CycleType& induced);

/// Key recovery for the two-subsets family: finds g' with
/// g'^{-1} H g' equal to the public group, H the induced S_m.
AttackReport conjugator_search_attack(const PublicContext& pk, std::size_t m,
                                      const ConjugatorSearchOptions& options = {});

/// ISD work estimate from the family parameters: k_max = n for the wreath
/// code, m log2 m for two-subsets.
SecurityEstimate estimate_isd_cost(const FamilyParams& params, std::size_t errors);

}  // namespace permcode
