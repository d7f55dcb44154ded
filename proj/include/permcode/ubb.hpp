#pragma once

#include <optional>
#include <vector>

#include "permcode/perm.hpp"
#include "permcode/stab_chain.hpp"

namespace permcode {

/// A family of bases such that every r-subset of points misses at least one.
struct Ubb {
  std::vector<std::vector<Point>> bases;
};

struct UbbDecodeStats {
  std::size_t bases_tried = 0;
  std::size_t bases_skipped = 0;  // repeated symbol on the base positions
  std::size_t reconstructions = 0;
};

/// Decodes by trying every base of a UBB in turn: read the received symbols
/// at the base points, reconstruct the unique group element with those base
/// images, accept it if it lies within distance r of the word.
class UbbDecoder {
 public:
  UbbDecoder() = default;
  /// One chain per base; each chain's base must be drawn from its UBB base.
  UbbDecoder(std::vector<StabilizerChain> chains, std::size_t r);

  std::size_t capacity() const noexcept { return r_; }
  std::size_t size() const noexcept { return chains_.size(); }
  const StabilizerChain& chain(std::size_t i) const { return chains_.at(i); }

  std::optional<Permutation> decode(const Word& w, UbbDecodeStats* stats = nullptr) const;

 private:
  std::vector<StabilizerChain> chains_;
  std::size_t r_ = 0;
};

/// Builds the per-base chains for a UBB of <generators> (order known).
UbbDecoder make_ubb_decoder(std::span<const Permutation> generators, const Ubb& ubb,
                            const BigInt& group_order, std::size_t r);

/// True iff no r-subset of {0..n-1} meets every base. Exhaustive.
bool ubb_avoids_all(const Ubb& ubb, std::size_t n, std::size_t r);
/// Monte Carlo check: an r-subset meeting every base among the random
/// samples, or nullopt.
std::optional<std::vector<Point>> ubb_find_hitting_sample(const Ubb& ubb, std::size_t n,
                                                          std::size_t r, std::size_t samples,
                                                          Rng& rng);

}  // namespace permcode
