#include "permcode/ubb.hpp"

#include <algorithm>
#include <numeric>

#include "permcode/error.hpp"

namespace permcode {

UbbDecoder::UbbDecoder(std::vector<StabilizerChain> chains, std::size_t r)
    : chains_(std::move(chains)), r_(r) {}

std::optional<Permutation> UbbDecoder::decode(const Word& w, UbbDecodeStats* stats) const {
  std::vector<Point> images;
  std::vector<bool> seen;
  for (const auto& chain : chains_) {
    if (w.size() != chain.degree()) fail(ErrorCode::DegreeMismatch, "decode: word length mismatch");
    if (stats) ++stats->bases_tried;
    images.clear();
    seen.assign(w.size(), false);
    bool repeated = false;
    for (const auto& level : chain.levels()) {
      const Point s = w[level.base_point];
      if (seen[s]) {
        repeated = true;
        break;
      }
      seen[s] = true;
      images.push_back(s);
    }
    if (repeated) {
      if (stats) ++stats->bases_skipped;
      continue;
    }
    if (stats) ++stats->reconstructions;
    auto g = chain.reconstruct(images);
    if (g && hamming_distance(*g, w) <= r_) return g;
  }
  return std::nullopt;
}

UbbDecoder make_ubb_decoder(std::span<const Permutation> generators, const Ubb& ubb,
                            const BigInt& group_order, std::size_t r) {
  std::vector<StabilizerChain> chains;
  Rng rng(0x0bbULL);
  for (const auto& base : ubb.bases) {
    ChainOptions options;
    options.preferred_base = base;
    options.known_order = group_order;
    options.rng = &rng;
    StabilizerChain chain = StabilizerChain::build(generators, options);
    for (Point b : chain.base()) {
      if (std::find(base.begin(), base.end(), b) == base.end()) {
        fail(ErrorCode::InvalidArgument, "UBB member is not a base");
      }
    }
    chains.push_back(std::move(chain));
  }
  return UbbDecoder(std::move(chains), r);
}

namespace {

using Mask = std::vector<std::uint64_t>;

std::vector<Mask> masks_of(const Ubb& ubb, std::size_t n) {
  std::vector<Mask> masks;
  for (const auto& base : ubb.bases) {
    Mask mask((n + 63) / 64, 0);
    for (Point b : base) {
      if (b >= n) fail(ErrorCode::OutOfRange, "UBB point out of range");
      mask[b / 64] |= std::uint64_t{1} << (b % 64);
    }
    masks.push_back(std::move(mask));
  }
  return masks;
}

bool hits_every_base(const std::vector<Mask>& bases, const Mask& subset) {
  return std::all_of(bases.begin(), bases.end(), [&](const Mask& base) {
    for (std::size_t w = 0; w < base.size(); ++w) {
      if (base[w] & subset[w]) return true;
    }
    return false;
  });
}

}  // namespace

bool ubb_avoids_all(const Ubb& ubb, std::size_t n, std::size_t r) {
  if (r > n) return false;
  const auto bases = masks_of(ubb, n);
  if (bases.empty()) return false;
  std::vector<std::size_t> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  Mask subset((n + 63) / 64);
  while (true) {
    std::fill(subset.begin(), subset.end(), 0);
    for (std::size_t p : pick) subset[p / 64] |= std::uint64_t{1} << (p % 64);
    if (hits_every_base(bases, subset)) return false;
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == n - r + i - 1) --i;
    if (i == 0) return true;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::optional<std::vector<Point>> ubb_find_hitting_sample(const Ubb& ubb, std::size_t n,
                                                          std::size_t r, std::size_t samples,
                                                          Rng& rng) {
  const auto bases = masks_of(ubb, n);
  std::vector<Point> points(n);
  std::iota(points.begin(), points.end(), Point{0});
  Mask subset((n + 63) / 64);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < r; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(points[i], points[pick(rng)]);
    }
    std::fill(subset.begin(), subset.end(), 0);
    for (std::size_t i = 0; i < r; ++i) subset[points[i] / 64] |= std::uint64_t{1} << (points[i] % 64);
    if (hits_every_base(bases, subset)) {
      std::vector<Point> witness(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(r));
      std::sort(witness.begin(), witness.end());
      return witness;
    }
  }
  return std::nullopt;
}

}  // namespace permcode
