#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "permcode/bigint.hpp"

namespace permcode {

/// A partition of k written as (part size, multiplicity) pairs, largest
/// part first.
struct Partition {
  std::vector<std::pair<std::size_t, std::size_t>> parts;

  std::size_t total() const;
  std::size_t part_count() const;
  std::size_t multiplicity(std::size_t size) const;
  /// Number of parts strictly smaller than `size`.
  std::size_t parts_below(std::size_t size) const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// All partitions of k into at most n parts, each at most r. Memoized.
std::shared_ptr<const std::vector<Partition>> enumerate_partitions(std::size_t k, std::size_t n,
                                                                   std::size_t r);

/// Number of k-subsets of the m x n grid with at most r positions in every
/// column; 0 when k > n*r.
BigInt correctable_pattern_count(std::size_t m, std::size_t n, std::size_t r, std::size_t k);
/// correctable_pattern_count / C(mn, k).
BigRational success_probability(std::size_t m, std::size_t n, std::size_t r, std::size_t k);
/// Largest k such that every k' <= k has success probability >= level.
std::size_t correctable_threshold(std::size_t m, std::size_t n, std::size_t r,
                                  const BigRational& level);

double binary_entropy(double p);

struct IsdExponent {
  double alpha = 0;
  bool saturated = false;  // r > n - k: no error-free information set exists
};
/// alpha(k, r) = H2(r/n) - (1 - k/n) H2(r/(n-k)); H2(r/n) when saturated.
IsdExponent isd_exponent(double n, double k, double r);

struct SecurityEstimate {
  double n = 0;
  double k_max = 0;
  double r = 0;
  double alpha = 0;
  double bits = 0;
  bool saturated = false;
};
SecurityEstimate estimate_security(double n, double k_max, double r);

/// ISD bit security of S_m on 2-subsets: n = m(m-1)/2, k_max = m log2 m,
/// r = m - 3.
double security_bits_two_subsets(std::size_t m);

struct CurveGrid {
  std::vector<std::size_t> ms;
  std::vector<std::size_t> ns;
  std::vector<std::string> levels;  // exact decimal or p/q strings
};

// CSV writers; each writes its header even for an empty grid.
void write_decoding_curve(std::ostream& out, const CurveGrid& grid);
void write_threshold_curve(std::ostream& out, const CurveGrid& grid);
void write_security_wreath(std::ostream& out, const CurveGrid& grid);
void write_security_two_subsets(std::ostream& out, const CurveGrid& grid);

}  // namespace permcode
