#include "permcode/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <tuple>

#include "permcode/error.hpp"

namespace permcode {

std::size_t Partition::total() const {
  std::size_t k = 0;
  for (auto [size, mult] : parts) k += size * mult;
  return k;
}

std::size_t Partition::part_count() const {
  std::size_t c = 0;
  for (auto [size, mult] : parts) c += mult;
  return c;
}

std::size_t Partition::multiplicity(std::size_t size) const {
  for (auto [s, mult] : parts) {
    if (s == size) return mult;
  }
  return 0;
}

std::size_t Partition::parts_below(std::size_t size) const {
  std::size_t c = 0;
  for (auto [s, mult] : parts) {
    if (s < size) c += mult;
  }
  return c;
}

namespace {

void partitions_into(std::size_t rest, std::size_t largest, std::size_t slots, Partition& current,
                     std::vector<Partition>& out) {
  if (rest == 0) {
    out.push_back(current);
    return;
  }
  if (largest == 0 || slots == 0) return;
  for (std::size_t size = std::min(largest, rest); size >= 1; --size) {
    for (std::size_t mult = std::min(rest / size, slots); mult >= 1; --mult) {
      current.parts.emplace_back(size, mult);
      partitions_into(rest - size * mult, size - 1, slots - mult, current, out);
      current.parts.pop_back();
    }
  }
}

}  // namespace

std::shared_ptr<const std::vector<Partition>> enumerate_partitions(std::size_t k, std::size_t n,
                                                                   std::size_t r) {
  static std::mutex mutex;
  static std::map<std::tuple<std::size_t, std::size_t, std::size_t>,
                  std::shared_ptr<const std::vector<Partition>>>
      cache;
  const auto key = std::make_tuple(k, n, r);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto out = std::make_shared<std::vector<Partition>>();
  Partition current;
  partitions_into(k, r, n, current, *out);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(out)).first->second;
}

BigInt correctable_pattern_count(std::size_t m, std::size_t n, std::size_t r, std::size_t k) {
  if (k > n * r) return 0;
  BigInt total = 0;
  for (const auto& p : *enumerate_partitions(k, n, r)) {
    BigInt term = 1;
    for (std::size_t i = 1; i <= r; ++i) {
      const std::size_t f = p.multiplicity(i);
      term *= binomial(n - p.parts_below(i), f);
      term *= pow(binomial(m, i), static_cast<unsigned>(f));
    }
    total += term;
  }
  return total;
}

BigRational success_probability(std::size_t m, std::size_t n, std::size_t r, std::size_t k) {
  if (k > m * n) fail(ErrorCode::OutOfRange, "success_probability: k exceeds mn");
  return BigRational(correctable_pattern_count(m, n, r, k), binomial(m * n, k));
}

std::size_t correctable_threshold(std::size_t m, std::size_t n, std::size_t r,
                                  const BigRational& level) {
  std::size_t k = 0;
  while (k < m * n && success_probability(m, n, r, k + 1) >= level) ++k;
  return k;
}

double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

IsdExponent isd_exponent(double n, double k, double r) {
  if (n <= 0 || k < 0 || r < 0) fail(ErrorCode::InvalidArgument, "isd_exponent: bad parameters");
  if (r == 0 || k == 0) return {0, false};
  if (k >= n || r > n - k) return {binary_entropy(r / n), true};
  return {binary_entropy(r / n) - (1 - k / n) * binary_entropy(r / (n - k)), false};
}

SecurityEstimate estimate_security(double n, double k_max, double r) {
  auto e = isd_exponent(n, k_max, r);
  return {n, k_max, r, e.alpha, e.alpha * n, e.saturated};
}

double security_bits_two_subsets(std::size_t m) {
  if (m < 5) fail(ErrorCode::InvalidArgument, "security_bits_two_subsets: m must be >= 5");
  const double md = static_cast<double>(m);
  return estimate_security(md * (md - 1) / 2, md * std::log2(md), md - 3).bits;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string ratio_text(const BigRational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", static_cast<double>(q));
  return buf;
}

std::size_t wreath_capacity(std::size_t m) { return (m - 1) / 2; }

}  // namespace

void write_decoding_curve(std::ostream& out, const CurveGrid& grid) {
  out << "m,n,k,E_numerator_digits,ratio\n";
  for (std::size_t m : grid.ms) {
    const std::size_t r = wreath_capacity(m);
    for (std::size_t n : grid.ns) {
      for (std::size_t k = 0; k <= n * r; ++k) {
        BigInt e = correctable_pattern_count(m, n, r, k);
        out << m << ',' << n << ',' << k << ',' << e << ','
            << ratio_text(BigRational(e, binomial(m * n, k))) << '\n';
      }
    }
  }
}

void write_threshold_curve(std::ostream& out, const CurveGrid& grid) {
  out << "m,n,prob_level,max_k,error_rate\n";
  for (std::size_t m : grid.ms) {
    for (std::size_t n : grid.ns) {
      for (const auto& level : grid.levels) {
        const std::size_t k = correctable_threshold(m, n, wreath_capacity(m), parse_probability(level));
        out << m << ',' << n << ',' << level << ',' << k << ','
            << fixed(static_cast<double>(k) / static_cast<double>(m * n), 6) << '\n';
      }
    }
  }
}

void write_security_wreath(std::ostream& out, const CurveGrid& grid) {
  out << "m,n,prob_level,r_star,alpha,bits\n";
  for (std::size_t m : grid.ms) {
    for (std::size_t n : grid.ns) {
      for (const auto& level : grid.levels) {
        const std::size_t r = correctable_threshold(m, n, wreath_capacity(m), parse_probability(level));
        const auto est = estimate_security(static_cast<double>(m * n), static_cast<double>(n),
                                           static_cast<double>(r));
        out << m << ',' << n << ',' << level << ',' << r << ',' << fixed(est.alpha, 8) << ','
            << fixed(est.bits, 6) << '\n';
      }
    }
  }
}

void write_security_two_subsets(std::ostream& out, const CurveGrid& grid) {
  out << "m,bits\n";
  for (std::size_t m : grid.ms) out << m << ',' << fixed(security_bits_two_subsets(m), 6) << '\n';
}

}  // namespace permcode
