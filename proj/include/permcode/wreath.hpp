#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "permcode/bigint.hpp"
#include "permcode/perm.hpp"
#include "permcode/ubb.hpp"

namespace permcode {

/// (h_1..h_n; sigma) in C_m wr S_n. It sends point (i, j) to
/// (i + h_{j.sigma} mod m, j.sigma): the shift used is the one attached to
/// the destination column.
struct WreathElement {
  std::vector<std::size_t> shifts;
  Permutation column_perm;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

enum class MajorityFailure { None, ShiftTie, ColumnTie, ColumnMapNotBijective };
std::string to_string(MajorityFailure f);

struct MajorityResult {
  std::optional<Permutation> element;
  MajorityFailure failure = MajorityFailure::None;
  std::size_t failed_column = 0;
  std::size_t operations = 0;  // symbol reads plus tally scans
};

/// C_m wr S_n on the m x n grid; point (i, j) (row i, column j, 0-based) is
/// j*m + i.
class WreathCode {
 public:
  WreathCode(std::size_t m, std::size_t n);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t degree() const noexcept { return m_ * n_; }
  std::size_t minimal_degree() const noexcept { return m_; }
  std::size_t capacity() const noexcept { return (m_ - 1) / 2; }
  BigInt order() const;
  Point point(std::size_t row, std::size_t column) const {
    return static_cast<Point>(column * m_ + row);
  }

  /// Shift on column 1, the transposition of columns 1 and 2, the column
  /// n-cycle (duplicates and identities removed).
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  Permutation to_permutation(const WreathElement& e) const;
  std::optional<WreathElement> from_permutation(const Permutation& g) const;

  /// Rows 0..r, each a base with one point per column.
  Ubb row_ubb() const;
  std::optional<Permutation> decode_ubb(const Word& w, UbbDecodeStats* stats = nullptr) const;
  MajorityResult decode_majority(const Word& w) const;

  /// Mixed radix: n base-m digits for the shifts (least significant first),
  /// then the Lehmer code of sigma.
  Permutation encode_message(const BigInt& index) const;
  std::optional<BigInt> decode_message(const Permutation& g) const;

  WreathElement random_element(Rng& rng) const;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Permutation> generators_;
  // Row-UBB chains are heavy at large degree; built on first use.
  mutable std::once_flag ubb_once_;
  mutable std::unique_ptr<UbbDecoder> ubb_decoder_;
};

}  // namespace permcode
