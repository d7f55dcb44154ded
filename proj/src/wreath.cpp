#include "permcode/wreath.hpp"

#include <algorithm>

#include "permcode/error.hpp"
#include "permcode/stab_chain.hpp"

namespace permcode {

std::string to_string(MajorityFailure f) {
  switch (f) {
    case MajorityFailure::None: return "none";
    case MajorityFailure::ShiftTie: return "tie in the shift vote";
    case MajorityFailure::ColumnTie: return "tie in the column vote";
    case MajorityFailure::ColumnMapNotBijective: return "column map is not a permutation";
  }
  return "unknown";
}

WreathCode::WreathCode(std::size_t m, std::size_t n) : m_(m), n_(n) {
  if (m < 2 || n < 1) fail(ErrorCode::InvalidArgument, "wreath code needs m >= 2 and n >= 1");
  std::vector<std::size_t> zero(n, 0);
  WreathElement shift{zero, Permutation::identity(n)};
  shift.shifts[0] = 1;
  generators_.push_back(to_permutation(shift));
  if (n >= 2) {
    std::vector<Point> swap(n), cycle(n);
    for (Point j = 0; j < n; ++j) {
      swap[j] = j;
      cycle[j] = static_cast<Point>((j + 1) % n);
    }
    std::swap(swap[0], swap[1]);
    for (const auto& sigma : {Permutation(swap), Permutation(cycle)}) {
      auto g = to_permutation({zero, sigma});
      if (std::find(generators_.begin(), generators_.end(), g) == generators_.end()) {
        generators_.push_back(std::move(g));
      }
    }
  }
}

BigInt WreathCode::order() const {
  BigInt result = factorial(n_);
  for (std::size_t j = 0; j < n_; ++j) result *= m_;
  return result;
}

Permutation WreathCode::to_permutation(const WreathElement& e) const {
  if (e.shifts.size() != n_ || e.column_perm.degree() != n_) {
    fail(ErrorCode::DegreeMismatch, "wreath element does not match the code");
  }
  std::vector<Point> images(degree());
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t dest = e.column_perm[static_cast<Point>(j)];
    const std::size_t h = e.shifts[dest];
    if (h >= m_) fail(ErrorCode::OutOfRange, "shift out of range");
    for (std::size_t i = 0; i < m_; ++i) images[point(i, j)] = point((i + h) % m_, dest);
  }
  return Permutation(std::move(images));
}

std::optional<WreathElement> WreathCode::from_permutation(const Permutation& g) const {
  if (g.degree() != degree()) return std::nullopt;
  WreathElement e{std::vector<std::size_t>(n_, 0), {}};
  std::vector<Point> sigma(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    const Point first = g[point(0, j)];
    const std::size_t dest = first / m_;
    const std::size_t h = first % m_;
    for (std::size_t i = 1; i < m_; ++i) {
      if (g[point(i, j)] != point((i + h) % m_, dest)) return std::nullopt;
    }
    sigma[j] = static_cast<Point>(dest);
    e.shifts[dest] = h;
  }
  e.column_perm = Permutation(std::move(sigma));
  return e;
}

Ubb WreathCode::row_ubb() const {
  Ubb ubb;
  for (std::size_t t = 0; t <= capacity(); ++t) {
    std::vector<Point> row;
    for (std::size_t j = 0; j < n_; ++j) row.push_back(point(t, j));
    ubb.bases.push_back(std::move(row));
  }
  return ubb;
}

std::optional<Permutation> WreathCode::decode_ubb(const Word& w, UbbDecodeStats* stats) const {
  std::call_once(ubb_once_, [this] {
    ubb_decoder_ = std::make_unique<UbbDecoder>(
        make_ubb_decoder(generators_, row_ubb(), order(), capacity()));
  });
  return ubb_decoder_->decode(w, stats);
}

MajorityResult WreathCode::decode_majority(const Word& w) const {
  if (w.size() != degree()) fail(ErrorCode::DegreeMismatch, "decode: word length mismatch");
  MajorityResult result;
  std::vector<std::size_t> shift_votes(m_), column_votes(n_);
  std::vector<std::size_t> shifts(n_, 0);
  std::vector<Point> sigma(n_);
  std::vector<bool> claimed(n_, false);

  // Index of the unique maximum, or nullopt on a tie.
  auto plurality = [&](const std::vector<std::size_t>& votes) -> std::optional<std::size_t> {
    result.operations += votes.size();
    std::size_t best = 0;
    bool tie = false;
    for (std::size_t v = 1; v < votes.size(); ++v) {
      if (votes[v] > votes[best]) {
        best = v;
        tie = false;
      } else if (votes[v] == votes[best]) {
        tie = true;
      }
    }
    if (tie) return std::nullopt;
    return best;
  };

  for (std::size_t j = 0; j < n_; ++j) {
    std::fill(shift_votes.begin(), shift_votes.end(), 0);
    std::fill(column_votes.begin(), column_votes.end(), 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Point s = w[point(i, j)];
      ++shift_votes[(s % m_ + m_ - i) % m_];
      ++column_votes[s / m_];
      ++result.operations;
    }
    auto shift = plurality(shift_votes);
    auto dest = plurality(column_votes);
    if (!shift || !dest) {
      result.failure = shift ? MajorityFailure::ColumnTie : MajorityFailure::ShiftTie;
      result.failed_column = j;
      return result;
    }
    if (claimed[*dest]) {
      result.failure = MajorityFailure::ColumnMapNotBijective;
      result.failed_column = j;
      return result;
    }
    claimed[*dest] = true;
    sigma[j] = static_cast<Point>(*dest);
    shifts[*dest] = *shift;
  }
  result.element = to_permutation({std::move(shifts), Permutation(std::move(sigma))});
  return result;
}

Permutation WreathCode::encode_message(const BigInt& index) const {
  if (index < 0 || index >= order()) fail(ErrorCode::OutOfRange, "message index out of range");
  BigInt rest = index;
  std::vector<std::size_t> shifts(n_);
  for (auto& h : shifts) {
    h = static_cast<std::size_t>(BigInt(rest % m_));
    rest /= m_;
  }
  std::vector<Point> available(n_);
  for (Point j = 0; j < n_; ++j) available[j] = j;
  std::vector<Point> sigma;
  for (std::size_t j = 0; j < n_; ++j) {
    const BigInt radix = factorial(n_ - 1 - j);
    const auto digit = static_cast<std::size_t>(BigInt(rest / radix));
    rest %= radix;
    sigma.push_back(available[digit]);
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return to_permutation({std::move(shifts), Permutation(std::move(sigma))});
}

std::optional<BigInt> WreathCode::decode_message(const Permutation& g) const {
  auto e = from_permutation(g);
  if (!e) return std::nullopt;
  BigInt lehmer = 0;
  std::vector<Point> available(n_);
  for (Point j = 0; j < n_; ++j) available[j] = j;
  for (std::size_t j = 0; j < n_; ++j) {
    auto it = std::find(available.begin(), available.end(), e->column_perm[static_cast<Point>(j)]);
    lehmer = lehmer * (n_ - j) + static_cast<std::size_t>(it - available.begin());
    available.erase(it);
  }
  BigInt index = lehmer;
  for (std::size_t j = n_; j-- > 0;) index = index * m_ + e->shifts[j];
  return index;
}

WreathElement WreathCode::random_element(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, m_ - 1);
  WreathElement e{std::vector<std::size_t>(n_), random_permutation(n_, rng)};
  for (auto& h : e.shifts) h = pick(rng);
  return e;
}

}  // namespace permcode
