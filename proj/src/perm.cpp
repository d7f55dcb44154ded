#include "permcode/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "permcode/error.hpp"

namespace permcode {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) {
      fail(ErrorCode::InvalidArgument, "image list is not a bijection");
    }
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images), Unchecked{});
}

Permutation Permutation::from_one_based(std::span<const std::int64_t> images) {
  std::vector<Point> zero_based;
  zero_based.reserve(images.size());
  for (std::int64_t x : images) {
    if (x < 1 || static_cast<std::size_t>(x) > images.size()) {
      fail(ErrorCode::InvalidArgument, "permutation image out of range: " + std::to_string(x));
    }
    zero_based.push_back(static_cast<Point>(x - 1));
  }
  return Permutation(std::move(zero_based));
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycle_list) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycle_list) {
    for (std::size_t t = 0; t < cycle.size(); ++t) {
      Point x = cycle[t];
      Point y = cycle[(t + 1) % cycle.size()];
      if (x < 1 || x > degree || y < 1 || y > degree || used[x - 1]) {
        fail(ErrorCode::InvalidArgument, "malformed cycle list");
      }
      used[x - 1] = true;
      images[x - 1] = y - 1;
    }
  }
  return Permutation(std::move(images));
}

std::vector<std::int64_t> Permutation::to_one_based() const {
  std::vector<std::int64_t> out(images_.begin(), images_.end());
  for (auto& x : out) ++x;
  return out;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const { return compose(*this, rhs); }

Permutation compose(const Permutation& g, const Permutation& h) {
  if (g.degree() != h.degree()) fail(ErrorCode::DegreeMismatch, "compose: degree mismatch");
  std::vector<Point> images(g.degree());
  for (std::size_t x = 0; x < images.size(); ++x) images[x] = h.images_[g.images_[x]];
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation inverse(const Permutation& g) {
  std::vector<Point> images(g.degree());
  for (std::size_t x = 0; x < images.size(); ++x) images[g.images_[x]] = static_cast<Point>(x);
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation power(const Permutation& g, std::int64_t exponent) {
  std::vector<Point> images(g.degree());
  std::vector<bool> done(g.degree(), false);
  std::vector<Point> cycle;
  for (Point start = 0; start < g.degree(); ++start) {
    if (done[start]) continue;
    cycle.clear();
    for (Point x = start; !done[x]; x = g.images_[x]) {
      done[x] = true;
      cycle.push_back(x);
    }
    auto len = static_cast<std::int64_t>(cycle.size());
    auto shift = ((exponent % len) + len) % len;
    for (std::int64_t t = 0; t < len; ++t) images[cycle[t]] = cycle[(t + shift) % len];
  }
  return Permutation(std::move(images), Permutation::Unchecked{});
}

Permutation conjugate(const Permutation& h, const Permutation& g) {
  return compose(compose(inverse(g), h), g);
}

Word::Word(std::vector<Point> symbols) : symbols_(std::move(symbols)) {
  for (Point s : symbols_) {
    if (s >= symbols_.size()) fail(ErrorCode::InvalidArgument, "word symbol out of range");
  }
}

Word::Word(const Permutation& g) : symbols_(g.images().begin(), g.images().end()) {}

Word Word::from_one_based(std::span<const std::int64_t> symbols) {
  std::vector<Point> zero_based;
  zero_based.reserve(symbols.size());
  for (std::int64_t s : symbols) {
    if (s < 1 || static_cast<std::size_t>(s) > symbols.size()) {
      fail(ErrorCode::InvalidArgument, "word symbol out of range: " + std::to_string(s));
    }
    zero_based.push_back(static_cast<Point>(s - 1));
  }
  return Word(std::move(zero_based));
}

void Word::set(std::size_t x, Point symbol) {
  if (x >= symbols_.size() || symbol >= symbols_.size()) {
    fail(ErrorCode::OutOfRange, "word position or symbol out of range");
  }
  symbols_[x] = symbol;
}

std::vector<std::int64_t> Word::to_one_based() const {
  std::vector<std::int64_t> out(symbols_.begin(), symbols_.end());
  for (auto& s : out) ++s;
  return out;
}

bool Word::is_permutation() const {
  std::vector<bool> seen(symbols_.size(), false);
  for (Point s : symbols_) {
    if (seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

std::size_t hamming_distance(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() != b.size()) fail(ErrorCode::DegreeMismatch, "hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t x = 0; x < a.size(); ++x) d += a[x] != b[x];
  return d;
}

std::vector<Point> support(const Permutation& g) {
  std::vector<Point> moved;
  for (Point x = 0; x < g.degree(); ++x) {
    if (g[x] != x) moved.push_back(x);
  }
  return moved;
}

std::vector<Point> fixed_points(const Permutation& g) {
  std::vector<Point> fixed;
  for (Point x = 0; x < g.degree(); ++x) {
    if (g[x] == x) fixed.push_back(x);
  }
  return fixed;
}

std::vector<std::vector<Point>> cycles(const Permutation& g) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> done(g.degree(), false);
  for (Point start = 0; start < g.degree(); ++start) {
    if (done[start]) continue;
    auto& cycle = out.emplace_back();
    for (Point x = start; !done[x]; x = g[x]) {
      done[x] = true;
      cycle.push_back(x);
    }
  }
  return out;
}

CycleType cycle_type(const Permutation& g) {
  CycleType type;
  for (const auto& c : cycles(g)) type.push_back(c.size());
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

std::uint64_t element_order(const Permutation& g) {
  std::uint64_t order = 1;
  for (std::size_t len : cycle_type(g)) order = std::lcm(order, static_cast<std::uint64_t>(len));
  return order;
}

Permutation random_permutation(std::size_t degree, Rng& rng) {
  if (degree == 0) fail(ErrorCode::InvalidArgument, "random_permutation: degree must be >= 1");
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (std::size_t i = degree - 1; i > 0; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i);
    std::swap(images[i], images[pick(rng)]);
  }
  return Permutation(std::move(images));
}

std::string to_list_string(const Permutation& g) {
  std::string out = "[";
  for (std::size_t x = 0; x < g.degree(); ++x) {
    if (x) out += ',';
    out += std::to_string(g[x] + 1);
  }
  out += ']';
  return out;
}

std::string to_cycle_string(const Permutation& g) {
  std::ostringstream out;
  bool any = false;
  for (const auto& c : cycles(g)) {
    if (c.size() < 2) continue;
    any = true;
    out << '(';
    for (std::size_t t = 0; t < c.size(); ++t) out << (t ? " " : "") << c[t] + 1;
    out << ')';
  }
  return any ? out.str() : "()";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace permcode

std::size_t std::hash<permcode::Permutation>::operator()(
    const permcode::Permutation& g) const noexcept {
  std::size_t seed = g.degree();
  for (auto x : g.images()) seed ^= x + 0x9e3779b9 + (seed << 6) + (seed >> 2);
  return seed;
}
