#include "permcode/stab_chain.hpp"

#include <algorithm>
#include <numeric>

#include "permcode/error.hpp"

namespace permcode {

namespace {

bool fixes_all(const Permutation& g, std::span<const Point> points) {
  return std::all_of(points.begin(), points.end(), [&](Point b) { return g[b] == b; });
}

void check_degrees(std::span<const Permutation> gens, std::size_t degree) {
  for (const auto& g : gens) {
    if (g.degree() != degree) fail(ErrorCode::DegreeMismatch, "generators of unequal degree");
  }
}

// Product replacement random elements over the generators.
class RandomElements {
 public:
  RandomElements(std::span<const Permutation> gens, std::size_t degree, Rng& rng)
      : rng_(rng), acc_(Permutation::identity(degree)) {
    std::size_t slots = std::max<std::size_t>(10, gens.size());
    for (std::size_t i = 0; i < slots; ++i) {
      state_.push_back(gens.empty() ? Permutation::identity(degree) : gens[i % gens.size()]);
    }
    for (int i = 0; i < 50; ++i) next();
  }

  Permutation next() {
    std::uniform_int_distribution<std::size_t> pick(0, state_.size() - 1);
    std::size_t i = pick(rng_);
    std::size_t j = pick(rng_);
    while (j == i) j = pick(rng_);
    bool invert = rng_() & 1u;
    const Permutation rhs = invert ? inverse(state_[j]) : state_[j];
    state_[i] = (rng_() & 1u) ? compose(state_[i], rhs) : compose(rhs, state_[i]);
    acc_ = compose(acc_, state_[i]);
    return acc_;
  }

 private:
  Rng& rng_;
  std::vector<Permutation> state_;
  Permutation acc_;
};

}  // namespace

class ChainBuilder {
 public:
  ChainBuilder(std::span<const Permutation> gens, const ChainOptions& options)
      : options_(options) {
    if (gens.empty()) fail(ErrorCode::InvalidArgument, "build_chain: no generators");
    chain_.degree_ = gens.front().degree();
    check_degrees(gens, chain_.degree_);
    const std::size_t n = chain_.degree_;

    std::vector<bool> preferred(n, false);
    for (Point b : options.preferred_base) {
      if (b >= n) fail(ErrorCode::OutOfRange, "preferred base point out of range");
      if (!preferred[b]) {
        preferred[b] = true;
        point_order_.push_back(b);
      }
    }
    std::vector<Point> rest;
    for (Point x = 0; x < n; ++x) {
      if (!preferred[x]) rest.push_back(x);
    }
    if (options.rng) std::shuffle(rest.begin(), rest.end(), *options.rng);
    std::size_t preferred_count = point_order_.size();
    point_order_.insert(point_order_.end(), rest.begin(), rest.end());
    in_base_.assign(n, false);

    for (const auto& g : gens) {
      if (!g.is_identity() &&
          std::find(chain_.strong_.begin(), chain_.strong_.end(), g) == chain_.strong_.end()) {
        chain_.strong_.push_back(g);
      }
    }
    std::vector<Point> base(point_order_.begin(),
                            point_order_.begin() + static_cast<std::ptrdiff_t>(preferred_count));
    for (Point b : base) in_base_[b] = true;
    for (const auto& s : chain_.strong_) {
      if (fixes_all(s, base)) {
        Point b = point_moved_by(s);
        base.push_back(b);
        in_base_[b] = true;
      }
    }
    for (Point b : base) add_level(b);
  }

  StabilizerChain run() {
    if (options_.known_order) {
      run_known_order(*options_.known_order);
    } else {
      run_deterministic();
    }
    auto& levels = chain_.levels_;
    levels.erase(std::remove_if(levels.begin(), levels.end(),
                                [](const auto& level) { return level.orbit.size() == 1; }),
                 levels.end());
    return std::move(chain_);
  }

 private:
  using Level = StabilizerChain::Level;

  Point point_moved_by(const Permutation& h) const {
    for (Point x : point_order_) {
      if (h[x] != x && !in_base_[x]) return x;
    }
    fail(ErrorCode::Internal, "no unused point moved by residue");
  }

  void extend_orbit(Level& level, std::size_t first_new) {
    const std::size_t old = level.orbit.size();
    for (std::size_t idx = 0; idx < level.orbit.size(); ++idx) {
      const Point x = level.orbit[idx];
      for (std::size_t gi = idx < old ? first_new : 0; gi < level.generator_ids.size(); ++gi) {
        const Permutation& s = chain_.strong_[level.generator_ids[gi]];
        const Point y = s[x];
        if (level.position[y] < 0) {
          level.position[y] = static_cast<std::int32_t>(level.orbit.size());
          level.orbit.push_back(y);
          level.transversal.push_back(compose(level.transversal[idx], s));
        }
      }
    }
  }

  void add_level(Point b) {
    in_base_[b] = true;
    Level level;
    level.base_point = b;
    level.position.assign(chain_.degree_, -1);
    level.position[b] = 0;
    level.orbit.push_back(b);
    level.transversal.push_back(Permutation::identity(chain_.degree_));
    std::vector<Point> prefix;
    for (const auto& l : chain_.levels_) prefix.push_back(l.base_point);
    for (std::size_t id = 0; id < chain_.strong_.size(); ++id) {
      if (fixes_all(chain_.strong_[id], prefix)) level.generator_ids.push_back(id);
    }
    extend_orbit(level, 0);
    chain_.levels_.push_back(std::move(level));
  }

  // Records h as a strong generator in levels 0..deepest (h fixes the base
  // points above deepest), appending a base point when h passed every level.
  void add_strong(Permutation h, std::size_t deepest) {
    const std::size_t id = chain_.strong_.size();
    const bool new_level = deepest == chain_.levels_.size();
    Point b = new_level ? point_moved_by(h) : 0;
    chain_.strong_.push_back(std::move(h));
    if (new_level) add_level(b);
    for (std::size_t l = 0; l <= deepest && l < chain_.levels_.size(); ++l) {
      auto& ids = chain_.levels_[l].generator_ids;
      if (std::find(ids.begin(), ids.end(), id) != ids.end()) continue;
      ids.push_back(id);
      extend_orbit(chain_.levels_[l], ids.size() - 1);
    }
  }

  std::pair<Permutation, std::size_t> strip(Permutation h, std::size_t from) const {
    const auto& levels = chain_.levels_;
    for (std::size_t l = from; l < levels.size(); ++l) {
      const Point x = h[levels[l].base_point];
      if (!levels[l].in_orbit(x)) return {std::move(h), l};
      h = compose(h, inverse(levels[l].representative(x)));
    }
    return {std::move(h), levels.size()};
  }

  void run_deterministic() {
    auto i = static_cast<std::ptrdiff_t>(chain_.levels_.size()) - 1;
    while (i >= 0) {
      bool modified = false;
      const auto li = static_cast<std::size_t>(i);
      for (std::size_t idx = 0; !modified && idx < chain_.levels_[li].orbit.size(); ++idx) {
        for (std::size_t gi = 0; !modified && gi < chain_.levels_[li].generator_ids.size(); ++gi) {
          const Level& level = chain_.levels_[li];
          const Permutation& s = chain_.strong_[level.generator_ids[gi]];
          Permutation ts = compose(level.transversal[idx], s);
          const Permutation& target = level.representative(s[level.orbit[idx]]);
          if (ts == target) continue;
          auto [h, j] = strip(compose(ts, inverse(target)), li + 1);
          if (j < chain_.levels_.size() || !h.is_identity()) {
            add_strong(std::move(h), j);
            i = static_cast<std::ptrdiff_t>(j);
            modified = true;
          }
        }
      }
      if (!modified) --i;
    }
  }

  void run_known_order(const BigInt& target) {
    Rng fallback(0x5eedULL);
    Rng& rng = options_.rng ? *options_.rng : fallback;
    RandomElements random(chain_.strong_, chain_.degree_, rng);
    std::size_t stall = 0;
    BigInt current = chain_.order();
    while (current != target) {
      if (current > target) {
        fail(ErrorCode::InvalidArgument, "generators generate a group larger than the stated order");
      }
      auto [h, j] = strip(random.next(), 0);
      if (j < chain_.levels_.size() || !h.is_identity()) {
        add_strong(std::move(h), j);
        current = chain_.order();
        stall = 0;
      } else if (++stall > options_.stall_limit) {
        fail(ErrorCode::LimitExceeded,
             "stated group order not reached; generators appear to generate a proper subgroup");
      }
    }
    for (const auto& g : chain_.strong_) {
      if (!strip(g, 0).first.is_identity()) {
        fail(ErrorCode::InvalidArgument, "generators generate a group larger than the stated order");
      }
    }
  }

  ChainOptions options_;
  StabilizerChain chain_;
  std::vector<Point> point_order_;
  std::vector<bool> in_base_;
};

StabilizerChain StabilizerChain::build(std::span<const Permutation> generators,
                                       const ChainOptions& options) {
  return ChainBuilder(generators, options).run();
}

StabilizerChain build_chain(std::span<const Permutation> generators,
                            std::span<const Point> preferred_base, Rng* rng) {
  ChainOptions options;
  options.preferred_base.assign(preferred_base.begin(), preferred_base.end());
  options.rng = rng;
  return StabilizerChain::build(generators, options);
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> out;
  for (const auto& l : levels_) out.push_back(l.base_point);
  return out;
}

BigInt StabilizerChain::order() const {
  BigInt result = 1;
  for (const auto& l : levels_) result *= l.orbit.size();
  return result;
}

StabilizerChain::SiftResult StabilizerChain::sift(const Permutation& g) const {
  if (g.degree() != degree_) fail(ErrorCode::DegreeMismatch, "sift: degree mismatch");
  SiftResult result{g, 0, false};
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const Point x = result.residue[levels_[l].base_point];
    if (!levels_[l].in_orbit(x)) {
      result.failed_level = l;
      return result;
    }
    result.residue = compose(result.residue, inverse(levels_[l].representative(x)));
  }
  result.failed_level = levels_.size();
  result.member = result.residue.is_identity();
  return result;
}

std::optional<Permutation> StabilizerChain::reconstruct(std::span<const Point> images) const {
  if (images.size() != levels_.size()) {
    fail(ErrorCode::InvalidArgument, "reconstruct: need one image per base point");
  }
  std::vector<Point> x(images.begin(), images.end());
  for (Point p : x) {
    if (p >= degree_) return std::nullopt;
  }
  Permutation sigma = Permutation::identity(degree_);
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!levels_[i].in_orbit(x[i])) return std::nullopt;
    const Permutation& r = levels_[i].representative(x[i]);
    const Permutation r_inv = inverse(r);
    sigma = compose(r, sigma);
    for (std::size_t j = i + 1; j < x.size(); ++j) x[j] = r_inv[x[j]];
  }
  return sigma;
}

Permutation StabilizerChain::element_from_rank(const BigInt& rank) const {
  if (rank < 0 || rank >= order()) fail(ErrorCode::OutOfRange, "rank outside [0, |G|)");
  BigInt rest = rank;
  Permutation u = Permutation::identity(degree_);
  std::vector<std::pair<Point, Point>> candidates;
  for (const auto& level : levels_) {
    const std::size_t radix = level.orbit.size();
    const auto digit = static_cast<std::size_t>(BigInt(rest % radix));
    rest /= radix;
    candidates.clear();
    for (Point y : level.orbit) candidates.emplace_back(u[y], y);
    std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(digit),
                     candidates.end());
    u = compose(level.representative(candidates[digit].second), u);
  }
  return u;
}

std::optional<BigInt> StabilizerChain::rank_of(const Permutation& g) const {
  if (g.degree() != degree_) return std::nullopt;
  BigInt rank = 0;
  BigInt weight = 1;
  Permutation u = Permutation::identity(degree_);
  Permutation u_inv = u;
  for (const auto& level : levels_) {
    const Point x = g[level.base_point];
    const Point y = u_inv[x];
    if (!level.in_orbit(y)) return std::nullopt;
    std::size_t digit = 0;
    for (Point z : level.orbit) digit += u[z] < x;
    rank += weight * digit;
    weight *= level.orbit.size();
    u = compose(level.representative(y), u);
    u_inv = inverse(u);
  }
  if (u != g) return std::nullopt;
  return rank;
}

bool StabilizerChain::for_each_element(
    const std::function<bool(const Permutation&)>& visit) const {
  std::function<bool(std::size_t, const Permutation&)> walk = [&](std::size_t i,
                                                                  const Permutation& u) {
    if (i == levels_.size()) return visit(u);
    for (const auto& t : levels_[i].transversal) {
      if (!walk(i + 1, compose(t, u))) return false;
    }
    return true;
  };
  return walk(0, Permutation::identity(degree_));
}

BaseCheck check_base(std::span<const Permutation> generators, std::span<const Point> points,
                     const std::optional<BigInt>& known_order) {
  ChainOptions options;
  options.preferred_base.assign(points.begin(), points.end());
  options.known_order = known_order;
  StabilizerChain chain = StabilizerChain::build(generators, options);
  auto base = chain.base();
  BaseCheck check;
  check.is_base = std::all_of(base.begin(), base.end(), [&](Point b) {
    return std::find(points.begin(), points.end(), b) != points.end();
  });
  check.irredundant = check.is_base && std::equal(base.begin(), base.end(), points.begin(), points.end());
  return check;
}

bool BlockSystem::is_trivial() const {
  return blocks.size() <= 1 ||
         std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() == 1; });
}

std::vector<std::size_t> BlockSystem::block_of(std::size_t degree) const {
  std::vector<std::size_t> index(degree, blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Point x : blocks[b]) index[x] = b;
  }
  return index;
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  std::vector<std::size_t> parent;
};

BlockSystem classes_of(UnionFind& uf, std::size_t n) {
  std::vector<std::vector<Point>> by_root(n);
  for (Point x = 0; x < n; ++x) by_root[uf.find(x)].push_back(x);
  BlockSystem system;
  for (auto& cls : by_root) {
    if (!cls.empty()) system.blocks.push_back(std::move(cls));
  }
  std::sort(system.blocks.begin(), system.blocks.end());
  return system;
}

std::size_t block_size_of(const BlockSystem& system, Point x) {
  for (const auto& b : system.blocks) {
    if (std::binary_search(b.begin(), b.end(), x)) return b.size();
  }
  return 0;
}

}  // namespace

BlockSystem finest_block_system(std::span<const Permutation> generators,
                                std::span<const Point> seed) {
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "no generators");
  const std::size_t n = generators.front().degree();
  check_degrees(generators, n);
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  for (std::size_t t = 1; t < seed.size(); ++t) {
    auto a = uf.find(seed[0]);
    auto b = uf.find(seed[t]);
    if (a != b) {
      uf.parent[b] = a;
      queue.emplace_back(seed[0], seed[t]);
    }
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto [a, b] = queue[q];
    for (const auto& s : generators) {
      auto ra = uf.find(s[a]);
      auto rb = uf.find(s[b]);
      if (ra != rb) {
        uf.parent[rb] = ra;
        queue.emplace_back(s[a], s[b]);
      }
    }
  }
  return classes_of(uf, n);
}

std::vector<Point> orbit(std::span<const Permutation> generators, Point start) {
  const std::size_t n = generators.empty() ? start + 1 : generators.front().degree();
  std::vector<bool> seen(n, false);
  std::vector<Point> out{start};
  seen[start] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& s : generators) {
      Point y = s[out[i]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

BlockSystem minimal_block_system(std::span<const Permutation> generators) {
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "no generators");
  const std::size_t n = generators.front().degree();
  check_degrees(generators, n);
  if (orbit(generators, 0).size() != n) {
    fail(ErrorCode::Inapplicable, "minimal_block_system: group is intransitive");
  }
  BlockSystem singletons;
  for (Point x = 0; x < n; ++x) singletons.blocks.push_back({x});

  std::optional<BlockSystem> best;
  std::size_t best_size = 1;
  for (Point x = 1; x < n; ++x) {
    const Point seed[] = {0, x};
    BlockSystem candidate = finest_block_system(generators, seed);
    std::size_t size = block_size_of(candidate, 0);
    if (size < n && size > best_size) {
      best_size = size;
      best = std::move(candidate);
    }
  }
  if (!best) return singletons;

  for (bool grown = true; grown;) {
    grown = false;
    std::vector<Point> block;
    for (const auto& b : best->blocks) {
      if (std::binary_search(b.begin(), b.end(), Point{0})) block = b;
    }
    for (Point x = 0; x < n && !grown; ++x) {
      if (std::binary_search(block.begin(), block.end(), x)) continue;
      std::vector<Point> seed = block;
      seed.push_back(x);
      BlockSystem candidate = finest_block_system(generators, seed);
      std::size_t size = block_size_of(candidate, 0);
      if (size < n && size > best_size) {
        best_size = size;
        best = std::move(candidate);
        grown = true;
      }
    }
  }
  return *best;
}

bool is_block_system(std::span<const Permutation> generators, const BlockSystem& system) {
  if (generators.empty()) return true;
  const std::size_t n = generators.front().degree();
  auto index = system.block_of(n);
  if (std::find(index.begin(), index.end(), system.blocks.size()) != index.end()) return false;
  std::size_t total = 0;
  for (const auto& b : system.blocks) total += b.size();
  if (total != n) return false;
  for (const auto& s : generators) {
    for (const auto& b : system.blocks) {
      const std::size_t target = index[s[b.front()]];
      for (Point x : b) {
        if (index[s[x]] != target) return false;
      }
    }
  }
  return true;
}

BigInt symmetric_centralizer_order(const CycleType& type) {
  BigInt order = 1;
  std::vector<std::size_t> count(type.empty() ? 1 : type.front() + 1, 0);
  for (std::size_t len : type) ++count[len];
  for (std::size_t len = 1; len < count.size(); ++len) {
    for (std::size_t c = 0; c < count[len]; ++c) order *= len;
    order *= factorial(count[len]);
  }
  return order;
}

namespace {

// Cycles of g grouped by length (groups ordered by increasing length, cycles
// within a group by smallest point).
std::vector<std::vector<std::vector<Point>>> cycles_by_length(const Permutation& g) {
  auto all = cycles(g);
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<std::vector<std::vector<Point>>> groups;
  for (auto& c : all) {
    if (groups.empty() || groups.back().front().size() != c.size()) groups.emplace_back();
    groups.back().push_back(std::move(c));
  }
  return groups;
}

}  // namespace

bool for_each_centralizer_element(const StabilizerChain* ambient, const Permutation& h,
                                  const std::function<bool(const Permutation&)>& visit,
                                  const CentralizerOptions& options) {
  if (h.degree() > options.degree_limit) {
    fail(ErrorCode::LimitExceeded, "centralizer enumeration: degree " +
                                       std::to_string(h.degree()) + " over limit " +
                                       std::to_string(options.degree_limit));
  }
  if (ambient && ambient->degree() != h.degree()) {
    fail(ErrorCode::DegreeMismatch, "centralizer: ambient degree mismatch");
  }
  const auto groups = cycles_by_length(h);
  std::vector<Point> images(h.degree());

  // Per group: an arrangement of its cycles and one rotation per cycle.
  std::function<bool(std::size_t)> walk = [&](std::size_t gi) -> bool {
    if (gi == groups.size()) {
      Permutation z(images);
      if (ambient && !ambient->contains(z)) return true;
      return visit(z);
    }
    const auto& group = groups[gi];
    const std::size_t count = group.size();
    const std::size_t len = group.front().size();
    std::vector<std::size_t> arrangement(count);
    std::iota(arrangement.begin(), arrangement.end(), 0);
    do {
      std::vector<std::size_t> rotation(count, 0);
      while (true) {
        for (std::size_t t = 0; t < count; ++t) {
          const auto& from = group[t];
          const auto& to = group[arrangement[t]];
          for (std::size_t s = 0; s < len; ++s) images[from[s]] = to[(s + rotation[t]) % len];
        }
        if (!walk(gi + 1)) return false;
        std::size_t t = 0;
        while (t < count && ++rotation[t] == len) rotation[t++] = 0;
        if (t == count) break;
      }
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    return true;
  };
  return walk(0);
}

std::vector<Permutation> centralizer_elements(const StabilizerChain* ambient, const Permutation& h,
                                              const CentralizerOptions& options) {
  std::vector<Permutation> out;
  for_each_centralizer_element(
      ambient, h,
      [&](const Permutation& z) {
        out.push_back(z);
        return true;
      },
      options);
  return out;
}

std::optional<Permutation> find_conjugating_element(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) fail(ErrorCode::DegreeMismatch, "conjugator: degree mismatch");
  if (cycle_type(a) != cycle_type(b)) return std::nullopt;
  const auto ga = cycles_by_length(a);
  const auto gb = cycles_by_length(b);
  std::vector<Point> images(a.degree());
  for (std::size_t g = 0; g < ga.size(); ++g) {
    for (std::size_t c = 0; c < ga[g].size(); ++c) {
      for (std::size_t s = 0; s < ga[g][c].size(); ++s) images[ga[g][c][s]] = gb[g][c][s];
    }
  }
  return Permutation(std::move(images));
}

}  // namespace permcode
