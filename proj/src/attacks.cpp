#include "permcode/attacks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "permcode/error.hpp"

namespace permcode {

namespace {

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void check_ciphertext(const PublicContext& pk, const Ciphertext& c) {
  if (c.word.size() != pk.key().degree) fail(ErrorCode::DegreeMismatch, "ciphertext length mismatch");
}

void record_plaintext(AttackReport& report, const PublicContext& pk, const Ciphertext& c,
                      const Permutation& h) {
  report.element = h;
  report.distance = hamming_distance(h, c.word);
  report.message = verify_plaintext(pk, c, h);
  report.success = report.message.has_value();
  if (!report.success && report.note.empty()) report.note = "candidate failed verification";
}

// Index of the unique largest entry, or nullopt on a tie.
std::optional<std::size_t> plurality(const std::vector<std::size_t>& votes) {
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
  if (tie || votes.empty()) return std::nullopt;
  return best;
}

void partitions(std::size_t rest, std::size_t largest, CycleType& current,
                std::vector<CycleType>& out) {
  if (rest == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t part = std::min(rest, largest); part >= 1; --part) {
    current.push_back(part);
    partitions(rest - part, part, current, out);
    current.pop_back();
  }
}

Permutation with_cycle_type(std::size_t m, const CycleType& type) {
  std::vector<Point> images(m);
  Point next = 0;
  for (std::size_t len : type) {
    for (std::size_t s = 0; s < len; ++s) {
      images[next + s] = static_cast<Point>(next + (s + 1) % len);
    }
    next += static_cast<Point>(len);
  }
  return Permutation(std::move(images));
}

}  // namespace

std::optional<BigInt> verify_plaintext(const PublicContext& pk, const Ciphertext& c,
                                       const Permutation& h) {
  if (h.degree() != pk.key().degree) return std::nullopt;
  if (hamming_distance(h, c.word) > pk.key().errors) return std::nullopt;
  if (checksum(h) != c.checksum) return std::nullopt;
  return pk.message_index(h);
}

bool verify_key(const PublicContext& pk, std::span<const Permutation> generators,
                const Permutation& conjugator) {
  if (generators.empty() || conjugator.degree() != pk.key().degree) return false;
  for (const auto& h : generators) {
    if (h.degree() != pk.key().degree || !pk.chain().contains(conjugate(h, conjugator))) {
      return false;
    }
  }
  return build_chain(generators).order() == pk.key().message_space_size;
}

AttackReport brute_force_enumerate(const PublicContext& pk, const Ciphertext& c,
                                   std::uint64_t limit) {
  check_ciphertext(pk, c);
  if (pk.key().message_space_size > limit) {
    fail(ErrorCode::LimitExceeded, "group order " + pk.key().message_space_size.str() +
                                       " is over the enumeration limit " + std::to_string(limit));
  }
  Stopwatch clock;
  AttackReport report;
  report.attack = "brute-force-enumerate";
  std::size_t best = c.word.size() + 1;
  std::optional<Permutation> nearest;
  pk.chain().for_each_element([&](const Permutation& g) {
    ++report.iterations;
    const std::size_t d = hamming_distance(g, c.word);
    if (d < best) {
      best = d;
      nearest = g;
      report.nearest_count = 1;
    } else if (d == best) {
      ++report.nearest_count;
    }
    return true;
  });
  report.element = nearest;
  report.distance = best;
  if (report.nearest_count == 1) {
    report.message = verify_plaintext(pk, c, *nearest);
    report.success = report.message.has_value();
  }
  if (!report.success) {
    report.note = report.nearest_count > 1 ? "nearest element is not unique"
                                           : "nearest element failed verification";
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

BigInt ball_bound(std::size_t n, std::size_t r) {
  BigInt bound = binomial(n, r);
  for (std::size_t i = 0; i < r; ++i) bound *= BigInt(n == 0 ? 0 : n - 1);
  return bound;
}

AttackReport brute_force_ball(const PublicContext& pk, const Ciphertext& c, std::uint64_t limit) {
  check_ciphertext(pk, c);
  const std::size_t n = c.word.size();
  const std::size_t r = pk.key().errors;
  if (r > n) fail(ErrorCode::InvalidArgument, "error count exceeds the length");
  const BigInt bound = ball_bound(n, r);
  if (bound > limit) {
    fail(ErrorCode::LimitExceeded,
         "ball size " + bound.str() + " is over the enumeration limit " + std::to_string(limit));
  }
  Stopwatch clock;
  AttackReport report;
  report.attack = "brute-force-ball";

  std::vector<std::size_t> subset(r);
  for (std::size_t i = 0; i < r; ++i) subset[i] = i;
  std::vector<char> in_subset(n), used(n);
  std::vector<Point> images(n);
  bool done = false;
  while (!done) {
    std::fill(in_subset.begin(), in_subset.end(), 0);
    std::fill(used.begin(), used.end(), 0);
    for (auto x : subset) in_subset[x] = 1;
    bool injective = true;
    for (std::size_t x = 0; x < n && injective; ++x) {
      if (in_subset[x]) continue;
      if (used[c.word[x]]) injective = false;
      used[c.word[x]] = 1;
      images[x] = c.word[x];
    }
    if (!injective) {
      ++report.iterations;
    } else {
      std::vector<Point> missing;
      for (Point s = 0; s < n; ++s) {
        if (!used[s]) missing.push_back(s);
      }
      do {
        ++report.iterations;
        for (std::size_t i = 0; i < r; ++i) images[subset[i]] = missing[i];
        Permutation candidate(images);
        if (pk.chain().contains(candidate) && verify_plaintext(pk, c, candidate)) {
          record_plaintext(report, pk, c, candidate);
          done = true;
          break;
        }
      } while (std::next_permutation(missing.begin(), missing.end()));
    }
    if (done) break;
    // Next r-subset in lexicographic order.
    std::size_t i = r;
    while (i > 0 && subset[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < r; ++j) subset[j] = subset[j - 1] + 1;
  }
  if (report.iterations > bound) fail(ErrorCode::Internal, "ball search exceeded its bound");
  if (!report.success) report.note = "no group element within distance r";
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

std::optional<Permutation> isd_iteration(std::span<const Permutation> generators,
                                         const BigInt& order, const Word& w, std::size_t r,
                                         Rng& rng) {
  ChainOptions options;
  options.rng = &rng;
  options.known_order = order;
  const auto chain = StabilizerChain::build(generators, options);
  std::vector<Point> images;
  for (Point b : chain.base()) images.push_back(w[b]);
  auto h = chain.reconstruct(images);
  if (h && hamming_distance(*h, w) <= r) return h;
  return std::nullopt;
}

AttackReport isd_attack(const PublicContext& pk, const Ciphertext& c, const IsdOptions& options) {
  check_ciphertext(pk, c);
  Stopwatch clock;
  AttackReport report;
  report.attack = "isd";
  report.seed = options.seed;

  std::atomic<bool> found{false};
  std::atomic<std::uint64_t> issued{0}, completed{0};
  std::mutex mutex;
  std::optional<Permutation> winner;
  std::uint64_t winner_stream = 0;
  std::exception_ptr error;

  auto worker = [&](unsigned id) {
    try {
      const std::uint64_t stream = derive_seed(options.seed, id);
      Rng rng(stream);
      while (!found.load(std::memory_order_relaxed)) {
        if (issued.fetch_add(1) >= options.max_iterations) break;
        auto h = isd_iteration(pk.key().generators, pk.key().message_space_size, c.word,
                               pk.key().errors, rng);
        completed.fetch_add(1);
        if (h && verify_plaintext(pk, c, *h)) {
          std::lock_guard lock(mutex);
          if (!winner) {
            winner = std::move(h);
            winner_stream = stream;
          }
          found = true;
        }
      }
    } catch (...) {
      std::lock_guard lock(mutex);
      if (!error) error = std::current_exception();
      found = true;
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  if (error) std::rethrow_exception(error);
  report.iterations = completed.load();
  if (winner) {
    report.stream = winner_stream;
    record_plaintext(report, pk, c, *winner);
  } else {
    report.note = "iteration budget exhausted";
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

BlockSystemAttack::BlockSystemAttack(const PublicContext& pk) : pk_(&pk) {
  const auto& gens = pk.key().generators;
  const std::size_t n = pk.key().degree;
  blocks_ = minimal_block_system(gens);
  if (blocks_.is_trivial()) fail(ErrorCode::Inapplicable, "public group has no nontrivial block system");
  const std::size_t k = blocks_.blocks.size();
  block_of_ = blocks_.block_of(n);
  local_index_.assign(n, 0);
  for (const auto& block : blocks_.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i) local_index_[block[i]] = i;
  }

  // The group acting on points and blocks together.
  std::vector<Permutation> extended;
  for (const auto& g : gens) {
    std::vector<Point> images(n + k);
    for (Point x = 0; x < n; ++x) images[x] = g[x];
    for (std::size_t b = 0; b < k; ++b) {
      images[n + b] = static_cast<Point>(n + block_of_[g[blocks_.blocks[b].front()]]);
    }
    extended.emplace_back(std::move(images));
  }
  Rng rng(0xb10cULL);
  ChainOptions options;
  options.rng = &rng;
  options.known_order = pk.key().message_space_size;
  for (std::size_t b = 0; b < k; ++b) options.preferred_base.push_back(static_cast<Point>(n + b));
  extended_ = StabilizerChain::build(extended, options);
  while (block_levels_ < extended_.levels().size() &&
         extended_.levels()[block_levels_].base_point >= n) {
    ++block_levels_;
  }

  // Strong generators below the block levels generate the kernel.
  std::vector<Permutation> kernel;
  for (const auto& s : extended_.strong_generators()) {
    bool fixes_blocks = true;
    for (std::size_t b = 0; b < k && fixes_blocks; ++b) fixes_blocks = s[n + b] == n + b;
    if (fixes_blocks && !s.is_identity()) kernel.push_back(s);
  }

  for (const auto& block : blocks_.blocks) {
    const std::size_t size = block.size();
    std::vector<Permutation> local;
    for (const auto& s : kernel) {
      std::vector<Point> images(size);
      for (std::size_t i = 0; i < size; ++i) images[i] = static_cast<Point>(local_index_[s[block[i]]]);
      Permutation p(std::move(images));
      if (!p.is_identity() && std::find(local.begin(), local.end(), p) == local.end()) {
        local.push_back(std::move(p));
      }
    }
    if (local.empty() || orbit(local, 0).size() != size) {
      fail(ErrorCode::Inapplicable, "block kernel is not transitive on a block");
    }
    const auto chain = build_chain(local);
    if (chain.order() != size) fail(ErrorCode::Inapplicable, "block kernel is not regular on a block");
    RegularAction action;
    action.points = block;
    action.lookup.assign(size, std::vector<std::uint32_t>(size, 0));
    chain.for_each_element([&](const Permutation& e) {
      const auto index = static_cast<std::uint32_t>(action.elements.size());
      action.elements.emplace_back(e.images().begin(), e.images().end());
      for (Point a = 0; a < size; ++a) action.lookup[a][e[a]] = index;
      return true;
    });
    regular_.push_back(std::move(action));
  }
}

BigInt BlockSystemAttack::kernel_order() const {
  BigInt order = 1;
  for (std::size_t i = block_levels_; i < extended_.levels().size(); ++i) {
    order *= extended_.levels()[i].orbit.size();
  }
  return order;
}

AttackReport BlockSystemAttack::attack(const Ciphertext& c) const {
  const PublicContext& pk = *pk_;
  check_ciphertext(pk, c);
  Stopwatch clock;
  AttackReport report;
  report.attack = "block-system";
  report.iterations = 1;
  const std::size_t n = pk.key().degree;
  const auto& blocks = blocks_.blocks;
  const std::size_t k = blocks.size();
  auto finish = [&](std::string note) {
    report.note = std::move(note);
    report.elapsed_ms = clock.elapsed_ms();
    return report;
  };

  std::vector<std::size_t> target(k), votes(k);
  std::vector<char> claimed(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    std::fill(votes.begin(), votes.end(), 0);
    for (Point x : blocks[j]) ++votes[block_of_[c.word[x]]];
    auto winner = plurality(votes);
    if (!winner) return finish("tie in the block vote");
    if (claimed[*winner]) return finish("block map is not a permutation");
    claimed[*winner] = 1;
    target[j] = *winner;
  }

  // An element of the group with that block map.
  const auto& levels = extended_.levels();
  std::vector<Point> x(block_levels_);
  for (std::size_t i = 0; i < block_levels_; ++i) {
    x[i] = static_cast<Point>(n + target[levels[i].base_point - n]);
  }
  Permutation t = Permutation::identity(extended_.degree());
  for (std::size_t i = 0; i < block_levels_; ++i) {
    if (!levels[i].in_orbit(x[i])) return finish("block map is outside the block action");
    const Permutation& rep = levels[i].representative(x[i]);
    const Permutation rep_inv = inverse(rep);
    t = compose(rep, t);
    for (std::size_t j = i + 1; j < block_levels_; ++j) x[j] = rep_inv[x[j]];
  }

  // Per block, the kernel element that corrects t.
  std::vector<Point> images(n);
  for (std::size_t j = 0; j < k; ++j) {
    const RegularAction& action = regular_[target[j]];
    std::vector<std::size_t> element_votes(action.elements.size(), 0);
    for (Point p : blocks[j]) {
      const Point s = c.word[p];
      if (block_of_[s] != target[j]) continue;
      ++element_votes[action.lookup[local_index_[t[p]]][local_index_[s]]];
    }
    auto winner = plurality(element_votes);
    if (!winner) return finish("tie in the kernel vote");
    const auto& e = action.elements[*winner];
    for (Point p : blocks[j]) images[p] = action.points[e[local_index_[t[p]]]];
  }
  record_plaintext(report, pk, c, Permutation(std::move(images)));
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

AttackReport block_system_attack(const PublicContext& pk, const Ciphertext& c) {
  return BlockSystemAttack(pk).attack(c);
}

std::vector<CycleType> pullback_cycle_types(std::size_t m, const CycleType& induced) {
  std::vector<CycleType> all, matches;
  CycleType current;
  partitions(m, m, current, all);
  for (const auto& type : all) {
    if (cycle_type(induced_action(m, with_cycle_type(m, type))) == induced) matches.push_back(type);
  }
  return matches;
}

AttackReport conjugator_search_attack(const PublicContext& pk, std::size_t m,
                                      const ConjugatorSearchOptions& options) {
  const std::size_t n = pk.key().degree;
  if (m < 5 || pair_count(m) != n) {
    fail(ErrorCode::InvalidArgument, "public key degree is not m(m-1)/2");
  }
  Stopwatch clock;
  AttackReport report;
  report.attack = "conjugator-search";
  auto finish = [&](std::string note) {
    report.note = std::move(note);
    report.elapsed_ms = clock.elapsed_ms();
    return report;
  };

  const auto h_gens = family_generators({Family::TwoSubsets, m, 0});
  Rng rng(0xc0ffULL);
  ChainOptions chain_options;
  chain_options.rng = &rng;
  chain_options.known_order = factorial(m);
  const auto h_chain = StabilizerChain::build(h_gens, chain_options);
  const auto& pub = pk.key().generators;

  // Smallest support first: cheap rejections come early.
  std::vector<std::size_t> order(pub.size());
  for (std::size_t i = 0; i < pub.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return support(pub[a]).size() < support(pub[b]).size();
  });
  auto lands_in_h = [&](const Permutation& candidate, std::optional<std::size_t> skip) {
    const Permutation candidate_inv = inverse(candidate);
    for (std::size_t i : order) {
      if (skip && i == *skip) continue;
      if (!h_chain.contains(conjugate(pub[i], candidate_inv))) return false;
    }
    return true;
  };
  auto succeed = [&](const Permutation& g) {
    report.recovered_generators = h_gens;
    report.recovered_conjugator = g;
    report.success = verify_key(pk, h_gens, g);
    return finish(report.success ? "" : "recovered key failed verification");
  };

  ++report.iterations;
  if (lands_in_h(Permutation::identity(n), std::nullopt)) return succeed(Permutation::identity(n));

  std::vector<std::vector<CycleType>> pullbacks;
  std::map<CycleType, std::vector<CycleType>> cache;
  for (const auto& q : pub) {
    auto type = cycle_type(q);
    auto it = cache.find(type);
    if (it == cache.end()) it = cache.emplace(type, pullback_cycle_types(m, type)).first;
    if (it->second.empty()) return finish("no cycle type of S_m induces a public generator's");
    pullbacks.push_back(it->second);
  }

  std::size_t pivot = 0;
  if (options.pivot) {
    if (*options.pivot >= pub.size()) fail(ErrorCode::OutOfRange, "pivot index out of range");
    pivot = *options.pivot;
  } else {
    std::optional<BigInt> best;
    for (std::size_t i = 0; i < pub.size(); ++i) {
      if (pub[i].is_identity()) continue;
      const BigInt size = symmetric_centralizer_order(cycle_type(pub[i]));
      if (!best || size < *best) {
        best = size;
        pivot = i;
      }
    }
  }
  const Permutation& q = pub[pivot];

  CentralizerOptions centralizer_options;
  centralizer_options.degree_limit = n;
  for (const auto& type : pullbacks[pivot]) {
    const Permutation a = induced_action(m, with_cycle_type(m, type));
    const Permutation z0 = *find_conjugating_element(a, q);
    const BigInt centralizer = symmetric_centralizer_order(cycle_type(a));
    std::uint64_t walked = 0;
    std::optional<Permutation> found;
    bool exhausted = false;
    for_each_centralizer_element(nullptr, a, [&](const Permutation& z) {
      if (report.iterations >= options.max_iterations) {
        exhausted = true;
        return false;
      }
      ++report.iterations;
      ++walked;
      Permutation candidate = compose(z, z0);
      if (lands_in_h(candidate, pivot)) {
        found = std::move(candidate);
        return false;
      }
      return true;
    }, centralizer_options);
    if (walked > centralizer) fail(ErrorCode::Internal, "coset walk exceeded the centralizer order");
    if (found) return succeed(*found);
    if (exhausted) return finish("iteration budget exhausted");
  }
  return finish("no conjugator in the searched cosets");
}

SecurityEstimate estimate_isd_cost(const FamilyParams& params, std::size_t errors) {
  const double r = static_cast<double>(errors);
  if (params.family == Family::Wreath) {
    return estimate_security(static_cast<double>(params.m * params.n), static_cast<double>(params.n), r);
  }
  const double m = static_cast<double>(params.m);
  return estimate_security(m * (m - 1) / 2, m * std::log2(m), r);
}

}  // namespace permcode
