#include "permcode/crypto.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <map>
#include <mutex>

#include "permcode/error.hpp"

namespace permcode {

std::string to_string(Family f) { return f == Family::Wreath ? "wreath" : "two-subsets"; }

Family parse_family(const std::string& name) {
  if (name == "wreath") return Family::Wreath;
  if (name == "two-subsets" || name == "two_subsets") return Family::TwoSubsets;
  fail(ErrorCode::Parse, "unknown code family: " + name);
}

std::size_t FamilyParams::degree() const {
  return family == Family::Wreath ? m * n : pair_count(m);
}

std::size_t FamilyParams::capacity() const {
  return family == Family::Wreath ? (m - 1) / 2 : m - 3;
}

BigInt FamilyParams::group_order() const {
  if (family == Family::TwoSubsets) return factorial(m);
  BigInt order = factorial(n);
  for (std::size_t j = 0; j < n; ++j) order *= m;
  return order;
}

std::shared_ptr<const TwoSubsetCode> two_subset_code(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const TwoSubsetCode>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_shared<const TwoSubsetCode>(m);
  return slot;
}

std::shared_ptr<const WreathCode> wreath_code(std::size_t m, std::size_t n) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const WreathCode>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{m, n}];
  if (!slot) slot = std::make_shared<const WreathCode>(m, n);
  return slot;
}

std::vector<Permutation> family_generators(const FamilyParams& params) {
  if (params.family == Family::Wreath) return WreathCode(params.m, params.n).generators();
  if (params.m < 5) fail(ErrorCode::InvalidArgument, "two-subsets family needs m >= 5");
  std::vector<Point> swap12(params.m), cycle(params.m);
  for (Point x = 0; x < params.m; ++x) {
    swap12[x] = x;
    cycle[x] = static_cast<Point>((x + 1) % params.m);
  }
  std::swap(swap12[0], swap12[1]);
  return {induced_action(params.m, Permutation(swap12)),
          induced_action(params.m, Permutation(cycle))};
}

std::string checksum(const Permutation& g) {
  const std::string text = to_list_string(g);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::Internal, "SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 8; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

KeyPair keygen(const KeygenOptions& options, Rng& rng) {
  const FamilyParams& params = options.params;
  if (params.family == Family::Wreath && (params.m < 2 || params.n < 1)) {
    fail(ErrorCode::InvalidArgument, "wreath family needs m >= 2 and n >= 1");
  }
  KeyPair keys;
  PrivateKey& sk = keys.private_key;
  sk.params = params;
  sk.errors = options.errors.value_or(params.capacity());
  sk.generators = family_generators(params);
  const std::size_t degree = params.degree();
  if (sk.errors > degree) fail(ErrorCode::InvalidArgument, "more errors than positions");
  sk.conjugator =
      options.identity_conjugator ? Permutation::identity(degree) : random_permutation(degree, rng);

  std::vector<Permutation> conjugated;
  for (const auto& h : sk.generators) conjugated.push_back(conjugate(h, sk.conjugator));
  const std::size_t count = options.public_generator_count.value_or(sk.generators.size() + 2);
  if (count == 0) fail(ErrorCode::InvalidArgument, "need at least one public generator");
  const BigInt order = params.group_order();

  std::uniform_int_distribution<std::size_t> length(3, 7);
  std::uniform_int_distribution<std::size_t> which(0, conjugated.size() - 1);
  for (std::size_t attempt = 0; attempt < options.retry_limit; ++attempt) {
    std::vector<Permutation> pub;
    for (std::size_t t = 0; t < count; ++t) {
      Permutation p = Permutation::identity(degree);
      for (std::size_t f = length(rng); f > 0; --f) {
        const Permutation& h = conjugated[which(rng)];
        const auto ord = element_order(h);
        std::uniform_int_distribution<std::uint64_t> exponent(1, std::max<std::uint64_t>(1, ord - 1));
        p = compose(p, power(h, static_cast<std::int64_t>(exponent(rng))));
      }
      pub.push_back(std::move(p));
    }
    if (std::all_of(pub.begin(), pub.end(), [](const auto& p) { return p.is_identity(); })) continue;
    ChainOptions chain_options;
    chain_options.known_order = order;
    chain_options.rng = &rng;
    std::optional<StabilizerChain> chain;
    try {
      chain = StabilizerChain::build(pub, chain_options);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LimitExceeded) throw;
      continue;
    }
    PublicKey& pk = keys.public_key;
    pk.degree = degree;
    pk.generators = std::move(pub);
    pk.base = chain->base();
    pk.errors = sk.errors;
    pk.message_space_size = order;
    return keys;
  }
  fail(ErrorCode::LimitExceeded, "random public generators failed to generate the group");
}

PublicContext::PublicContext(PublicKey key) : key_(std::move(key)) {
  if (key_.generators.empty()) fail(ErrorCode::InvalidArgument, "public key has no generators");
  for (const auto& g : key_.generators) {
    if (g.degree() != key_.degree) fail(ErrorCode::DegreeMismatch, "public generator degree");
  }
  Rng rng(0x9b1cULL);
  ChainOptions options;
  options.preferred_base = key_.base;
  options.known_order = key_.message_space_size;
  options.rng = &rng;
  chain_ = StabilizerChain::build(key_.generators, options);
  if (chain_.base() != key_.base) {
    fail(ErrorCode::InvalidArgument, "public base is not an irredundant base of the public group");
  }
}

Permutation PublicContext::message_element(const BigInt& index) const {
  if (index < 0 || index >= key_.message_space_size) {
    fail(ErrorCode::OutOfRange, "message index outside [0, message_space_size)");
  }
  return chain_.element_from_rank(index);
}

std::optional<BigInt> PublicContext::message_index(const Permutation& g) const {
  return chain_.rank_of(g);
}

PrivateContext::PrivateContext(PrivateKey key)
    : key_(std::move(key)), conjugator_inverse_(inverse(key_.conjugator)) {
  if (key_.conjugator.degree() != key_.params.degree()) {
    fail(ErrorCode::DegreeMismatch, "conjugator degree does not match the code");
  }
  for (const auto& h : key_.generators) {
    if (h.degree() != key_.params.degree()) fail(ErrorCode::DegreeMismatch, "private generator degree");
  }
  if (key_.params.family == Family::Wreath) {
    wreath_ = wreath_code(key_.params.m, key_.params.n);
  } else {
    two_subsets_ = two_subset_code(key_.params.m);
  }
}

Word PrivateContext::unconjugate(const Word& c) const {
  const Permutation& g = key_.conjugator;
  if (c.size() != g.degree()) fail(ErrorCode::DegreeMismatch, "ciphertext length mismatch");
  std::vector<Point> symbols(c.size());
  for (Point x = 0; x < c.size(); ++x) symbols[x] = conjugator_inverse_[c[g[x]]];
  return Word(std::move(symbols));
}

std::optional<Permutation> PrivateContext::decode_in_h(const Word& w) const {
  if (wreath_) return wreath_->decode_majority(w).element;
  return two_subsets_->decode(w);
}

Word add_errors(const Permutation& g, std::size_t errors, Rng& rng) {
  const std::size_t n = g.degree();
  if (errors > n) fail(ErrorCode::InvalidArgument, "more errors than positions");
  Word w(g);
  if (errors == 0) return w;
  if (n < 2) fail(ErrorCode::InvalidArgument, "cannot corrupt a word of length 1");
  std::vector<Point> positions(n);
  for (Point x = 0; x < n; ++x) positions[x] = x;
  std::uniform_int_distribution<Point> symbol(0, static_cast<Point>(n - 2));
  for (std::size_t i = 0; i < errors; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(positions[i], positions[pick(rng)]);
    Point s = symbol(rng);
    if (s >= g[positions[i]]) ++s;
    w.set(positions[i], s);
  }
  return w;
}

Ciphertext encrypt(const PublicContext& pk, const BigInt& message, Rng& rng) {
  const Permutation h = pk.message_element(message);
  return {add_errors(h, pk.key().errors, rng), checksum(h)};
}

DecryptResult decrypt(const PrivateContext& sk, const PublicContext& pk, const Ciphertext& c) {
  if (c.word.size() != pk.key().degree) fail(ErrorCode::DegreeMismatch, "ciphertext length mismatch");
  auto h = sk.decode_in_h(sk.unconjugate(c.word));
  if (!h) return {std::nullopt, "decoder failure"};
  const Permutation& g = sk.key().conjugator;
  const Permutation recovered = conjugate(*h, g);
  if (checksum(recovered) != c.checksum) return {std::nullopt, "checksum mismatch"};
  auto index = pk.message_index(recovered);
  if (!index) return {std::nullopt, "decoded element is not in the public group"};
  return {index, {}};
}

}  // namespace permcode
