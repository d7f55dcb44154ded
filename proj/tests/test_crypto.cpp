#include <algorithm>

#include "doctest.h"
#include "permcode/crypto.hpp"
#include "permcode/error.hpp"
#include "permcode/serialize.hpp"

using namespace permcode;

namespace {

KeyPair make_keys(Family family, std::size_t m, std::size_t n, Rng& rng, bool identity = false,
                  std::optional<std::size_t> errors = std::nullopt) {
  KeygenOptions options;
  options.params = {family, m, n};
  options.identity_conjugator = identity;
  options.errors = errors;
  return keygen(options, rng);
}

BigInt random_index(const BigInt& bound, Rng& rng) {
  BigInt k = 0;
  for (int d = 0; d < 12; ++d) k = (k << 64) + rng();
  return k % bound;
}

std::size_t distance_to_group(const StabilizerChain& chain, const Word& w) {
  std::size_t best = w.size();
  chain.for_each_element([&](const Permutation& g) {
    best = std::min(best, hamming_distance(g, w));
    return true;
  });
  return best;
}

}  // namespace

TEST_CASE("keygen invariants") {
  Rng rng(51);
  for (auto [family, m, n] : std::vector<std::tuple<Family, std::size_t, std::size_t>>{
           {Family::Wreath, 5, 6}, {Family::TwoSubsets, 6, 0}, {Family::Wreath, 3, 10}}) {
    auto keys = make_keys(family, m, n, rng);
    const auto& sk = keys.private_key;
    const auto& pk = keys.public_key;
    CHECK(pk.generators.size() == sk.generators.size() + 2);
    CHECK(pk.message_space_size == sk.params.group_order());
    auto pub = build_chain(pk.generators);
    auto priv = build_chain(sk.generators);
    CHECK(pub.order() == priv.order());
    for (const auto& h : sk.generators) CHECK(pub.contains(conjugate(h, sk.conjugator)));
    CHECK(check_base(pk.generators, pk.base).is_base);
    if (family == Family::Wreath) {
      CHECK(minimal_block_system(pk.generators).block_size() == m);
    }
  }
  auto plain = make_keys(Family::Wreath, 3, 4, rng, true);
  auto h_chain = build_chain(plain.private_key.generators);
  for (const auto& g : plain.public_key.generators) CHECK(h_chain.contains(g));
  CHECK(plain.private_key.conjugator.is_identity());
}

TEST_CASE("encryption adds exactly r errors") {
  Rng rng(52);
  auto keys = make_keys(Family::Wreath, 5, 6, rng);
  PublicContext pk(keys.public_key);
  std::vector<std::size_t> hits(pk.key().degree, 0);
  bool repeated = false;
  for (int t = 0; t < 1000; ++t) {
    auto index = random_index(pk.key().message_space_size, rng);
    auto h = pk.message_element(index);
    auto c = encrypt(pk, index, rng);
    CHECK(hamming_distance(h, c.word) == pk.key().errors);
    CHECK(c.checksum == checksum(h));
    repeated |= !c.word.is_permutation();
    for (Point x = 0; x < h.degree(); ++x) hits[x] += h[x] != c.word[x];
  }
  CHECK(repeated);
  // Position frequencies: chi-square with 29 degrees of freedom, 0.1% tail.
  const double expected = 1000.0 * 2 / 30;
  double chi2 = 0;
  for (auto hcount : hits) chi2 += (hcount - expected) * (hcount - expected) / expected;
  CHECK(chi2 < 58.3);

  auto zero = make_keys(Family::TwoSubsets, 5, 0, rng, false, 0);
  PublicContext pk0(zero.public_key);
  auto c0 = encrypt(pk0, 7, rng);
  CHECK(Word(pk0.message_element(7)) == c0.word);
  CHECK_THROWS_AS(encrypt(pk0, pk0.key().message_space_size, rng), Error);
}

TEST_CASE("message map is a bijection onto the public group") {
  Rng rng(53);
  auto keys = make_keys(Family::TwoSubsets, 5, 0, rng);
  PublicContext pk(keys.public_key);
  std::vector<Permutation> seen;
  for (int k = 0; k < 120; ++k) {
    auto g = pk.message_element(k);
    CHECK(pk.chain().contains(g));
    CHECK(pk.message_index(g) == BigInt(k));
    seen.push_back(g);
  }
  std::sort(seen.begin(), seen.end());
  CHECK(std::unique(seen.begin(), seen.end()) == seen.end());
  // Rebuilding from serialized data gives the same encoding.
  PublicContext again(public_key_from_json(to_json(keys.public_key)));
  for (int k = 0; k < 120; k += 7) CHECK(again.message_element(k) == pk.message_element(k));
}

TEST_CASE("round trips at full capacity") {
  Rng rng(54);
  for (auto [family, m, n] : std::vector<std::tuple<Family, std::size_t, std::size_t>>{
           {Family::Wreath, 5, 10}, {Family::TwoSubsets, 7, 0}, {Family::Wreath, 7, 4}, {Family::TwoSubsets, 9, 0}}) {
    for (int key = 0; key < 4; ++key) {
      auto keys = make_keys(family, m, n, rng);
      PublicContext pk(keys.public_key);
      PrivateContext sk(keys.private_key);
      for (int t = 0; t < 50; ++t) {
        auto index = random_index(pk.key().message_space_size, rng);
        auto c = encrypt(pk, index, rng);
        auto out = decrypt(sk, pk, c);
        REQUIRE(out.message);
        CHECK(*out.message == index);
      }
    }
  }
}

TEST_CASE("tampered ciphertexts never decrypt to a wrong message") {
  Rng rng(55);
  for (auto [family, m, n] : std::vector<std::tuple<Family, std::size_t, std::size_t>>{
           {Family::Wreath, 5, 6}, {Family::TwoSubsets, 7, 0}}) {
    auto keys = make_keys(family, m, n, rng);
    PublicContext pk(keys.public_key);
    PrivateContext sk(keys.private_key);
    const std::size_t r = pk.key().errors;
    int failures = 0;
    for (int t = 0; t < 200; ++t) {
      auto index = random_index(pk.key().message_space_size, rng);
      Word w = add_errors(pk.message_element(index), 2 * r + 1, rng);
      auto out = decrypt(sk, pk, {w, checksum(pk.message_element(index))});
      if (out.message) {
        CHECK(*out.message == index);
      } else {
        ++failures;
      }
      // A checksum that does not match is always rejected.
      Ciphertext forged{add_errors(pk.message_element(index), r, rng), "0000000000000000"};
      CHECK_FALSE(decrypt(sk, pk, forged).message);
      CHECK(decrypt(sk, pk, forged).failure == "checksum mismatch");
    }
    CHECK(failures > 0);
  }
}

TEST_CASE("conjugation is an isometry") {
  Rng rng(56);
  for (auto [family, m, n] : std::vector<std::tuple<Family, std::size_t, std::size_t>>{
           {Family::Wreath, 3, 3}, {Family::TwoSubsets, 5, 0}}) {
    auto keys = make_keys(family, m, n, rng);
    PrivateContext sk(keys.private_key);
    auto h_chain = build_chain(keys.private_key.generators);
    auto hat_chain = build_chain(keys.public_key.generators);
    for (int t = 0; t < 20; ++t) {
      Word c = add_errors(random_permutation(keys.public_key.degree, rng), 2, rng);
      CHECK(distance_to_group(hat_chain, c) == distance_to_group(h_chain, sk.unconjugate(c)));
    }
  }
}

TEST_CASE("serialization") {
  Rng rng(57);
  auto keys = make_keys(Family::Wreath, 3, 4, rng);
  auto sk = private_key_from_json(to_json(keys.private_key));
  CHECK(sk.params == keys.private_key.params);
  CHECK(sk.generators == keys.private_key.generators);
  CHECK(sk.conjugator == keys.private_key.conjugator);
  CHECK(sk.errors == keys.private_key.errors);
  auto pk = public_key_from_json(to_json(keys.public_key));
  CHECK(pk.generators == keys.public_key.generators);
  CHECK(pk.base == keys.public_key.base);
  CHECK(pk.message_space_size == keys.public_key.message_space_size);
  PublicContext ctx(pk);
  auto c = encrypt(ctx, 5, rng);
  auto c2 = ciphertext_from_json(to_json(c));
  CHECK(c2.word == c.word);
  CHECK(c2.checksum == c.checksum);

  std::string text = to_json(c);
  text.replace(text.find("\"version\":1"), 11, "\"version\":2");
  CHECK_THROWS_AS(ciphertext_from_json(text), Error);
  CHECK_THROWS_AS(public_key_from_json("{\"family_degree\":3}"), Error);
  CHECK_THROWS_AS(public_key_from_json("not json"), Error);
  CHECK(to_json(keys.public_key).find("\"message_space_size\":\"") != std::string::npos);
  CHECK(checksum(Permutation::identity(3)).size() == 16);
}
