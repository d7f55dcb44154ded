#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "permcode/bigint.hpp"
#include "permcode/perm.hpp"
#include "permcode/stab_chain.hpp"
#include "permcode/two_subsets.hpp"
#include "permcode/wreath.hpp"

namespace permcode {

enum class Family { TwoSubsets, Wreath };

std::string to_string(Family f);
Family parse_family(const std::string& name);

struct FamilyParams {
  Family family = Family::Wreath;
  std::size_t m = 0;
  std::size_t n = 0;  // columns; unused for two-subsets

  std::size_t degree() const;
  std::size_t capacity() const;
  BigInt group_order() const;
  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

/// Shared, immutable code objects (built once per parameter set).
std::shared_ptr<const TwoSubsetCode> two_subset_code(std::size_t m);
std::shared_ptr<const WreathCode> wreath_code(std::size_t m, std::size_t n);
std::vector<Permutation> family_generators(const FamilyParams& params);

struct PrivateKey {
  FamilyParams params;
  std::size_t errors = 0;
  std::vector<Permutation> generators;  // h_1..h_s generating H
  Permutation conjugator;               // g
};

struct PublicKey {
  std::size_t degree = 0;
  std::vector<Permutation> generators;  // a random generating set of g^-1 H g
  std::vector<Point> base;
  std::size_t errors = 0;
  BigInt message_space_size;
};

struct Ciphertext {
  Word word;
  std::string checksum;  // hex
};

struct KeyPair {
  PrivateKey private_key;
  PublicKey public_key;
};

struct KeygenOptions {
  FamilyParams params;
  std::optional<std::size_t> errors;                   // default: the code's capacity
  std::optional<std::size_t> public_generator_count;  // default: s + 2
  bool identity_conjugator = false;                   // test hook
  std::size_t retry_limit = 16;
};

KeyPair keygen(const KeygenOptions& options, Rng& rng);

/// First 8 bytes of SHA-256 over the canonical list form, as hex.
std::string checksum(const Permutation& g);

/// Public key plus the chain of Ĥ on the public base, which drives the
/// message encoding.
class PublicContext {
 public:
  explicit PublicContext(PublicKey key);

  const PublicKey& key() const noexcept { return key_; }
  const StabilizerChain& chain() const noexcept { return chain_; }
  Permutation message_element(const BigInt& index) const;
  std::optional<BigInt> message_index(const Permutation& g) const;

 private:
  PublicKey key_;
  StabilizerChain chain_;
};

class PrivateContext {
 public:
  explicit PrivateContext(PrivateKey key);

  const PrivateKey& key() const noexcept { return key_; }
  /// Nearest element of H to the word under the family decoder.
  std::optional<Permutation> decode_in_h(const Word& w) const;
  /// The word moved into H's coordinates: w'[x] = c[x.g] . g^-1.
  Word unconjugate(const Word& c) const;

 private:
  PrivateKey key_;
  Permutation conjugator_inverse_;
  std::shared_ptr<const TwoSubsetCode> two_subsets_;
  std::shared_ptr<const WreathCode> wreath_;
};

Ciphertext encrypt(const PublicContext& pk, const BigInt& message, Rng& rng);
/// Adds exactly `errors` wrong symbols at distinct uniform positions.
Word add_errors(const Permutation& g, std::size_t errors, Rng& rng);

struct DecryptResult {
  std::optional<BigInt> message;
  std::string failure;  // empty on success
};
DecryptResult decrypt(const PrivateContext& sk, const PublicContext& pk, const Ciphertext& c);

}  // namespace permcode
