#pragma once

#include <string>

#include "permcode/attacks.hpp"
#include "permcode/crypto.hpp"

namespace permcode {

inline constexpr int kFormatVersion = 1;

// JSON forms of the persisted artifacts. Permutations and words are arrays
// of 1-based images; big integers are decimal strings. Parsing rejects any
// version other than kFormatVersion.
std::string to_json(const PrivateKey& key);
std::string to_json(const PublicKey& key);
std::string to_json(const Ciphertext& c);
PrivateKey private_key_from_json(const std::string& text);
PublicKey public_key_from_json(const std::string& text);
Ciphertext ciphertext_from_json(const std::string& text);

/// {attack, success, iterations, seed, elapsed_ms, recovered, note}
std::string to_json(const AttackReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace permcode
