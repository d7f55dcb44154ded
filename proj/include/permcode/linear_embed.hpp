#pragma once

#include <optional>
#include <string>
#include <vector>

#include "permcode/perm.hpp"

namespace permcode {

using Vector = std::vector<std::size_t>;  // symbols in {0..q-1}

struct LinearCodeSpec {
  std::size_t q = 2;
  std::size_t n = 0;
  std::vector<Vector> basis;

  /// Throws InvalidArgument unless q is prime, every basis vector has
  /// length n with symbols below q, and the basis is independent mod q.
  void validate() const;
};

bool is_prime(std::size_t q);
/// Rank over Z_q (q prime).
std::size_t rank_mod(std::vector<Vector> rows, std::size_t q);
std::size_t weight(const Vector& v);

/// Bit i set multiplies in the transposition of points 2i and 2i+1.
Permutation embed_binary_vector(const std::vector<bool>& v);
/// Coordinate a at position i shifts block {qi..qi+q-1} by a steps.
/// Throws InvalidArgument for non-prime q.
Permutation embed_qary_vector(std::size_t q, const Vector& v);
/// The vector whose embedding is g, or nullopt when g is not block-wise a
/// cyclic shift.
std::optional<Vector> pullback(std::size_t q, const Permutation& g);

/// Images of the basis vectors.
std::vector<Permutation> embed_code(const LinearCodeSpec& spec);
/// All q^k codewords; throws LimitExceeded beyond `limit`.
std::vector<Vector> codewords(const LinearCodeSpec& spec, std::size_t limit = 1 << 16);
std::size_t minimum_weight(const LinearCodeSpec& spec);

struct CaveatReport {
  std::size_t capacity = 0;  // t of the linear code
  // Errors lying in the embedded group: pulled back and decoded linearly.
  std::size_t structured_errors = 0;
  bool structured_decoded = false;
  // Errors outside it: the pullback does not exist.
  std::size_t unstructured_errors = 0;
  bool unstructured_pullback_defined = true;
  bool unstructured_nearest_is_sent = false;  // nearest image element, by enumeration
  bool zero_error_round_trip = false;
};

/// Demonstrates that linear decoding through the embedding handles only
/// error patterns inside the embedded group. Tiny binary codes only.
CaveatReport demo_error_pattern_caveat(const LinearCodeSpec& spec, Rng& rng);

/// {q, n, basis}
LinearCodeSpec linear_code_from_json(const std::string& text);
std::string to_json(const LinearCodeSpec& spec);
std::string to_json(const CaveatReport& report);

}  // namespace permcode
