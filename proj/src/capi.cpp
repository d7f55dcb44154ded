#include "permcode/permcode.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"
#include "permcode/analysis.hpp"
#include "permcode/attacks.hpp"
#include "permcode/crypto.hpp"
#include "permcode/error.hpp"
#include "permcode/reduction.hpp"
#include "permcode/serialize.hpp"
#include "permcode/verify.hpp"

using namespace permcode;

struct pc_private_key {
  PrivateContext context;
};

struct pc_public_key {
  PublicContext context;
};

struct pc_ciphertext {
  Ciphertext value;
};

namespace {

thread_local std::string last_error;

pc_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return PC_INVALID_ARGUMENT;
    case ErrorCode::DegreeMismatch: return PC_DEGREE_MISMATCH;
    case ErrorCode::OutOfRange: return PC_OUT_OF_RANGE;
    case ErrorCode::LimitExceeded: return PC_LIMIT_EXCEEDED;
    case ErrorCode::Parse: return PC_PARSE_ERROR;
    case ErrorCode::Io: return PC_IO_ERROR;
    case ErrorCode::Inapplicable: return PC_INAPPLICABLE;
    case ErrorCode::Internal: return PC_INTERNAL_ERROR;
  }
  return PC_INTERNAL_ERROR;
}

pc_status report(pc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
pc_status guarded(F&& body) noexcept {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return report(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return report(PC_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return report(PC_INTERNAL_ERROR, e.what());
  } catch (...) {
    return report(PC_INTERNAL_ERROR, "unknown failure");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T>
void require(const T* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

BigInt parse_index(const char* text) {
  require(text, "message");
  BigInt value = parse_bigint(text);
  return value;
}

}  // namespace

extern "C" {

const char* pc_last_error(void) { return last_error.c_str(); }

const char* pc_status_name(pc_status status) {
  switch (status) {
    case PC_OK: return "ok";
    case PC_INVALID_ARGUMENT: return "invalid argument";
    case PC_DEGREE_MISMATCH: return "degree mismatch";
    case PC_OUT_OF_RANGE: return "out of range";
    case PC_LIMIT_EXCEEDED: return "limit exceeded";
    case PC_PARSE_ERROR: return "parse error";
    case PC_IO_ERROR: return "i/o error";
    case PC_INAPPLICABLE: return "inapplicable";
    case PC_INTERNAL_ERROR: return "internal error";
    case PC_DECODE_FAILURE: return "decode failure";
    case PC_BUDGET_EXHAUSTED: return "budget exhausted";
    case PC_VERIFICATION_FAILED: return "verification failed";
  }
  return "unknown status";
}

void pc_string_free(char* s) { std::free(s); }

pc_status pc_keygen(const char* family, size_t m, size_t n, long long errors, uint64_t seed,
                    pc_private_key** private_key, pc_public_key** public_key) {
  return guarded([&] {
    require(family, "family");
    require(private_key, "private key output");
    require(public_key, "public key output");
    KeygenOptions options;
    options.params = {parse_family(family), m, n};
    if (errors >= 0) options.errors = static_cast<std::size_t>(errors);
    Rng rng(seed);
    KeyPair keys = keygen(options, rng);
    auto pub = std::make_unique<pc_public_key>(pc_public_key{PublicContext(std::move(keys.public_key))});
    auto priv = std::make_unique<pc_private_key>(pc_private_key{PrivateContext(std::move(keys.private_key))});
    *public_key = pub.release();
    *private_key = priv.release();
    return PC_OK;
  });
}

pc_status pc_private_key_from_json(const char* json, pc_private_key** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output");
    *out = new pc_private_key{PrivateContext(private_key_from_json(json))};
    return PC_OK;
  });
}

pc_status pc_private_key_to_json(const pc_private_key* key, char** json) {
  return guarded([&] {
    require(key, "private key");
    require(json, "output");
    *json = duplicate(to_json(key->context.key()));
    return PC_OK;
  });
}

void pc_private_key_free(pc_private_key* key) { delete key; }

pc_status pc_public_key_from_json(const char* json, pc_public_key** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output");
    *out = new pc_public_key{PublicContext(public_key_from_json(json))};
    return PC_OK;
  });
}

pc_status pc_public_key_to_json(const pc_public_key* key, char** json) {
  return guarded([&] {
    require(key, "public key");
    require(json, "output");
    *json = duplicate(to_json(key->context.key()));
    return PC_OK;
  });
}

pc_status pc_public_key_message_space(const pc_public_key* key, char** size) {
  return guarded([&] {
    require(key, "public key");
    require(size, "output");
    *size = duplicate(key->context.key().message_space_size.str());
    return PC_OK;
  });
}

void pc_public_key_free(pc_public_key* key) { delete key; }

pc_status pc_ciphertext_from_json(const char* json, pc_ciphertext** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output");
    *out = new pc_ciphertext{ciphertext_from_json(json)};
    return PC_OK;
  });
}

pc_status pc_ciphertext_to_json(const pc_ciphertext* c, char** json) {
  return guarded([&] {
    require(c, "ciphertext");
    require(json, "output");
    *json = duplicate(to_json(c->value));
    return PC_OK;
  });
}

void pc_ciphertext_free(pc_ciphertext* c) { delete c; }

pc_status pc_encrypt(const pc_public_key* key, const char* message, uint64_t seed,
                     pc_ciphertext** out) {
  return guarded([&] {
    require(key, "public key");
    require(out, "output");
    Rng rng(seed);
    *out = new pc_ciphertext{encrypt(key->context, parse_index(message), rng)};
    return PC_OK;
  });
}

pc_status pc_decrypt(const pc_private_key* private_key, const pc_public_key* public_key,
                     const pc_ciphertext* c, char** message) {
  return guarded([&] {
    require(private_key, "private key");
    require(public_key, "public key");
    require(c, "ciphertext");
    require(message, "output");
    *message = nullptr;
    auto result = decrypt(private_key->context, public_key->context, c->value);
    if (!result.message) return report(PC_DECODE_FAILURE, result.failure);
    *message = duplicate(result.message->str());
    return PC_OK;
  });
}

pc_status pc_attack(const char* kind, const pc_public_key* key, const pc_ciphertext* c,
                    const pc_attack_options* options, char** report_json) {
  return guarded([&] {
    require(kind, "kind");
    require(key, "public key");
    require(report_json, "output");
    *report_json = nullptr;
    pc_attack_options opts = options ? *options : pc_attack_options{0, 0, 1, -1};
    const std::string k = kind;
    const PublicContext& pk = key->context;
    auto need_ciphertext = [&]() -> const Ciphertext& {
      require(c, "ciphertext");
      return c->value;
    };
    AttackReport result;
    if (k == "brute-enum") {
      result = brute_force_enumerate(pk, need_ciphertext(), opts.budget ? opts.budget : kDefaultEnumerationLimit);
    } else if (k == "brute-ball") {
      result = brute_force_ball(pk, need_ciphertext(), opts.budget ? opts.budget : kDefaultEnumerationLimit);
    } else if (k == "isd") {
      IsdOptions isd;
      if (opts.budget) isd.max_iterations = opts.budget;
      isd.seed = opts.seed;
      isd.threads = opts.threads ? opts.threads : 1;
      result = isd_attack(pk, need_ciphertext(), isd);
    } else if (k == "block") {
      result = block_system_attack(pk, need_ciphertext());
    } else if (k == "conjugator") {
      // The degree m(m-1)/2 determines m.
      std::size_t m = 2;
      while (pair_count(m) < pk.key().degree) ++m;
      ConjugatorSearchOptions search;
      if (opts.budget) search.max_iterations = opts.budget;
      if (opts.pivot >= 0) search.pivot = static_cast<std::size_t>(opts.pivot);
      result = conjugator_search_attack(pk, m, search);
    } else {
      fail(ErrorCode::InvalidArgument, "unknown attack kind: " + k);
    }
    result.seed = opts.seed;
    *report_json = duplicate(to_json(result));
    if (!result.success) return report(PC_BUDGET_EXHAUSTED, result.note);
    return PC_OK;
  });
}

pc_status pc_analyze(const char* kind, const size_t* ms, size_t m_count, const size_t* ns,
                     size_t n_count, const char* const* levels, size_t level_count, char** csv) {
  return guarded([&] {
    require(kind, "kind");
    require(csv, "output");
    if (m_count) require(ms, "ms");
    if (n_count) require(ns, "ns");
    if (level_count) require(levels, "levels");
    CurveGrid grid;
    grid.ms.assign(ms, ms + m_count);
    grid.ns.assign(ns, ns + n_count);
    for (size_t i = 0; i < level_count; ++i) grid.levels.emplace_back(levels[i]);
    std::ostringstream out;
    const std::string k = kind;
    if (k == "decoding-curve") {
      write_decoding_curve(out, grid);
    } else if (k == "threshold-curve") {
      write_threshold_curve(out, grid);
    } else if (k == "security-wreath") {
      write_security_wreath(out, grid);
    } else if (k == "security-two-subsets") {
      write_security_two_subsets(out, grid);
    } else {
      fail(ErrorCode::InvalidArgument, "unknown analysis: " + k);
    }
    *csv = duplicate(out.str());
    return PC_OK;
  });
}

pc_status pc_reduce(const char* dimacs, long long target, int verify, char** instance, char** summary) {
  return guarded([&] {
    require(dimacs, "formula");
    require(instance, "output");
    *instance = nullptr;
    if (summary) *summary = nullptr;
    std::optional<std::size_t> k;
    if (target >= 0) k = static_cast<std::size_t>(target);
    const auto formula = parse_dimacs(dimacs, k);
    const auto reduced = reduce(formula);
    *instance = duplicate(to_json(reduced));
    if (!verify) return PC_OK;
    const auto sat = solve_max2sat_brute(formula);
    const auto dist = solve_subgroup_distance_brute(reduced);
    const bool ok = dist.agreement == 4 * sat.satisfied && commuting_involutions(reduced.generators);
    nlohmann::json j{{"max2sat_optimum", sat.satisfied},
                     {"max_agreement", dist.agreement},
                     {"target", formula.target},
                     {"threshold", reduced.threshold},
                     {"satisfiable_at_target", sat.satisfied >= formula.target},
                     {"correspondence", ok}};
    if (summary) *summary = duplicate(j.dump() + "\n");
    if (!ok) return report(PC_VERIFICATION_FAILED, "subgroup optimum is not four times the Max-2-SAT optimum");
    return PC_OK;
  });
}

pc_status pc_verify(uint64_t seed, char** table) {
  return guarded([&] {
    require(table, "output");
    const auto results = run_verify_suite(seed);
    *table = duplicate(format_check_table(results));
    for (const auto& r : results) {
      if (!r.passed) return report(PC_VERIFICATION_FAILED, r.name + ": " + r.detail);
    }
    return PC_OK;
  });
}

}  // extern "C"
