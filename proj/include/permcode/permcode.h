#ifndef PERMCODE_PERMCODE_H
#define PERMCODE_PERMCODE_H

/* C interface to the permutation-code library. Every function returns a
 * pc_status; on failure pc_last_error() describes it (per thread). Strings
 * returned through char** are owned by the caller and released with
 * pc_string_free. Handles are released with their *_free function; passing
 * NULL to any *_free is a no-op. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define PC_API __attribute__((visibility("default")))
#else
#define PC_API
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_INVALID_ARGUMENT = 1,
  PC_DEGREE_MISMATCH = 2,
  PC_OUT_OF_RANGE = 3,
  PC_LIMIT_EXCEEDED = 4,
  PC_PARSE_ERROR = 5,
  PC_IO_ERROR = 6,
  PC_INAPPLICABLE = 7,
  PC_INTERNAL_ERROR = 8,
  PC_DECODE_FAILURE = 9,
  PC_BUDGET_EXHAUSTED = 10,
  PC_VERIFICATION_FAILED = 11
} pc_status;

typedef struct pc_private_key pc_private_key;
typedef struct pc_public_key pc_public_key;
typedef struct pc_ciphertext pc_ciphertext;

PC_API const char* pc_last_error(void);
PC_API const char* pc_status_name(pc_status status);
PC_API void pc_string_free(char* s);

/* family: "wreath" or "two-subsets"; n is ignored for two-subsets.
 * errors < 0 selects the code's correction capacity. */
PC_API pc_status pc_keygen(const char* family, size_t m, size_t n, long long errors, uint64_t seed,
                           pc_private_key** private_key, pc_public_key** public_key);

PC_API pc_status pc_private_key_from_json(const char* json, pc_private_key** out);
PC_API pc_status pc_private_key_to_json(const pc_private_key* key, char** json);
PC_API void pc_private_key_free(pc_private_key* key);

PC_API pc_status pc_public_key_from_json(const char* json, pc_public_key** out);
PC_API pc_status pc_public_key_to_json(const pc_public_key* key, char** json);
/* Decimal string. */
PC_API pc_status pc_public_key_message_space(const pc_public_key* key, char** size);
PC_API void pc_public_key_free(pc_public_key* key);

PC_API pc_status pc_ciphertext_from_json(const char* json, pc_ciphertext** out);
PC_API pc_status pc_ciphertext_to_json(const pc_ciphertext* c, char** json);
PC_API void pc_ciphertext_free(pc_ciphertext* c);

/* message: decimal index in [0, message space size). */
PC_API pc_status pc_encrypt(const pc_public_key* key, const char* message, uint64_t seed,
                            pc_ciphertext** out);
/* PC_DECODE_FAILURE when the ciphertext does not decrypt; *message is then
 * NULL and pc_last_error() gives the reason. */
PC_API pc_status pc_decrypt(const pc_private_key* private_key, const pc_public_key* public_key,
                            const pc_ciphertext* c, char** message);

typedef struct pc_attack_options {
  uint64_t seed;
  uint64_t budget;   /* iterations (isd, conjugator) or enumeration limit; 0 = default */
  unsigned threads;  /* isd only; 0 = 1 */
  long long pivot;   /* conjugator only; < 0 = smallest centralizer */
} pc_attack_options;

/* kind: brute-enum, brute-ball, isd, block, conjugator. The ciphertext may
 * be NULL for conjugator. The JSON report is written even when the attack
 * fails; the status is then PC_BUDGET_EXHAUSTED. */
PC_API pc_status pc_attack(const char* kind, const pc_public_key* key, const pc_ciphertext* c,
                           const pc_attack_options* options, char** report);

/* kind: decoding-curve, threshold-curve, security-wreath,
 * security-two-subsets. levels are decimal or p/q strings. */
PC_API pc_status pc_analyze(const char* kind, const size_t* ms, size_t m_count, const size_t* ns,
                            size_t n_count, const char* const* levels, size_t level_count,
                            char** csv);

/* DIMACS text in, subgroup-distance JSON out. target < 0 means the clause
 * count. With verify set, both brute-force solvers run and a JSON summary
 * is written to *summary; PC_VERIFICATION_FAILED if the optimum is not 4x. */
PC_API pc_status pc_reduce(const char* dimacs, long long target, int verify, char** instance,
                           char** summary);

/* Runs the desk-scale invariant suite; writes a text table.
 * PC_VERIFICATION_FAILED if any check fails. */
PC_API pc_status pc_verify(uint64_t seed, char** table);

#ifdef __cplusplus
}
#endif

#endif
