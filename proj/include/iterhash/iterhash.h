/* iterhash: iterated string hash families, exact property verification,
 * forced-collision witnesses and string-length bounds.
 *
 * Every call that can fail returns an ih_status; on failure ih_last_error()
 * gives a message for the calling thread. Strings returned through char**
 * are owned by the caller and released with ih_string_free. */
#ifndef ITERHASH_H
#define ITERHASH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IH_API __declspec(dllexport)
#else
#define IH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ih_status {
  IH_OK = 0,
  IH_ERR_DOMAIN = 1,
  IH_ERR_CAPACITY = 2,
  IH_ERR_USAGE = 3,
  IH_ERR_STRUCTURAL = 4,
  IH_ERR_UNSUPPORTED = 5,
  IH_ERR_INTERNAL = 6
} ih_status;

typedef enum ih_format { IH_FORMAT_JSON = 0, IH_FORMAT_CSV = 1, IH_FORMAT_TEXT = 2 } ih_format;

typedef struct ih_family ih_family;
typedef struct ih_instance ih_instance;
typedef struct ih_strings ih_strings;

IH_API const char* ih_version(void);
IH_API const char* ih_last_error(void);
IH_API const char* ih_family_grammar(void);
IH_API void ih_string_free(char* s);

/* families */
IH_API ih_status ih_family_parse(const char* spec, ih_family** out);
IH_API void ih_family_free(ih_family* f);
IH_API ih_status ih_family_describe(const ih_family* f, char** out);
IH_API uint64_t ih_family_value_count(const ih_family* f);
IH_API uint64_t ih_family_alphabet_size(const ih_family* f);
IH_API unsigned ih_family_word_bits(const ih_family* f);
/* decimal cardinality */
IH_API ih_status ih_family_cardinality(const ih_family* f, char** out);

/* instances: index into the enumeration order, or drawn from a seed */
IH_API ih_status ih_instance_at(const ih_family* f, uint64_t index, ih_instance** out);
IH_API ih_status ih_instance_sample(const ih_family* f, uint64_t seed, ih_instance** out);
IH_API void ih_instance_free(ih_instance* h);
IH_API ih_status ih_hash(const ih_instance* h, const uint32_t* chars, size_t len, uint64_t* out);
IH_API ih_status ih_hash_bytes(const ih_instance* h, const char* bytes, size_t len, uint64_t* out);
IH_API ih_status ih_compress(const ih_instance* h, uint64_t state, uint32_t c, size_t position, uint64_t* out);
IH_API ih_status ih_is_strongly_permuting(const ih_instance* h, int* out);

/* string sets */
IH_API ih_status ih_strings_for_family(const ih_family* f, unsigned min_len, unsigned max_len, ih_strings** out);
IH_API ih_status ih_strings_all(uint64_t sigma, unsigned min_len, unsigned max_len, ih_strings** out);
/* count strings laid end to end in chars, lengths[i] characters each */
IH_API ih_status ih_strings_explicit(uint64_t sigma, const uint32_t* chars, const size_t* lengths, size_t count,
                                     ih_strings** out);
IH_API size_t ih_strings_size(const ih_strings* s);
IH_API void ih_strings_free(ih_strings* s);

/* verification; budget 0 selects the default */
IH_API ih_status ih_verify_exact(const ih_family* f, const ih_strings* s, uint64_t budget, unsigned k_max,
                                 ih_format fmt, char** out);
IH_API ih_status ih_verify_monte_carlo(const ih_family* f, const ih_strings* s, uint64_t trials, uint64_t seed,
                                       unsigned k_max, ih_format fmt, char** out);
/* exact P(h(a) = h(b)) as num/den */
IH_API ih_status ih_collision_probability(const ih_family* f, const uint32_t* a, size_t alen, const uint32_t* b,
                                          size_t blen, uint64_t budget, uint64_t* num, uint64_t* den);
IH_API ih_status ih_unary_collision_probability(const ih_family* f, uint64_t r1, uint64_t r2, uint32_t c,
                                                uint64_t* num, uint64_t* den);

/* max collision probability per maximal length n = 1..n_max */
IH_API ih_status ih_collision_table(const ih_family* f, unsigned n_max, unsigned exact_max_n, uint64_t budget,
                                    ih_format fmt, char** out);
/* pair colliding under every instance, as JSON (null pair if none up to max_len) */
IH_API ih_status ih_certain_collision(const ih_family* f, unsigned max_len, uint64_t budget, char** out);

/* bounds; epsilon as "a/b" or a decimal, NULL for 1/2 */
IH_API ih_status ih_bounds_table(const unsigned* L, size_t count, const char* epsilon, ih_format fmt, char** out);
IH_API ih_status ih_min_family_size(uint64_t K, unsigned L, const char* epsilon, char** out);
IH_API ih_status ih_stinson_min_size(const char* num_strings, const char* num_values, int strong, char** out);
IH_API ih_status ih_epsilon_impossible_length(unsigned L, const char* epsilon, char** out);
IH_API ih_status ih_divisor_table(uint64_t n_max, ih_format fmt, char** out);
IH_API ih_status ih_ht_table(unsigned L, uint64_t max_len, ih_format fmt, char** out);

/* witnesses. kind: tau-pair (target "p=<prime>" or "L=<bits>[,poly=..]", n),
 * binomial-pair, unary-forced, perfect-unary, hT-family (n = L),
 * threewise-break, fourwise-break (target = family spec) */
IH_API ih_status ih_witness(const char* kind, const char* target, uint64_t n, ih_format fmt, char** out);

/* NULL families selects the default 32/64-bit set */
IH_API ih_status ih_bench(const char* const* families, size_t count, uint64_t compressions, ih_format fmt,
                          char** out);

#ifdef __cplusplus
}
#endif

#endif
