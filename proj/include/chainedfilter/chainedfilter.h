/* Copyright 2026 The ChainedFilter Authors. Licensed under the Apache License,
 * Version 2.0. See the LICENSE file at the root of this distribution or at
 * http://www.apache.org/licenses/LICENSE-2.0
 */

/* C interface to the chainedfilter library. Every function that can fail
 * returns a cf_status; on failure cf_last_error() describes the problem for
 * the calling thread. Handles are opaque and owned by the caller, who
 * releases them with the matching *_free function. */

#ifndef CHAINEDFILTER_CHAINEDFILTER_H_
#define CHAINEDFILTER_CHAINEDFILTER_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CF_BUILDING_LIBRARY)
#define CF_API __declspec(dllexport)
#else
#define CF_API __declspec(dllimport)
#endif
#else
#define CF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_ERR_INVALID_ARGUMENT = 1,
  CF_ERR_DOMAIN = 2,
  CF_ERR_DEGENERATE_LAMBDA = 3,
  CF_ERR_PEELING_FAILED = 4,
  CF_ERR_DUPLICATE_KEY = 5,
  CF_ERR_TABLE_FULL = 6,
  CF_ERR_NOT_FOUND = 7,
  CF_ERR_CONFLICTING_LABEL = 8,
  CF_ERR_INSUFFICIENT_SURVIVORS = 9,
  CF_ERR_NON_CONVERGENCE = 10,
  CF_ERR_CAPACITY_EXCEEDED = 11,
  CF_ERR_CODE_TOO_DEEP = 12,
  CF_ERR_EMPTY_ALPHABET = 13,
  CF_ERR_REBUILD_LOOP = 14,
  CF_ERR_FORMAT = 15,
  CF_ERR_IO = 16,
  CF_ERR_VERIFICATION_FAILED = 17,
  CF_ERR_NO_MEMORY = 100,
  CF_ERR_INTERNAL = 101
} cf_status;

#define CF_DEFAULT_SEED UINT64_C(0xC0FFEE)

CF_API const char* cf_version(void);
CF_API const char* cf_status_name(cf_status status);
/* Message of the last failure on this thread; empty after success. */
CF_API const char* cf_last_error(void);

/* Releases buffers returned by *_serialize. */
CF_API void cf_buffer_free(uint8_t* buffer);

/* ------------------------------------------------------------------------ */
/* Space bounds, in bits per positive item (units of C for the chain). */

typedef struct cf_bounds_report {
  double lower_bound;     /* f(epsilon, lambda) */
  int degenerate;         /* lambda <= 1/ln 2: no two-stage split helps */
  double exact_chain;     /* floor(log l) + 1 + l / 2^floor(log l); 0 if degenerate */
  double ratio;           /* exact_chain / lower_bound; 0 if undefined */
  int strategy;           /* 0 A, 1 B, 2 degenerate approx, 3 degenerate exact */
  double alpha;           /* optimal stage-1 fingerprint bits */
  double beta;            /* optimal stage-2 extra capacity */
  double two_stage_space; /* optimal two-stage space, units of C */
  double andnot_half;     /* "&~" space at delta = 1/2, units of C' */
  double andnot_limit;    /* log2(4 e lambda) */
} cf_bounds_report;

CF_API cf_status cf_bounds(double epsilon, double lambda, cf_bounds_report* out);

/* ------------------------------------------------------------------------ */
/* Filters. */

typedef struct cf_filter cf_filter;

typedef enum cf_combinator { CF_AND = 0, CF_ANDNOT = 1 } cf_combinator;

typedef struct cf_build_options {
  cf_combinator combinator;
  double epsilon; /* 0 builds an exact filter; "&" only */
  double delta;   /* "&~" layer ratio */
  uint64_t seed;
} cf_build_options;

CF_API void cf_build_options_init(cf_build_options* options);

/* Builds over positives and negatives (disjoint, duplicate-free). */
CF_API cf_status cf_filter_build(const uint64_t* positives, size_t positive_count,
                                 const uint64_t* negatives, size_t negative_count,
                                 const cf_build_options* options, cf_filter** out);
/* Same, with negatives = universe minus positives. Positives must all occur
 * in the universe. */
CF_API cf_status cf_filter_build_universe(const uint64_t* universe, size_t universe_count,
                                          const uint64_t* positives, size_t positive_count,
                                          const cf_build_options* options, cf_filter** out);
CF_API void cf_filter_free(cf_filter* filter);

CF_API int cf_filter_query(const cf_filter* filter, uint64_t key);
/* results[i] = 1 when keys[i] passes, else 0. */
CF_API cf_status cf_filter_query_batch(const cf_filter* filter, const uint64_t* keys, size_t count,
                                       uint8_t* results);

typedef struct cf_filter_info {
  cf_combinator combinator;
  uint64_t positives;
  double lambda;
  double epsilon;
  uint64_t size_bits; /* payload bits, headers excluded */
  double bits_per_positive;
  uint32_t alpha;     /* "&" stage-1 bits */
  int strategy;       /* "&" strategy, as in cf_bounds_report */
  uint32_t layers;    /* "&~" layers, terminal included; 2 for "&" */
} cf_filter_info;

CF_API cf_status cf_filter_info_get(const cf_filter* filter, cf_filter_info* out);

CF_API cf_status cf_filter_serialize(const cf_filter* filter, uint8_t** data, size_t* size);
CF_API cf_status cf_filter_deserialize(const uint8_t* data, size_t size, cf_filter** out);

/* ------------------------------------------------------------------------ */
/* Random-access Huffman text. Symbols are arbitrary 32-bit values. */

typedef struct cf_text cf_text;

typedef struct cf_huffman_stats {
  uint64_t length;
  uint32_t alphabet;
  uint32_t max_code_length;
  double entropy;        /* bits per symbol */
  double average_length; /* Huffman bits per symbol */
} cf_huffman_stats;

CF_API cf_status cf_huffman_stats_get(const uint32_t* symbols, size_t count, cf_huffman_stats* out);

CF_API cf_status cf_text_encode(const uint32_t* symbols, size_t count, uint64_t seed, cf_text** out);
CF_API void cf_text_free(cf_text* text);
/* position is 1-based. */
CF_API cf_status cf_text_decode_at(const cf_text* text, uint64_t position, uint32_t* symbol);
/* Writes length symbols to out, which must hold capacity >= length. */
CF_API cf_status cf_text_decode_all(const cf_text* text, uint32_t* out, size_t capacity);

typedef struct cf_text_info {
  uint64_t length;
  uint32_t alphabet;
  uint64_t code_bits;   /* total Huffman code length */
  uint64_t filter_bits; /* payload bits */
  double bits_per_symbol;
  int flipped;          /* filter positives are the 0 code bits */
} cf_text_info;

CF_API cf_status cf_text_info_get(const cf_text* text, cf_text_info* out);
/* Code of the index-th codebook entry as '0'/'1' characters, NUL
 * terminated; code must hold 256 bytes. */
CF_API cf_status cf_text_codebook_entry(const cf_text* text, uint32_t index, uint32_t* symbol,
                                        char* code);

CF_API cf_status cf_text_serialize(const cf_text* text, uint8_t** data, size_t* size);
CF_API cf_status cf_text_deserialize(const uint8_t* data, size_t size, cf_text** out);

/* ------------------------------------------------------------------------ */
/* Application simulations. */

#define CF_MAX_TRAIN_ROUNDS 64

typedef struct cf_cuckoo_report {
  uint64_t stored;
  uint64_t in_t1;
  uint64_t in_t2;
  uint32_t rebuilds;
  double lambda_measured;
  double lambda_theory;
  uint64_t predictor_bits;
  uint32_t rounds;      /* rounds run; zero error reached iff converged */
  int converged;
  double error_rate[CF_MAX_TRAIN_ROUNDS];
  double mean_probes;   /* predicted lookups over stored keys after training */
  double baseline_probes;
} cf_cuckoo_report;

/* Fills two tables of m slots to load r with distinct keys and trains the
 * predictor for at most max_rounds (<= CF_MAX_TRAIN_ROUNDS) rounds. */
CF_API cf_status cf_cuckoo_sim(uint64_t m, double r, int terminal_othello, uint32_t max_rounds,
                               uint64_t seed, cf_cuckoo_report* out);

typedef struct cf_lsm_report {
  uint32_t runs;
  uint64_t keys;
  uint64_t filter_bits;
  uint64_t queries;
  uint32_t max_extra_reads;
  double mean_extra_reads;
  uint64_t oracle_mismatches;
  uint64_t false_negatives;
} cf_lsm_report;

/* Runs of keys_per_run keys drawn from a shared pool (so runs overlap),
 * then queries split between stored and random keys, checked against a
 * full scan. */
CF_API cf_status cf_lsm_sim(uint32_t runs, uint64_t keys_per_run, uint64_t queries, uint64_t seed,
                            cf_lsm_report* out);

/* Runs a bench suite ("dict", "huffman", "cuckoo", "lsm") and writes CSV to
 * path, or stdout for "-". An existing non-empty file gets rows appended
 * without a new header. */
CF_API cf_status cf_bench_run(const char* suite, double scale, const uint64_t* seeds,
                              size_t seed_count, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* CHAINEDFILTER_CHAINEDFILTER_H_ */
