/*
 * gasmatch C API.
 *
 * Gas-metered exact pattern matching over a 256-bit machine word. All objects
 * are opaque handles created and destroyed through this interface. Every
 * fallible call returns a gm_status; on failure, gm_last_error() returns a
 * message describing the most recent error on the calling thread.
 */
#ifndef GASMATCH_GASMATCH_H
#define GASMATCH_GASMATCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(GASMATCH_BUILDING_LIBRARY)
#define GM_API __attribute__((visibility("default")))
#else
#define GM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gm_status {
  GM_OK = 0,
  GM_ERR_INVALID_ARGUMENT = 1, /* bad argument, empty pattern, malformed config */
  GM_ERR_IO = 2,               /* file could not be read or written */
  GM_ERR_OUT_OF_GAS = 3,       /* search aborted at the gas limit */
  GM_ERR_DEGENERATE_FIT = 4,   /* regression has no spread in time */
  GM_ERR_INTERNAL = 5
} gm_status;

typedef enum gm_algorithm {
  GM_ALG_NAIVE = 0,
  GM_ALG_KMP = 1,
  GM_ALG_BMH = 2,
  GM_ALG_RK = 3,
  GM_ALG_SO = 4,
  GM_ALG_BNDM = 5,
  GM_ALG_STRINGUTILS = 6
} gm_algorithm;

#define GM_ALGORITHM_COUNT 7
#define GM_GAS_UNLIMITED UINT64_MAX

typedef struct gm_schedule gm_schedule;
typedef struct gm_outcome gm_outcome;
typedef struct gm_bench_config gm_bench_config;
typedef struct gm_bench_results gm_bench_results;

/* Thread-local message for the last failed call; never NULL. */
GM_API const char* gm_last_error(void);
GM_API const char* gm_status_string(gm_status status);

/* Algorithms. Names are the lower-case identifiers: naive, kmp, bmh, rk, so,
 * bndm, stringutils. */
GM_API const char* gm_algorithm_name(gm_algorithm algorithm);
GM_API const char* gm_algorithm_display_name(gm_algorithm algorithm);
GM_API gm_status gm_algorithm_from_name(const char* name, gm_algorithm* out);

/* Gas schedule. Keys: word_load, byte_read, arith, mul_div, shift,
 * table_read, table_write, branch_overhead, keccak_base, keccak_per_word,
 * calldata_per_byte. */
GM_API gm_status gm_schedule_create(gm_schedule** out);
/* Defaults overridden by the `key = integer` lines of the file. */
GM_API gm_status gm_schedule_load_file(const char* path, gm_schedule** out);
GM_API gm_status gm_schedule_set(gm_schedule* schedule, const char* key, uint64_t cost);
GM_API gm_status gm_schedule_get(const gm_schedule* schedule, const char* key, uint64_t* out);
GM_API void gm_schedule_destroy(gm_schedule* schedule);
GM_API uint64_t gm_keccak_cost(const gm_schedule* schedule, size_t length);
GM_API uint64_t gm_calldata_cost(const gm_schedule* schedule, size_t text_len,
                                 size_t pattern_len);

/* Search. `schedule` may be NULL for the defaults. On GM_ERR_OUT_OF_GAS the
 * outcome is still produced (no positions, gas consumed up to the abort). */
GM_API gm_status gm_search(gm_algorithm algorithm, const uint8_t* text, size_t text_len,
                           const uint8_t* pattern, size_t pattern_len,
                           const gm_schedule* schedule, uint64_t gas_limit, gm_outcome** out);
GM_API size_t gm_outcome_count(const gm_outcome* outcome);
GM_API const uint64_t* gm_outcome_positions(const gm_outcome* outcome);
GM_API uint64_t gm_outcome_gas_used(const gm_outcome* outcome);
GM_API uint64_t gm_outcome_comparisons(const gm_outcome* outcome);
GM_API uint64_t gm_outcome_window_alignments(const gm_outcome* outcome);
GM_API uint64_t gm_outcome_state_updates(const gm_outcome* outcome);
GM_API uint64_t gm_outcome_candidates(const gm_outcome* outcome);
GM_API double gm_outcome_wall_time(const gm_outcome* outcome);
GM_API int gm_outcome_out_of_gas(const gm_outcome* outcome);
GM_API void gm_outcome_destroy(gm_outcome* outcome);

/* Corpora. kind: dna, proteins, english, sources. The returned buffer is
 * released with gm_buffer_free. */
GM_API gm_status gm_corpus_generate(const char* kind, size_t n, uint64_t seed, uint8_t** data,
                                    size_t* len);
GM_API gm_status gm_corpus_load_file(const char* path, size_t n, uint8_t** data, size_t* len);
/* Reads the whole file. */
GM_API gm_status gm_read_file(const char* path, uint8_t** data, size_t* len);
/* Writes through a temporary file and rename. */
GM_API gm_status gm_write_file(const char* path, const uint8_t* data, size_t len);
GM_API void gm_buffer_free(void* buffer);

/* Benchmarks. Config keys: algorithms, corpora, n, m, patterns, seed,
 * gas_price_gwei, usd_per_eth, gas_limit, threads, and every schedule key. */
GM_API gm_status gm_bench_config_create(gm_bench_config** out);
GM_API gm_status gm_bench_config_load_file(const char* path, gm_bench_config** out);
GM_API gm_status gm_bench_config_set(gm_bench_config* config, const char* key,
                                     const char* value);
GM_API void gm_bench_config_destroy(gm_bench_config* config);

GM_API gm_status gm_bench_run(const gm_bench_config* config, gm_bench_results** out);
GM_API gm_status gm_bench_results_load_csv(const char* path, gm_bench_results** out);
GM_API size_t gm_bench_results_count(const gm_bench_results* results);
/* 1 if any cell hit the gas limit. */
GM_API int gm_bench_results_out_of_gas(const gm_bench_results* results);

typedef struct gm_record {
  const char* corpus; /* valid while the results handle lives */
  gm_algorithm algorithm;
  uint64_t n;
  uint64_t m;
  uint64_t median_gas;
  double median_time_s;
  double fee_usd;
  double gas_per_char;
  int out_of_gas;
} gm_record;

GM_API gm_status gm_bench_results_get(const gm_bench_results* results, size_t index,
                                      gm_record* out);
GM_API gm_status gm_bench_results_write_csv(const gm_bench_results* results, const char* path);
GM_API gm_status gm_bench_results_write_tables(const gm_bench_results* results, const char* dir,
                                               double gas_price_gwei, double usd_per_eth);
GM_API void gm_bench_results_destroy(gm_bench_results* results);

/* Reports. Strings are released with gm_buffer_free. */
typedef enum gm_report_kind {
  GM_REPORT_FEES = 0,         /* gas and fee at the largest n and m */
  GM_REPORT_GAS_PER_CHAR = 1, /* gas per character at m = 16 */
  GM_REPORT_TIME = 2,         /* median time across m */
  GM_REPORT_GAS = 3,          /* median gas across m */
  GM_REPORT_FIT = 4           /* gas-vs-time regression */
} gm_report_kind;

GM_API gm_status gm_report_render(const gm_bench_results* results, gm_report_kind kind,
                                  double gas_price_gwei, double usd_per_eth, char** text);

GM_API double gm_fee_usd(double gas, double gas_price_gwei, double usd_per_eth);

typedef struct gm_fit {
  double slope;     /* gas per second */
  double intercept; /* gas */
  double usd_per_second;
  size_t points;
} gm_fit;

GM_API gm_status gm_fit_gas_time(const gm_bench_results* results, double gas_price_gwei,
                                 double usd_per_eth, gm_fit* out);

#ifdef __cplusplus
}
#endif

#endif /* GASMATCH_GASMATCH_H */
