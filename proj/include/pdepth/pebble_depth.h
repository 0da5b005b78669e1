#ifndef PDEPTH_PEBBLE_DEPTH_H
#define PDEPTH_PEBBLE_DEPTH_H

/* C interface to the pdepth library. Strings returned through char** are
 * owned by the caller and released with pd_string_free. Bit strings are
 * ASCII '0'/'1'; whitespace in inputs is ignored. On failure a function
 * returns a nonzero pd_status and pd_last_error() describes it (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PD_API __declspec(dllexport)
#else
#define PD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pd_status {
  PD_OK = 0,
  PD_ERR_INVALID_ARGUMENT = 1,
  PD_ERR_PARSE = 2,
  PD_ERR_VALIDATION = 3,
  PD_ERR_DIVERGENT = 4,
  PD_ERR_STUCK = 5,
  PD_ERR_ILLEGAL_MOVE = 6,
  PD_ERR_BUDGET_EXCEEDED = 7,
  PD_ERR_LAMBDA_BUDGET_EXCEEDED = 8,
  PD_ERR_NO_PREIMAGE = 9,
  PD_ERR_AMBIGUOUS = 10,
  PD_ERR_MISMATCH = 11,
  PD_ERR_INTERNAL = 12
} pd_status;

typedef enum pd_machine_kind { PD_MACHINE_FST = 0, PD_MACHINE_PB = 1, PD_MACHINE_PDC = 2 } pd_machine_kind;

typedef struct pd_machine pd_machine;
typedef struct pd_source pd_source;

PD_API const char* pd_last_error(void);
PD_API const char* pd_status_name(pd_status status);
PD_API void pd_string_free(char* s);

/* machines */
PD_API pd_status pd_machine_parse(const char* text, pd_machine** out);
/* tpref, tpowprint, tprintreverse:K, cprime:M,K,V, identity, doubler, zerodoubler */
PD_API pd_status pd_machine_build(const char* name, pd_machine** out);
PD_API void pd_machine_free(pd_machine* machine);
PD_API pd_machine_kind pd_machine_get_kind(const pd_machine* machine);
PD_API size_t pd_machine_num_states(const pd_machine* machine);
PD_API pd_status pd_machine_to_text(const pd_machine* machine, char** text);
/* "len:hex" codeword and its length; FST and PB machines only */
PD_API pd_status pd_machine_encode(const pd_machine* machine, char** hex, size_t* sigma_size);
PD_API pd_status pd_machine_validate(const pd_machine* machine);

/* step_budget 0 means unlimited (divergence is still detected). */
PD_API pd_status pd_run(const pd_machine* machine, const char* input, uint64_t step_budget, char** output,
                        uint32_t* end_state);
/* PB runs chained left to right; FST stages are converted to PB. No stages
 * copies the input. */
PD_API pd_status pd_pipeline(const pd_machine* const* stages, size_t count, const char* input,
                             uint64_t step_budget, char** output);

/* FST or PDC. *lossless is 1 or 0; on 0 the counterexample pair is returned. */
PD_API pd_status pd_il_check(const pd_machine* machine, unsigned bound, int* lossless, char** cex_a,
                             char** cex_b);
PD_API pd_status pd_il_decode(const pd_machine* machine, const char* output, uint32_t end_state, unsigned bound,
                              char** input);

/* phrases as "pointer:bit" joined by ',' */
PD_API pd_status pd_lz78(const char* input, char** phrases, size_t* plain_len, size_t* gamma_len);
PD_API pd_status pd_lz78_decode(const char* phrases, char** output);

/* *finite is 0 when no machine of size <= k outputs x. */
PD_API pd_status pd_dk_fst(const char* x, unsigned k, int* finite, size_t* value, char** witness_input,
                           char** machine_text);
/* Same value from the slow brute force (k <= 20). */
PD_API pd_status pd_dk_fst_bruteforce(const char* x, unsigned k, int* finite, size_t* value);
/* Upper bound from the built-in pool (identity, T_pref). */
PD_API pd_status pd_dk_pb_upper(const char* x, unsigned cap, size_t* value, char** witness_input,
                                char** label);
/* One "len:hex" line per machine. */
PD_API pd_status pd_enumerate(pd_machine_kind kind, unsigned k, char** lines, size_t* count);

/* sources */
typedef struct pd_source_params {
  const char* kind; /* thm4 remark1 prefseq champernowne periodic zero one random */
  unsigned k;       /* 0 = default */
  unsigned v;       /* 0 = default */
  uint64_t seed;
  const char* pattern;
  const char* base;
  unsigned samples;
  int fixed_seed;
} pd_source_params;

PD_API void pd_source_params_init(pd_source_params* params);
PD_API pd_status pd_source_create(const pd_source_params* params, pd_source** out);
PD_API void pd_source_free(pd_source* source);
PD_API pd_status pd_source_prefix(const pd_source* source, size_t n, char** bits);
PD_API pd_status pd_source_meta(const pd_source* source, size_t n, char** csv);
PD_API pd_status pd_source_label(const pd_source* source, char** label);
/* exact |freq - 2^-b| maximum as num/den */
PD_API pd_status pd_source_deviation(const pd_source* source, size_t n, unsigned block, int64_t* num,
                                     int64_t* den);

/* witness for the first p bits; machine_name is accepted by pd_machine_build */
PD_API pd_status pd_witness(const pd_source* source, size_t p, char** input, char** expected, char** machine_name);
PD_API pd_status pd_witness_pref(const char* x, const char* z, char** input, char** expected);

typedef struct pd_profile_options {
  int dk_k; /* < 0 disables dk_fst */
  size_t dk_max_n;
  int cprime; /* 0 off, 1 use cprime_m/k/v, 2 use the source's own parameters */
  size_t cprime_m;
  unsigned cprime_k;
  unsigned cprime_v;
  unsigned normality_block; /* 0 disables */
  int verify_witness;
} pd_profile_options;

PD_API void pd_profile_options_init(pd_profile_options* options);
PD_API pd_status pd_profile(const pd_source* source, const size_t* n_list, size_t count,
                            const pd_profile_options* options, char** csv);

typedef struct pd_sgl_summary {
  double beta;
  double base_tail_gap;
  double image_tail_gap;
  size_t stall;
  size_t max_output;
  int retained;
} pd_sgl_summary;

PD_API pd_status pd_sgl(const pd_source* source, const pd_machine* fst, const size_t* n_list, size_t count,
                        const pd_profile_options* options, char** base_csv, char** image_csv,
                        pd_sgl_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
