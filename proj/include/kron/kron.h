#ifndef KRON_KRON_H
#define KRON_KRON_H

/* C interface to the kron library.
 *
 * Objects are opaque handles. Functions that create a handle return a status
 * and write the handle through an out pointer; the caller frees it with the
 * matching kron_*_free. Accessors that return `const` handles lend an object
 * owned by its parent, valid until the parent is freed. Strings returned as
 * `char*` are owned by the caller and released with kron_string_free.
 * On failure kron_last_error() describes the problem (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KRON_API __declspec(dllexport)
#else
#define KRON_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kron_status {
  KRON_OK = 0,
  KRON_E_INVALID_ARGUMENT = 1,
  KRON_E_PARSE = 2,
  KRON_E_DIVISION_BY_ZERO = 3,
  KRON_E_INCOMPATIBLE_FIELD = 4,
  KRON_E_RATIONAL_INPUT = 5,
  KRON_E_OUT_OF_RANGE = 6,
  KRON_E_NOT_COVERED = 7,
  KRON_E_CONSISTENCY = 8,
  KRON_E_INTERNAL = 9
} kron_status;

KRON_API const char* kron_status_name(kron_status s);
KRON_API const char* kron_last_error(void);
KRON_API void kron_string_free(char* s);
KRON_API const char* kron_version(void);

/* ---- exact numbers (p + q sqrt d) / r ---- */
typedef struct kron_quad kron_quad;

KRON_API kron_status kron_quad_parse(const char* text, kron_quad** out);
KRON_API kron_status kron_quad_sub(const kron_quad* a, const kron_quad* b,
                                   kron_quad** out);
KRON_API kron_status kron_quad_mul(const kron_quad* a, const kron_quad* b,
                                   kron_quad** out);
KRON_API void kron_quad_free(kron_quad* x);
KRON_API char* kron_quad_to_string(const kron_quad* x);
KRON_API char* kron_quad_to_decimal(const kron_quad* x, int digits);
KRON_API double kron_quad_to_double(const kron_quad* x);
KRON_API int kron_quad_sign(const kron_quad* x);
/* -1, 0, 1 in *out; fails across different fields */
KRON_API kron_status kron_quad_compare(const kron_quad* a, const kron_quad* b,
                                       int* out);

/* ---- rotation angles ---- */
typedef struct kron_alpha kron_alpha;

/* CF literal "[a0; a1, (b1, b2)]" or a surd literal */
KRON_API kron_status kron_alpha_parse(const char* text, kron_alpha** out);
KRON_API void kron_alpha_free(kron_alpha* a);
KRON_API char* kron_alpha_cf_string(const kron_alpha* a);
KRON_API const kron_quad* kron_alpha_value(const kron_alpha* a);
KRON_API int kron_alpha_tail_assumed(const kron_alpha* a);
KRON_API size_t kron_alpha_exact_prefix(const kron_alpha* a);
KRON_API size_t kron_alpha_preperiod_length(const kron_alpha* a);
KRON_API size_t kron_alpha_period_length(const kron_alpha* a);
/* partial quotient a_i */
KRON_API int64_t kron_alpha_quotient(const kron_alpha* a, size_t i);

/* convergent n >= -2 of the fractional part: p_n, q_n as decimal strings,
 * theta_n = |q_n alpha - p_n| (n >= -1) as a new number */
KRON_API kron_status kron_convergent(const kron_alpha* a, long n, char** p,
                                     char** q, kron_quad** theta);

/* greedy Ostrowski digits b_0, b_1, ... of N (decimal string) */
KRON_API kron_status kron_ostrowski(const kron_alpha* a, const char* N,
                                    int64_t** digits, size_t* count);
KRON_API void kron_int_array_free(int64_t* p);

/* ---- gap spectra ---- */
typedef struct kron_gaps kron_gaps;

KRON_API kron_status kron_gaps_direct(const kron_alpha* a, int64_t N,
                                      kron_gaps** out);
KRON_API kron_status kron_gaps_formula(const kron_alpha* a, int64_t N,
                                       kron_gaps** out);
KRON_API void kron_gaps_free(kron_gaps* g);
KRON_API int64_t kron_gaps_N(const kron_gaps* g);
KRON_API size_t kron_gaps_count(const kron_gaps* g);
KRON_API const kron_quad* kron_gaps_length(const kron_gaps* g, size_t i);
KRON_API int64_t kron_gaps_multiplicity(const kron_gaps* g, size_t i);
KRON_API int kron_gaps_law_holds(const kron_gaps* g);
KRON_API int kron_gaps_equal(const kron_gaps* x, const kron_gaps* y);

/* refinement of the spectrum over q_i <= N <= q_{i+1} */
typedef struct kron_trace kron_trace;

KRON_API kron_status kron_gaps_trace(const kron_alpha* a, long i,
                                     kron_trace** out);
KRON_API void kron_trace_free(kron_trace* t);
KRON_API size_t kron_trace_step_count(const kron_trace* t);
KRON_API const kron_gaps* kron_trace_step(const kron_trace* t, size_t s);
/* parent gap and its two pieces; 0 for the first step */
KRON_API int kron_trace_step_split(const kron_trace* t, size_t s,
                                   const kron_quad** parent,
                                   const kron_quad** left,
                                   const kron_quad** right);
KRON_API size_t kron_trace_class_count(const kron_trace* t);
KRON_API const kron_quad* kron_trace_class_length(const kron_trace* t,
                                                  size_t c);
KRON_API int64_t kron_trace_class_size(const kron_trace* t, size_t c);
/* descendants of class c at N = q_{i+1}, as a spectrum */
KRON_API const kron_gaps* kron_trace_class_descendants(const kron_trace* t,
                                                       size_t c);

/* ---- tower bases and verification ---- */
typedef struct kron_base kron_base;
typedef struct kron_report kron_report;

/* "c1:l1,c2:l2,..." */
KRON_API kron_status kron_base_parse(const char* text, kron_base** out);
KRON_API kron_status kron_base_canonical_f1(const kron_alpha* a, long n,
                                            kron_base** out);
KRON_API kron_status kron_base_two_interval(const kron_alpha* a, long n,
                                            int64_t N, kron_base** out);
KRON_API void kron_base_free(kron_base* b);
KRON_API size_t kron_base_size(const kron_base* b);
KRON_API const kron_quad* kron_base_left(const kron_base* b, size_t i);
KRON_API const kron_quad* kron_base_length(const kron_base* b, size_t i);
KRON_API const kron_quad* kron_base_total_length(const kron_base* b);
KRON_API char* kron_base_to_string(const kron_base* b);

KRON_API kron_status kron_tower_verify(const kron_base* b, const kron_alpha* a,
                                       int64_t h, kron_report** out);
KRON_API void kron_report_free(kron_report* r);
KRON_API int64_t kron_report_height(const kron_report* r);
KRON_API int kron_report_disjoint(const kron_report* r);
KRON_API const kron_quad* kron_report_covered(const kron_report* r);
KRON_API size_t kron_report_interval_count(const kron_report* r);
/* first overlapping pair of arcs B_a + level_a alpha, B_b + level_b alpha;
 * returns 0 when the tower is disjoint */
KRON_API int kron_report_collision(const kron_report* r, size_t* interval_a,
                                   int64_t* level_a, size_t* interval_b,
                                   int64_t* level_b, const kron_quad** point);

/* two-arc bound for q_n < N <= q_{n+1} with a searched witness */
typedef struct kron_lemma kron_lemma;

KRON_API kron_status kron_lemma22(const kron_alpha* a, long n, int64_t N,
                                  kron_lemma** out);
KRON_API void kron_lemma_free(kron_lemma* l);
KRON_API const kron_quad* kron_lemma_bound(const kron_lemma* l);
KRON_API const char* kron_lemma_regime(const kron_lemma* l);
KRON_API const kron_quad* kron_lemma_best_found(const kron_lemma* l);
KRON_API int64_t kron_lemma_searched_up_to(const kron_lemma* l);
/* NULL when no witness attains the bound */
KRON_API const kron_base* kron_lemma_witness(const kron_lemma* l);
KRON_API const kron_report* kron_lemma_certificate(const kron_lemma* l);

/* ---- covering numbers ---- */
typedef struct kron_cover kron_cover;

KRON_API kron_status kron_cover_f1_approx(const kron_alpha* a, long n,
                                          kron_cover** out);
KRON_API kron_status kron_cover_f1_exact(const kron_alpha* a, kron_cover** out);
KRON_API kron_status kron_cover_f2_exact(const kron_alpha* a, kron_cover** out);
KRON_API kron_status kron_cover_fk_eval(const kron_alpha* a, long k_star,
                                        long n, kron_cover** out);
KRON_API kron_status kron_cover_f1_constant(long s, kron_cover** out);
/* bracket, threshold and alpha_s are filled when non-NULL (new numbers) */
KRON_API kron_status kron_cover_eq2(long s, long j, kron_cover** out,
                                    kron_quad** bracket, kron_quad** threshold,
                                    kron_quad** alpha_s);
KRON_API kron_status kron_eq2_bracket_limit(long s, kron_quad** out);
KRON_API void kron_cover_free(kron_cover* c);
KRON_API const kron_quad* kron_cover_exact(const kron_cover* c);
KRON_API const kron_quad* kron_cover_raw(const kron_cover* c);
KRON_API const char* kron_cover_kind(const kron_cover* c);
KRON_API int kron_cover_clamped(const kron_cover* c);

/* ---- Rokhlin construction ---- */
typedef struct kron_levels kron_levels;
typedef struct kron_rokhlin kron_rokhlin;

KRON_API kron_status kron_locate_eps(const kron_alpha* a, long k,
                                     const kron_quad* eps, long* j);
KRON_API kron_status kron_rokhlin_levels(const kron_alpha* a,
                                         const kron_quad* eps,
                                         kron_levels** out);
KRON_API void kron_levels_free(kron_levels* l);
KRON_API long kron_levels_k(const kron_levels* l);
KRON_API long kron_levels_j(const kron_levels* l);
KRON_API int kron_levels_mirrored(const kron_levels* l);
/* three levels l0, l1, l2 */
KRON_API size_t kron_levels_count(const kron_levels* l);
KRON_API int64_t kron_levels_index(const kron_levels* l, size_t i);
/* returns 0 for an empty level */
KRON_API int kron_levels_interval(const kron_levels* l, size_t i,
                                  const kron_quad** left,
                                  const kron_quad** length);

KRON_API kron_status kron_rokhlin_assemble(const kron_alpha* a,
                                           const kron_quad* eps,
                                           int64_t height, kron_rokhlin** out);
KRON_API void kron_rokhlin_free(kron_rokhlin* r);
KRON_API const kron_base* kron_rokhlin_base(const kron_rokhlin* r);
KRON_API int64_t kron_rokhlin_height(const kron_rokhlin* r);
KRON_API const kron_quad* kron_rokhlin_covered(const kron_rokhlin* r);
KRON_API const kron_levels* kron_rokhlin_levels_of(const kron_rokhlin* r);
KRON_API const kron_report* kron_rokhlin_certificate(const kron_rokhlin* r);

KRON_API kron_status kron_rokhlin_area(const kron_alpha* a, long k, long j,
                                       kron_quad** out);
KRON_API kron_status kron_rokhlin_assembled_area(const kron_alpha* a, long k,
                                                 long j, kron_quad** out);
KRON_API kron_status kron_rokhlin_interval_count(const kron_alpha* a, long k,
                                                 long j, int64_t n,
                                                 int64_t* predicted,
                                                 int64_t* actual);

/* ---- search ---- */
typedef struct kron_search kron_search;
typedef void (*kron_progress_fn)(uint64_t done, uint64_t total, void* user);

typedef struct kron_search_options {
  uint64_t budget;   /* 0: default */
  unsigned threads;  /* 0: hardware concurrency */
  size_t top;        /* 0: 10 */
  kron_progress_fn progress;
  void* user;
} kron_search_options;

KRON_API const char* kron_search_caveat(void);
/* options may be NULL */
KRON_API kron_status kron_search_run(const kron_alpha* a, int n_b, int64_t h,
                                     int64_t M,
                                     const kron_search_options* options,
                                     kron_search** out);
KRON_API void kron_search_free(kron_search* s);
KRON_API const kron_quad* kron_search_value(const kron_search* s);
KRON_API const kron_base* kron_search_best(const kron_search* s);
KRON_API uint64_t kron_search_evaluated(const kron_search* s);
KRON_API uint64_t kron_search_total(const kron_search* s);
KRON_API int kron_search_partial(const kron_search* s);
KRON_API const kron_report* kron_search_certificate(const kron_search* s);
KRON_API size_t kron_search_top_count(const kron_search* s);
KRON_API const kron_quad* kron_search_top_value(const kron_search* s,
                                                size_t i);
KRON_API const kron_base* kron_search_top_base(const kron_search* s, size_t i);
/* orbit indices m_1 = 0, ..., m_{n_B} of candidate i; returns the count */
KRON_API size_t kron_search_top_starts(const kron_search* s, size_t i,
                                       const int64_t** starts);

typedef struct kron_scan kron_scan;

/* heights may be NULL (default schedule up to max_height); tolerance may be
 * NULL (1/1000) */
KRON_API kron_status kron_scan_run(const kron_alpha* a, int k,
                                   const int64_t* heights, size_t height_count,
                                   int64_t max_height,
                                   const kron_quad* tolerance,
                                   const kron_search_options* options,
                                   kron_scan** out);
KRON_API void kron_scan_free(kron_scan* s);
KRON_API const char* kron_scan_verdict(const kron_scan* s);
KRON_API const kron_quad* kron_scan_tolerance(const kron_scan* s);
KRON_API size_t kron_scan_row_count(const kron_scan* s);
KRON_API long kron_scan_row_n(const kron_scan* s, size_t i);
KRON_API const char* kron_scan_row_qn(const kron_scan* s, size_t i);
KRON_API const char* kron_scan_row_qn1(const kron_scan* s, size_t i);
KRON_API int64_t kron_scan_row_height(const kron_scan* s, size_t i);
KRON_API const kron_quad* kron_scan_row_best_k(const kron_scan* s, size_t i);
KRON_API long kron_scan_row_ref_index(const kron_scan* s, size_t i);
KRON_API const kron_quad* kron_scan_row_best_1(const kron_scan* s, size_t i);
KRON_API const kron_quad* kron_scan_row_margin(const kron_scan* s, size_t i);
KRON_API int kron_scan_row_partial(const kron_scan* s, size_t i);
KRON_API size_t kron_scan_row_starts(const kron_scan* s, size_t i,
                                     const int64_t** starts);

/* ---- places where the implementation departs from the printed formulas ---- */
KRON_API size_t kron_deviation_count(void);
KRON_API const char* kron_deviation_id(size_t i);
KRON_API const char* kron_deviation_text(size_t i);

#ifdef __cplusplus
}
#endif

#endif
