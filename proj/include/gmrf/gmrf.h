/*
 * C interface to the gmrf library.
 *
 * All objects are opaque handles created by the library and released with the
 * matching *_free function (passing NULL is allowed). Every fallible call
 * returns a gmrf_status; on failure gmrf_last_error() holds a message for the
 * calling thread. Indices are 0-based.
 */
#ifndef GMRF_GMRF_H
#define GMRF_GMRF_H

#include <stddef.h>
#include <stdint.h>

#if defined(GMRF_BUILDING_LIBRARY)
#define GMRF_API __attribute__((visibility("default")))
#else
#define GMRF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gmrf_status {
  GMRF_OK = 0,
  GMRF_ERR_INVALID_ARGUMENT = 1,
  GMRF_ERR_INSUFFICIENT_SAMPLES = 2,
  GMRF_ERR_SINGULAR_BLOCK = 3,
  GMRF_ERR_NOT_POSITIVE_DEFINITE = 4,
  GMRF_ERR_NON_STATIONARY = 5,
  GMRF_ERR_DEGENERATE_CONDITIONAL = 6,
  GMRF_ERR_NUMERIC = 7,
  GMRF_ERR_IO = 8,
  GMRF_ERR_INTERNAL = 99
} gmrf_status;

typedef enum gmrf_target { GMRF_TARGET_DIAGONAL = 0, GMRF_TARGET_IDENTITY = 1 } gmrf_target;

typedef enum gmrf_stop_rule {
  GMRF_RULE_EXHAUSTIVE = 0,
  GMRF_RULE_FIRST_RISE = 1
} gmrf_stop_rule;

typedef enum gmrf_experiment {
  GMRF_EXPERIMENT_DIMENSION = 0,
  GMRF_EXPERIMENT_SAMPLESIZE = 1,
  GMRF_EXPERIMENT_ARORDER = 2
} gmrf_experiment;

typedef enum gmrf_estimator {
  GMRF_ESTIMATOR_GSPME = 0,
  GMRF_ESTIMATOR_LE = 1,
  GMRF_ESTIMATOR_SHRINKAGE = 2,
  GMRF_ESTIMATOR_SAMPLE = 3
} gmrf_estimator;

typedef enum gmrf_scale { GMRF_SCALE_DESK = 0, GMRF_SCALE_PAPER = 1 } gmrf_scale;

typedef struct gmrf_precision_options {
  int markov_order; /* default 1 */
  int shrinkage;    /* default 1 */
  int symmetrize;   /* default 1 */
} gmrf_precision_options;

typedef struct gmrf_matrix gmrf_matrix;
typedef struct gmrf_graph gmrf_graph;
typedef struct gmrf_precision gmrf_precision;
typedef struct gmrf_order_trace gmrf_order_trace;
typedef struct gmrf_benchmark gmrf_benchmark;

/* Errors ------------------------------------------------------------------ */

GMRF_API const char* gmrf_last_error(void);
GMRF_API const char* gmrf_status_string(gmrf_status status);
/* Column named by the last singular-block error on this thread, else -1. */
GMRF_API long long gmrf_last_error_column(void);

/* Dense matrices and datasets (rows = observations) ----------------------- */

GMRF_API gmrf_status gmrf_matrix_create(size_t rows, size_t cols, const double* row_major,
                                        gmrf_matrix** out);
GMRF_API void gmrf_matrix_free(gmrf_matrix* m);
GMRF_API size_t gmrf_matrix_rows(const gmrf_matrix* m);
GMRF_API size_t gmrf_matrix_cols(const gmrf_matrix* m);
/* Copies rows * cols values in row-major order; len must be at least that. */
GMRF_API gmrf_status gmrf_matrix_copy(const gmrf_matrix* m, double* row_major, size_t len);
GMRF_API gmrf_status gmrf_matrix_read_csv(const char* path, gmrf_matrix** out);
GMRF_API gmrf_status gmrf_matrix_write_csv(const gmrf_matrix* m, const char* path);

/* Graphs -------------------------------------------------------------------- */

GMRF_API gmrf_status gmrf_graph_band(size_t p, size_t bandwidth, gmrf_graph** out);
GMRF_API gmrf_status gmrf_graph_from_edges(size_t p, const size_t* rows, const size_t* cols,
                                           size_t count, gmrf_graph** out);
GMRF_API gmrf_status gmrf_graph_expand(const gmrf_graph* g, int markov_order, gmrf_graph** out);
GMRF_API void gmrf_graph_free(gmrf_graph* g);
GMRF_API size_t gmrf_graph_size(const gmrf_graph* g);
GMRF_API size_t gmrf_graph_edge_pairs(const gmrf_graph* g);
GMRF_API int gmrf_graph_contains(const gmrf_graph* g, size_t i, size_t j);
GMRF_API gmrf_status gmrf_graph_read(const char* path, gmrf_graph** out);
GMRF_API gmrf_status gmrf_graph_write(const gmrf_graph* g, const char* path);

/* Simulation ---------------------------------------------------------------- */

GMRF_API gmrf_status gmrf_simulate_ar(const double* coefficients, size_t order, double noise_sd,
                                      size_t n, size_t horizon, int stationary_init, uint64_t seed,
                                      gmrf_matrix** out);
GMRF_API gmrf_status gmrf_simulate_mixed_ar(const double* coefficients, size_t order, size_t n,
                                            size_t horizon, uint64_t seed, gmrf_matrix** out);

/* Shrinkage covariance ------------------------------------------------------ */

/* nu may be NULL; it is set to NaN for the diagonal target. */
GMRF_API gmrf_status gmrf_cov_shrink(const gmrf_matrix* data, gmrf_target target,
                                     gmrf_matrix** covariance, double* lambda, double* nu);

/* Sparse precision ---------------------------------------------------------- */

GMRF_API void gmrf_precision_options_default(gmrf_precision_options* opts);
GMRF_API gmrf_status gmrf_prec_sparse(const gmrf_matrix* data, const gmrf_graph* g,
                                      const gmrf_precision_options* opts, gmrf_precision** out);
GMRF_API void gmrf_precision_free(gmrf_precision* prec);
GMRF_API size_t gmrf_precision_size(const gmrf_precision* prec);
GMRF_API int gmrf_precision_is_symmetric(const gmrf_precision* prec);
/* 1 when the symmetrized estimate admits a Cholesky factorization. */
GMRF_API int gmrf_precision_is_spd(const gmrf_precision* prec);
GMRF_API size_t gmrf_precision_nonzeros(const gmrf_precision* prec);
GMRF_API double gmrf_precision_get(const gmrf_precision* prec, size_t i, size_t j);
GMRF_API gmrf_status gmrf_precision_read(const char* path, gmrf_precision** out);
GMRF_API gmrf_status gmrf_precision_write(const gmrf_precision* prec, const char* path);
GMRF_API gmrf_status gmrf_prec_nll(const gmrf_matrix* data, const gmrf_precision* prec, double* out);
GMRF_API gmrf_status gmrf_prec_aic(const gmrf_matrix* data, const gmrf_precision* prec, double* out);
GMRF_API gmrf_status gmrf_conditional_expectation(const gmrf_precision* prec, const double* xrow,
                                                  size_t len, size_t i, double* out);

/* Markov-order selection ---------------------------------------------------- */

GMRF_API gmrf_status gmrf_select_order(const gmrf_matrix* data, const gmrf_graph* g, int max_order,
                                       gmrf_stop_rule rule, gmrf_order_trace** out);
GMRF_API void gmrf_order_trace_free(gmrf_order_trace* t);
GMRF_API size_t gmrf_order_trace_size(const gmrf_order_trace* t);
GMRF_API int gmrf_order_trace_selected(const gmrf_order_trace* t);
GMRF_API gmrf_status gmrf_order_trace_entry(const gmrf_order_trace* t, size_t k, int* order,
                                            double* nll, double* aic, int* valid);

/* Benchmarks ---------------------------------------------------------------- */

/* threads = 0 uses every hardware thread. */
GMRF_API gmrf_status gmrf_benchmark_run(gmrf_experiment experiment, int reps, uint64_t seed,
                                        gmrf_scale scale, unsigned threads, gmrf_benchmark** out);
GMRF_API void gmrf_benchmark_free(gmrf_benchmark* b);
GMRF_API size_t gmrf_benchmark_size(const gmrf_benchmark* b);
GMRF_API gmrf_status gmrf_benchmark_record(const gmrf_benchmark* b, size_t k, gmrf_estimator* estimator,
                                           int* sweep_value, int* rep, double* frob_cov,
                                           double* frob_prec, int* failed);
GMRF_API gmrf_status gmrf_benchmark_write_csv(const gmrf_benchmark* b, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* GMRF_GMRF_H */
