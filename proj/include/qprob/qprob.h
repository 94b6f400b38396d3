/* C interface to the qprob shared library.
 *
 * Every entry point returns a qp_status; out-parameters are written only on
 * QP_OK. A human-readable description of the most recent failure in the
 * calling thread is available from qp_last_error(). Objects returned through
 * qp_*_create are owned by the caller and released with the matching
 * qp_*_destroy; strings and buffers with qp_string_free / qp_buffer_free.
 * All destroy/free functions accept NULL.
 */
#ifndef QPROB_H
#define QPROB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qp_domain qp_domain;
typedef struct qp_field qp_field;
typedef struct qp_measure qp_measure;

typedef enum qp_status {
  QP_OK = 0,
  QP_ERROR_ARGUMENT = 1,     /* bad handle, value, or input format */
  QP_ERROR_PARSE = 2,        /* expression text did not parse */
  QP_ERROR_PRECONDITION = 3, /* library precondition or runtime check failed */
  QP_ERROR_INTERNAL = 4      /* unexpected failure */
} qp_status;

const char* qp_status_name(qp_status status);
const char* qp_version(void);

/* Message describing the most recent failure in this thread; never NULL. */
const char* qp_last_error(void);

void qp_string_free(char* text);
void qp_buffer_free(void* buffer);

/* ---- domain: the n x n discretized square, n odd in [3, 8192] ---- */

qp_status qp_domain_create(int32_t resolution, qp_domain** out);
void qp_domain_destroy(qp_domain* domain);
int32_t qp_domain_resolution(const qp_domain* domain);

/* ---- fields: expressions sampled at cell centers ---- */

/* Grammar: +, -, *, ^ (positive integer powers), unary minus, x, y,
 * numbers, min(...), max(...), abs(e), clamp(e, lo, hi),
 * pwl(e; t0,v0; t1,v1; ...). */
qp_status qp_field_from_expression(const qp_domain* domain, const char* expr,
                                   qp_field** out);
void qp_field_destroy(qp_field* field);
int64_t qp_field_cell_count(const qp_field* field);
qp_status qp_field_range(const qp_field* field, double* out_min,
                         double* out_max);
/* Row-major copy; buffer_len must be at least the cell count. */
qp_status qp_field_copy_values(const qp_field* field, double* buffer,
                               int64_t buffer_len);
/* CSV dump, one line per grid row. */
qp_status qp_field_to_csv(const qp_field* field, char** out_text);
/* Mask {field > threshold} as run-length text (count:bit pairs per row). */
qp_status qp_field_superlevel_rle(const qp_field* field, double threshold,
                                  char** out_text);
/* Same mask as a binary PGM image. */
qp_status qp_field_superlevel_pgm(const qp_field* field, double threshold,
                                  uint8_t** out_bytes, int64_t* out_len);

/* ---- measures: "aarnes" (two-valued) or "uniform" (averaging) ---- */

qp_status qp_measure_create(const char* name, const qp_domain* domain,
                            qp_measure** out);
void qp_measure_destroy(qp_measure* measure);
qp_status qp_measure_of_superlevel(const qp_measure* measure,
                                   const qp_field* field, double threshold,
                                   double* out_value);

/* ---- integration ---- */

typedef enum qp_method {
  QP_METHOD_BISECTION = 0, /* exact path for two-valued measures */
  QP_METHOD_RIEMANN = 1    /* adaptive bracketing for the rest */
} qp_method;

typedef struct qp_integral_result {
  double value;
  qp_method method;
  int64_t evaluations;        /* measure lookups performed */
  double tolerance_achieved;  /* final bracket half-width; 0 if exact */
} qp_integral_result;

qp_status qp_integrate(const qp_measure* measure, const qp_field* field,
                       double tol, qp_integral_result* out);

/* Sampled distribution function t -> 1 - P{field > t}. Writes a malloc'd
 * array of 2 * (*out_len) doubles laid out as t0,F0,t1,F1,... */
qp_status qp_cdf(const qp_measure* measure, const qp_field* field,
                 double** out_pairs, int64_t* out_len);

/* ---- command backends: JSON/CSV payloads as printed by the CLI ----
 *
 * Check-style backends also report the aggregate verdict through out_pass
 * (1 pass / 0 fail) so callers can set exit codes without JSON parsing. */

qp_status qp_run_integrate(const char* measure, const char* expr, int32_t grid,
                           double tol, char** out_json);
qp_status qp_run_cdf_csv(const char* measure, const char* expr, int32_t grid,
                         char** out_csv);
qp_status qp_run_demo_nonlinearity(const char* measure, int32_t grid,
                                   double tol, char** out_json,
                                   int32_t* out_pass);
qp_status qp_run_recover(const char* measure, const char* expr,
                         double threshold, int32_t grid, int64_t steps,
                         double tol, char** out_json, int32_t* out_pass);
qp_status qp_run_check_axioms(const char* measure, int32_t grid, uint64_t seed,
                              char** out_json, int32_t* out_pass);
qp_status qp_run_check_staircase(int32_t grid, uint64_t seed, char** out_json,
                                 int32_t* out_pass);
qp_status qp_run_check_urysohn(int32_t grid, uint64_t seed, char** out_json,
                               int32_t* out_pass);
qp_status qp_run_check_qspace(const char* space_json, char** out_json,
                              int32_t* out_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QPROB_H */
