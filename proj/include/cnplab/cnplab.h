#ifndef CNPLAB_H
#define CNPLAB_H

/*
 * C interface to the cnplab core.
 *
 * Complex arrays are interleaved doubles (re0, im0, re1, im1, ...); n x n
 * matrices are row-major, so they take 2 n^2 doubles. Every call returns a
 * status; on failure cnplab_last_error() describes it (per thread).
 * Strings handed out by the library are released with cnplab_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(CNPLAB_BUILDING)
#define CNPLAB_API __attribute__((visibility("default")))
#else
#define CNPLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cnplab_status {
  CNPLAB_OK = 0,
  CNPLAB_INVALID_ARGUMENT = 1,
  CNPLAB_NON_POSITIVE = 2,
  CNPLAB_ILL_CONDITIONED = 3,
  CNPLAB_ZERO_KERNEL_VALUE = 4,
  CNPLAB_IDENTITY_VIOLATED = 5,
  CNPLAB_GRID_TOO_COARSE = 6,
  CNPLAB_RANK_DEFICIENT = 7,
  CNPLAB_NOT_ACHIEVED = 8,
  CNPLAB_DEGREE_CAP = 9,
  CNPLAB_CONFIG = 10,
  CNPLAB_IO = 11,
  CNPLAB_INTERNAL = 100
} cnplab_status;

/* A kernel restricted to a finite point set, factored once. */
typedef struct cnplab_space cnplab_space;

CNPLAB_API const char* cnplab_version(void);
CNPLAB_API const char* cnplab_last_error(void);
CNPLAB_API const char* cnplab_status_name(cnplab_status status);
CNPLAB_API void cnplab_string_free(char* s);

/*
 * kernel: "szego", "drury_arveson", "bergman_probe" or "embedding".
 * points: n points of dimension dim, 2 * n * dim doubles.
 */
CNPLAB_API cnplab_status cnplab_space_create(const char* kernel, size_t dim, const double* points, size_t n,
                                             cnplab_space** out);
CNPLAB_API void cnplab_space_destroy(cnplab_space* space);
CNPLAB_API size_t cnplab_space_size(const cnplab_space* space);
CNPLAB_API double cnplab_space_cond(const cnplab_space* space);

/* Each writes an n x n complex matrix into out (2 n^2 doubles). */
CNPLAB_API cnplab_status cnplab_kernel_matrix(const cnplab_space* space, double* out);
CNPLAB_API cnplab_status cnplab_domT_kernel(const cnplab_space* space, const double* h, double* out);
/* gram_out may be NULL. */
CNPLAB_API cnplab_status cnplab_domTstar_kernel(const cnplab_space* space, const double* h, double* out,
                                                double* gram_out);
CNPLAB_API cnplab_status cnplab_graph_projection(const cnplab_space* space, const double* h, double* dom_t_out,
                                                 double* dom_tstar_out);
CNPLAB_API cnplab_status cnplab_adjoint_matrix(const cnplab_space* space, const double* h, double* out);

CNPLAB_API cnplab_status cnplab_multiplier_norm(const cnplab_space* space, const double* phi, double* out);
CNPLAB_API cnplab_status cnplab_pick_feasible(const cnplab_space* space, const double* targets, int* feasible,
                                              double* min_eigenvalue);
CNPLAB_API cnplab_status cnplab_corona_constant(const cnplab_space* space, const double* a, const double* b,
                                                double* out);
CNPLAB_API cnplab_status cnplab_hb_best_approx(const cnplab_space* space, const double* h, const double* f,
                                               const double* tstarf, double norm_sq, const size_t* subset,
                                               size_t subset_size, double* error_sq);

CNPLAB_API cnplab_status cnplab_cnp_certificate(const char* kernel, size_t dim, const double* points, size_t n,
                                                size_t base_index, int* accepted, double* min_eigenvalue);

/* Drury-Arveson norm of sum_k c_k z^alpha_k; alphas holds terms * dim entries. */
CNPLAB_API cnplab_status cnplab_da_norm_sq(size_t dim, const unsigned* alphas, const double* coeffs, size_t terms,
                                           double* out);

/* Newline separated experiment names. */
CNPLAB_API cnplab_status cnplab_list_experiments(char** out);

/*
 * Runs the experiment described by config_json and writes its report under
 * out_dir (NULL: $CNPLAB_OUT_DIR or ./cnplab-out). seed may be NULL. On
 * success *report_json holds the report and *passed is 1 iff every
 * assertion held; *report_dir (optional) receives the directory written.
 */
CNPLAB_API cnplab_status cnplab_run_config(const char* config_json, const char* out_dir, const uint64_t* seed,
                                           char** report_json, char** report_dir, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* CNPLAB_H */
