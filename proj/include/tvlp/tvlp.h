/* C interface to the TV-L^p denoising library.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_destroy function. Every fallible call returns a tvlp_status;
 * on failure tvlp_last_error() describes the problem (per thread, valid
 * until the next failing call on that thread). Output handles are written
 * only on success.
 */
#ifndef TVLP_TVLP_H
#define TVLP_TVLP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TVLP_API __declspec(dllexport)
#else
#define TVLP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tvlp_status {
  TVLP_OK = 0,
  TVLP_ERR_INVALID_ARGUMENT = 1,
  TVLP_ERR_NON_FINITE = 2,
  TVLP_ERR_IO = 3,
  TVLP_ERR_PARSE = 4,
  TVLP_ERR_INTERNAL = 5
} tvlp_status;

TVLP_API const char* tvlp_last_error(void);
TVLP_API const char* tvlp_status_name(tvlp_status status);
TVLP_API const char* tvlp_version(void);

/* Strings returned by the library (JSON dumps) are freed with this. */
TVLP_API void tvlp_string_free(char* s);

/* ---- images ---------------------------------------------------------- */

/* rows x cols samples, row-major. cols == 1 is a 1D signal. */
typedef struct tvlp_image tvlp_image;

/* values may be NULL for a zero image; otherwise rows * cols finite values. */
TVLP_API tvlp_status tvlp_image_create(size_t rows, size_t cols, double spacing, const double* values,
                                       tvlp_image** out);
TVLP_API void tvlp_image_destroy(tvlp_image* image);
TVLP_API size_t tvlp_image_rows(const tvlp_image* image);
TVLP_API size_t tvlp_image_cols(const tvlp_image* image);
TVLP_API double tvlp_image_spacing(const tvlp_image* image);
/* Borrowed pointer to rows * cols values, valid while the image lives. */
TVLP_API const double* tvlp_image_data(const tvlp_image* image);

/* ---- solver parameters and reports ------------------------------------ */

typedef enum tvlp_mode { TVLP_MODE_ONE_HOM = 0, TVLP_MODE_P_HOM = 1 } tvlp_mode;
typedef enum tvlp_norm { TVLP_NORM_AUTO = 0, TVLP_NORM_QUADRATURE = 1, TVLP_NORM_DISCRETE = 2 } tvlp_norm;
typedef enum tvlp_w_update { TVLP_W_FIXED_POINT = 0, TVLP_W_EXACT = 1 } tvlp_w_update;

typedef struct tvlp_params {
  double alpha;
  double beta;
  double p;
  double lambda; /* <= 0 selects the heuristic */
  tvlp_mode mode;
  double tol;
  int max_outer;
  int inner_fp_iters;
  tvlp_norm norm;
  tvlp_w_update w_update;
} tvlp_params;

TVLP_API void tvlp_params_default(tvlp_params* params);

typedef struct tvlp_report tvlp_report;

TVLP_API void tvlp_report_destroy(tvlp_report* report);
TVLP_API int tvlp_report_iterations(const tvlp_report* report);
/* 1 if the relative residual reached tol, 0 if max_outer was hit. */
TVLP_API int tvlp_report_converged(const tvlp_report* report);
TVLP_API double tvlp_report_wall_time(const tvlp_report* report);
TVLP_API double tvlp_report_lambda(const tvlp_report* report);
TVLP_API double tvlp_report_residual(const tvlp_report* report, int iteration);
TVLP_API double tvlp_report_objective(const tvlp_report* report, int iteration);
/* JSON object with the full trace; free with tvlp_string_free. */
TVLP_API char* tvlp_report_to_json(const tvlp_report* report);

/* ---- denoising ---------------------------------------------------------- */

/* w1, w2 (the two components of w) and report may be NULL. */
TVLP_API tvlp_status tvlp_denoise(const tvlp_image* f, const tvlp_params* params, tvlp_image** u, tvlp_image** w1,
                                  tvlp_image** w2, tvlp_report** report);
/* ROF: w pinned to zero. Only lambda, tol and max_outer are read from controls (NULL for defaults). */
TVLP_API tvlp_status tvlp_denoise_rof(const tvlp_image* f, double alpha, const tvlp_params* controls, tvlp_image** u,
                                      tvlp_report** report);

/* min over w of alpha ||grad u - w||_1 + beta ||w||_p (or the p-homogeneous form). */
TVLP_API tvlp_status tvlp_tvlp_value(const tvlp_image* u, const tvlp_params* params, double* value);
TVLP_API tvlp_status tvlp_huber_tv_value(const tvlp_image* u, double alpha, double beta, int quadrature,
                                         double* value);

typedef struct tvlp_bregman_result tvlp_bregman_result;

/* reference may be NULL; peak is the PSNR peak and SSIM dynamic range. */
TVLP_API tvlp_status tvlp_bregman(const tvlp_image* f, const tvlp_params* params, int outer_k,
                                  const tvlp_image* reference, double peak, tvlp_bregman_result** out);
TVLP_API void tvlp_bregman_destroy(tvlp_bregman_result* result);
TVLP_API int tvlp_bregman_count(const tvlp_bregman_result* result);
/* Borrowed; valid while the result lives. */
TVLP_API const tvlp_image* tvlp_bregman_iterate(const tvlp_bregman_result* result, int k);
/* NaN when no reference was given (or, for SSIM, the image is too small). */
TVLP_API double tvlp_bregman_psnr(const tvlp_bregman_result* result, int k);
TVLP_API double tvlp_bregman_ssim(const tvlp_bregman_result* result, int k);
/* Index of the best iterate by SSIM (PSNR if SSIM is unavailable); -1 without reference. */
TVLP_API int tvlp_bregman_best(const tvlp_bregman_result* result);
TVLP_API char* tvlp_bregman_to_json(const tvlp_bregman_result* result);

/* ---- decomposition ------------------------------------------------------ */

/* f ~ u + v, mean(v) = 0. report may be NULL. */
TVLP_API tvlp_status tvlp_decompose(const tvlp_image* f, const tvlp_params* params, tvlp_image** u, tvlp_image** v,
                                    tvlp_report** report);
/* mu and mu_residual (length n_restarts - 1) may be NULL. */
TVLP_API tvlp_status tvlp_decompose_uniqueness(const tvlp_image* f, const tvlp_params* params, int n_restarts,
                                               double* max_sum_deviation, double* mu, double* mu_residual);

/* ---- closed-form step solutions ----------------------------------------- */

typedef enum tvlp_step_model { TVLP_STEP_ONE_HOM = 0, TVLP_STEP_TWO_HOM = 1 } tvlp_step_model;

typedef enum tvlp_regime {
  TVLP_REGIME_PIECEWISE_CONSTANT_ROF = 0,
  TVLP_REGIME_CONSTANT_MEAN = 1,
  TVLP_REGIME_CONTINUOUS_EXPONENTIAL = 2,
  TVLP_REGIME_DISCONTINUOUS_EXPONENTIAL = 3
} tvlp_regime;

TVLP_API const char* tvlp_regime_name(tvlp_regime regime);

/* f = 0 on (-L, 0], h on (0, L). */
typedef struct tvlp_step_problem {
  double h;
  double L;
  double alpha;
  double beta;
  double p;
  tvlp_step_model model;
} tvlp_step_problem;

typedef struct tvlp_step_solution tvlp_step_solution;

TVLP_API tvlp_status tvlp_step_classify(const tvlp_step_problem* problem, tvlp_regime* regime);
TVLP_API tvlp_status tvlp_step_exact(const tvlp_step_problem* problem, tvlp_step_solution** out);
TVLP_API void tvlp_step_destroy(tvlp_step_solution* solution);
TVLP_API tvlp_regime tvlp_step_regime(const tvlp_step_solution* solution);
TVLP_API double tvlp_step_k(const tvlp_step_solution* solution);
TVLP_API double tvlp_step_c1(const tvlp_step_solution* solution);
TVLP_API double tvlp_step_c2(const tvlp_step_solution* solution);
TVLP_API double tvlp_step_beta_2hom(const tvlp_step_solution* solution);
/* Any output pointer may be NULL. */
TVLP_API void tvlp_step_eval(const tvlp_step_solution* solution, double x, double* u, double* w, double* phi);

TVLP_API tvlp_status tvlp_step_w_norm_2hom(const tvlp_step_problem* problem, double* norm);
TVLP_API tvlp_status tvlp_beta_map(double beta_phom, double w_norm, double p, double* beta_1hom);
TVLP_API tvlp_status tvlp_beta_map_inverse_step(double h, double L, double alpha, double beta_1hom,
                                                double* beta_2hom);
TVLP_API tvlp_status tvlp_taylor_beta_boundary(double alpha, double h, double L, double* beta);
TVLP_API tvlp_status tvlp_rof_region(double alpha, double beta, double p, double omega_measure, int* holds);
TVLP_API tvlp_status tvlp_mean_region(const double* f, size_t n, double spacing, double alpha, double beta, double q,
                                      int* holds);

typedef struct tvlp_certificate {
  double boundary_residual;
  double dual_bound_excess;
  double support_residual;
  double w_residual;
  int w_is_zero;
} tvlp_certificate;

/* eps_support <= 0 selects the default max(1e-6 max |grad u - w|, 1e-3 max |grad f|). */
TVLP_API tvlp_status tvlp_verify_optimality_1d(const double* u, const double* w, const double* f, size_t n,
                                               double spacing, const tvlp_params* params, double eps_support,
                                               tvlp_certificate* out);

/* ---- metrics ------------------------------------------------------------ */

/* +infinity for identical images. */
TVLP_API tvlp_status tvlp_psnr(const tvlp_image* u, const tvlp_image* reference, double peak, double* value);
TVLP_API tvlp_status tvlp_ssim(const tvlp_image* u, const tvlp_image* reference, double dynamic_range,
                               double* value);

/* ---- phantoms and noise ------------------------------------------------- */

typedef enum tvlp_phantom_kind {
  TVLP_PHANTOM_STEP_1D = 0,
  TVLP_PHANTOM_AFFINE_STEP_1D = 1,
  TVLP_PHANTOM_PIECEWISE_MIX_1D = 2,
  TVLP_PHANTOM_RAMP_SQUARE_2D = 3,
  TVLP_PHANTOM_RADIAL_SPIKE_2D = 4
} tvlp_phantom_kind;

typedef struct tvlp_phantom_spec {
  tvlp_phantom_kind kind;
  double h;
  double L;
  size_t n;
  double ramp_slope;
  size_t size;
  size_t cols; /* 0: square */
  double lo;
  double hi;
} tvlp_phantom_spec;

TVLP_API void tvlp_phantom_spec_default(tvlp_phantom_kind kind, tvlp_phantom_spec* spec);
TVLP_API tvlp_status tvlp_phantom_kind_from_name(const char* name, tvlp_phantom_kind* kind);
TVLP_API const char* tvlp_phantom_kind_name(tvlp_phantom_kind kind);
TVLP_API tvlp_status tvlp_phantom_generate(const tvlp_phantom_spec* spec, tvlp_image** out);
TVLP_API tvlp_status tvlp_add_noise(const tvlp_image* u, double variance, uint64_t seed, tvlp_image** out);

/* ---- files -------------------------------------------------------------- */

TVLP_API tvlp_status tvlp_read_pgm(const char* path, double lo, double hi, tvlp_image** out);
TVLP_API tvlp_status tvlp_write_pgm(const tvlp_image* image, const char* path, double lo, double hi, int binary);

typedef struct tvlp_table tvlp_table;

TVLP_API tvlp_status tvlp_read_csv(const char* path, tvlp_table** out);
TVLP_API void tvlp_table_destroy(tvlp_table* table);
TVLP_API size_t tvlp_table_columns(const tvlp_table* table);
TVLP_API size_t tvlp_table_rows(const tvlp_table* table);
TVLP_API const char* tvlp_table_name(const tvlp_table* table, size_t column);
/* Borrowed; NULL if the column does not exist. */
TVLP_API const double* tvlp_table_column(const tvlp_table* table, const char* name);
TVLP_API tvlp_status tvlp_write_csv(const char* path, const char* const* names, const double* const* columns,
                                    size_t n_columns, size_t n_rows);

#ifdef __cplusplus
}
#endif

#endif
