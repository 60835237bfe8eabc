#ifndef BETAGOF_H
#define BETAGOF_H

/* C interface to the beta goodness-of-fit library.  All entry points return
 * a bg_status; on failure bg_last_error() holds a thread-local message that
 * stays valid until the next failing call on the same thread.  Objects
 * returned through bg_*_create/run functions are owned by the caller and
 * released with the matching bg_*_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BG_API __declspec(dllexport)
#elif defined(__GNUC__)
#define BG_API __attribute__((visibility("default")))
#else
#define BG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bg_status {
  BG_OK = 0,
  BG_ERR_INVALID = 1,      /* bad argument or configuration */
  BG_ERR_DOMAIN = 2,       /* numeric argument outside its domain */
  BG_ERR_PARSE = 3,        /* spec string or config text did not parse */
  BG_ERR_NONINTERIOR = 4,  /* data contains exact 0/1 where forbidden */
  BG_ERR_DEGENERATE = 5,   /* degenerate sample or transform */
  BG_ERR_NOCONV = 6,       /* iteration failed to converge */
  BG_ERR_INTERNAL = 7
} bg_status;

BG_API const char* bg_version(void);
BG_API const char* bg_last_error(void);

/* ---- samples ---- */

typedef struct bg_sample bg_sample;

BG_API bg_status bg_sample_create(const double* values, size_t n,
                                  bg_sample** out);
/* name: "may2007" or "may2008" */
BG_API bg_status bg_sample_builtin(const char* name, bg_sample** out);
/* spec: alternative grammar, e.g. "B(2,2)", "LT(3,2)", "C(1)oGO(2,1)" */
BG_API bg_status bg_sample_simulate(const char* spec, size_t n, uint64_t seed,
                                    bg_sample** out);
BG_API size_t bg_sample_size(const bg_sample* s);
BG_API const double* bg_sample_values(const bg_sample* s);
BG_API void bg_sample_free(bg_sample* s);

/* ---- estimation ---- */

typedef struct bg_fit_params {
  double alpha;
  double beta;
  double residual;  /* score residual; 0 for the moment estimator */
  int iterations;
} bg_fit_params;

/* use_moments: 0 for maximum likelihood, nonzero for the moment estimator */
BG_API bg_status bg_fit(const bg_sample* s, int use_moments,
                        bg_fit_params* out);

/* ---- statistics ---- */

/* kind: "tn", "rf:A" (A > 0), "ks", "cm", "ad" */
BG_API bg_status bg_statistic(const bg_sample* s, const char* kind,
                              double alpha, double beta, double* out);
/* independent quadrature evaluation of the "tn" statistic */
BG_API bg_status bg_statistic_tn_quadrature(const bg_sample* s, double alpha,
                                            double beta, double* out);

/* ---- bootstrap tests ---- */

typedef struct bg_test_spec {
  int use_moments;     /* 0: MLE */
  int replications;    /* B */
  double level;        /* nominal size in (0,1) */
  uint64_t seed;
  int threads;         /* <= 0: hardware concurrency */
  int keep_bootstrap;  /* retain per-replicate statistic values */
} bg_test_spec;

typedef struct bg_test_outcome {
  char statistic[24];
  double statistic_value;
  double critical_value;
  double p_value;
  int reject;
  double fitted_alpha;
  double fitted_beta;
  int redraws;
} bg_test_outcome;

typedef struct bg_test_result bg_test_result;

/* Runs all `n_kinds` statistics on one shared set of bootstrap resamples. */
BG_API bg_status bg_run_battery(const bg_sample* s, const char* const* kinds,
                                size_t n_kinds, const bg_test_spec* spec,
                                bg_test_result** out);
BG_API size_t bg_test_result_count(const bg_test_result* r);
BG_API bg_status bg_test_result_outcome(const bg_test_result* r, size_t index,
                                        bg_test_outcome* out);
/* bootstrap values in replicate order; count 0 unless keep_bootstrap was set */
BG_API bg_status bg_test_result_bootstrap(const bg_test_result* r, size_t index,
                                          const double** values, size_t* count);
BG_API void bg_test_result_free(bg_test_result* r);

/* ---- limit machinery ---- */

BG_API bg_status bg_kernel(double alpha, double beta, double s, double t,
                           int order, double* out);
BG_API bg_status bg_kernel_centring(double alpha, double beta, double s,
                                    int order, double* out);

typedef struct bg_eigen_result bg_eigen_result;

BG_API bg_status bg_eigen(double alpha, double beta, int m, int order,
                          int threads, bg_eigen_result** out);
BG_API size_t bg_eigen_count(const bg_eigen_result* r);
BG_API const double* bg_eigen_values(const bg_eigen_result* r);
BG_API double bg_eigen_trace(const bg_eigen_result* r);
BG_API double bg_eigen_min_raw(const bg_eigen_result* r);
BG_API int bg_eigen_clipped(const bg_eigen_result* r);
BG_API void bg_eigen_free(bg_eigen_result* r);

BG_API bg_status bg_delta_discrepancy(const char* alt_spec, double alpha,
                                      double beta, double* out);
BG_API bg_status bg_pseudo_true(const char* alt_spec, double* alpha,
                                double* beta, double* residual);

/* ---- power study ---- */

/* config_json keys: alternatives (array of spec strings, required),
 * statistics (array, default the seven-test battery), n, mc_reps, B, level,
 * estimator ("mle"|"moments"), seed, threads. */
typedef struct bg_power_result bg_power_result;
typedef void (*bg_progress_fn)(int done, int total, void* user);

BG_API bg_status bg_power_run(const char* config_json, bg_progress_fn progress,
                              void* user, bg_power_result** out);
/* Resolved-plan echo for a config without running it (dry runs). */
BG_API bg_status bg_power_plan(const char* config_json, char** out_json);
BG_API const char* bg_power_csv(const bg_power_result* r);
BG_API const char* bg_power_json(const bg_power_result* r);
BG_API void bg_power_free(bg_power_result* r);
BG_API void bg_string_free(char* s);

/* ---- beta family helpers ---- */

BG_API bg_status bg_beta_cdf(double t, double alpha, double beta, double* out);
BG_API bg_status bg_beta_quantile(double q, double alpha, double beta,
                                  double* out);

#ifdef __cplusplus
}
#endif

#endif /* BETAGOF_H */
