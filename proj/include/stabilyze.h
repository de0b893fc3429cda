/* stabilyze C API: numerical stability certification of abstract
 * thermoelastic Timoshenko and wave-heat models by exact modal reduction.
 *
 * Every object is an opaque handle created by a stz_*_create function and
 * released by the matching stz_*_free.  Calls report stz_status; on failure
 * stz_last_error() returns a thread-local message describing the cause.
 */

#ifndef STABILYZE_H
#define STABILYZE_H

#include <stddef.h>

#if defined(_WIN32)
#define STZ_API __declspec(dllexport)
#else
#define STZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stz_status {
  STZ_OK = 0,
  STZ_E_INVALID = 1,  /* bad argument or constraint violation */
  STZ_E_CONFIG = 2,   /* malformed configuration */
  STZ_E_NUMERIC = 3,  /* numerical failure (non-convergence, singular system) */
  STZ_E_IO = 4
} stz_status;

typedef enum stz_classification {
  STZ_EXPONENTIAL = 0,
  STZ_SEMIUNIFORM = 1,
  STZ_STABLE_ONLY = 2,
  STZ_NOT_SEMIUNIFORM = 3,
  STZ_INDETERMINATE = 4
} stz_classification;

typedef struct stz_params stz_params;
typedef struct stz_spectrum stz_spectrum;
typedef struct stz_block stz_block;
typedef struct stz_report stz_report;

STZ_API const char* stz_version(void);
STZ_API const char* stz_status_str(stz_status status);
STZ_API const char* stz_last_error(void);

/* ---- system parameters ------------------------------------------------ */

STZ_API stz_status stz_params_create(double rho1, double rho2, double rho3, double a, double b,
                                     double c, double delta, double gamma, stz_params** out);
/* chi-targeted construction: b = rho2 (a/rho1 - chi); requires chi < a/rho1 */
STZ_API stz_status stz_params_create_chi(double rho1, double rho2, double rho3, double a,
                                         double chi, double c, double delta, double gamma,
                                         stz_params** out);
STZ_API void stz_params_free(stz_params* params);
STZ_API double stz_params_chi(const stz_params* params);
STZ_API double stz_params_gamma(const stz_params* params);

/* ---- spectrum models --------------------------------------------------- */

STZ_API stz_status stz_spectrum_explicit(const double* values, size_t count, stz_spectrum** out);
STZ_API stz_status stz_spectrum_dirichlet(double ell, int n_max, stz_spectrum** out);
STZ_API stz_status stz_spectrum_geometric(double alpha0, double ratio, int count, stz_spectrum** out);
STZ_API stz_status stz_spectrum_loggrid(double alpha_min, double alpha_max, int count,
                                        stz_spectrum** out);
STZ_API void stz_spectrum_free(stz_spectrum* spectrum);
STZ_API size_t stz_spectrum_size(const stz_spectrum* spectrum);
STZ_API stz_status stz_spectrum_values(const stz_spectrum* spectrum, double* buffer, size_t capacity);

/* ---- modal blocks ------------------------------------------------------ */

STZ_API stz_status stz_block_timoshenko(const stz_params* params, double alpha, stz_block** out);
STZ_API stz_status stz_block_waveheat(double gamma, double alpha, stz_block** out);
STZ_API void stz_block_free(stz_block* block);
STZ_API int stz_block_dim(const stz_block* block);
/* which: 'L' physical generator, 'M' energy-coordinate generator, 'T'
 * energy transform; buffer receives dim*dim entries row-major */
STZ_API stz_status stz_block_matrix(const stz_block* block, char which, double* buffer,
                                    size_t capacity);
STZ_API stz_status stz_block_eigenvalues(const stz_block* block, double* real_parts,
                                         double* imag_parts, size_t capacity);
STZ_API stz_status stz_block_spectral_abscissa(const stz_block* block, double* out);

/* Closed-form solve of L_alpha z = f for the 5-dim Timoshenko block. */
STZ_API stz_status stz_explicit_inverse_apply(const stz_params* params, double alpha,
                                              const double f[5], double z[5]);

/* ---- classification ---------------------------------------------------- */

typedef struct stz_classify_options {
  double margin_threshold;    /* default 1e-6 */
  double abscissa_threshold;  /* default 1e-8 */
  double decay_threshold;     /* default 0.1 */
  double trend_threshold;     /* default -0.2 */
  int lambda_count;           /* default 2000 */
  double lambda_min;          /* default 1e-2 */
  double decay_alpha_cap;     /* default 1e4 */
  double decay_t_min;         /* default 1e-2 */
  double decay_t_max;         /* default 1e5 */
  int decay_t_count;          /* default 15 */
  int workers;                /* default 1 */
} stz_classify_options;

STZ_API void stz_classify_options_init(stz_classify_options* options);

/* model: 0 = timoshenko (params required), 1 = waveheat (params carries
 * gamma; remaining coefficients are ignored) */
STZ_API stz_status stz_classify(int model, const stz_params* params, const stz_spectrum* spectrum,
                                const stz_classify_options* options, stz_report** out);
STZ_API void stz_report_free(stz_report* report);
STZ_API stz_classification stz_report_classification(const stz_report* report);
STZ_API stz_classification stz_report_prediction(const stz_report* report);
STZ_API const char* stz_report_classification_str(const stz_report* report);
STZ_API int stz_report_agree(const stz_report* report);
STZ_API double stz_report_sup_abscissa(const stz_report* report);
STZ_API double stz_report_pruss_margin(const stz_report* report);
STZ_API double stz_report_margin_trend(const stz_report* report);
/* return 0 and leave *out untouched when the quantity is not reported */
STZ_API int stz_report_inverse_growth_exponent(const stz_report* report, double* out);
STZ_API int stz_report_witness_exponent(const stz_report* report, double* out);

/* ---- batch driver ------------------------------------------------------ */

/* Runs one CLI subcommand (classify|sweep|witness|simulate|decay|
 * resolvent-scan) against a config file.  out_dir may be NULL to keep the
 * config's choice; workers <= 0 keeps the config's worker count.  The
 * process-style exit code lands in *exit_code: 0 all rows computed, 1
 * config error, 2 unrecoverable numerical failure. */
STZ_API stz_status stz_run_command(const char* command, const char* config_path,
                                   const char* out_dir, int workers, int resume, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* STABILYZE_H */
