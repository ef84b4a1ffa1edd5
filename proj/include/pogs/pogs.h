/*
 * pogs: periodicity-induced overlapping group shrinkage.
 *
 * C interface to the denoising library. Objects are opaque handles created
 * by pogs_*_create/pogs_* constructors and released with the matching
 * pogs_*_free. Every fallible call returns a pogs_status; on failure the
 * thread-local pogs_last_error() holds a readable message and output
 * arguments are left untouched.
 *
 * Handles are immutable after construction and may be shared between
 * threads. Distinct calls may run concurrently.
 */
#ifndef POGS_POGS_H
#define POGS_POGS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POGS_BUILDING_LIBRARY)
#    define POGS_API __declspec(dllexport)
#  else
#    define POGS_API __declspec(dllimport)
#  endif
#else
#  define POGS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pogs_status {
  POGS_OK = 0,
  POGS_ERR_DOMAIN = 1,
  POGS_ERR_INVALID_PATTERN = 2,
  POGS_ERR_OUT_OF_TABLE = 3,
  POGS_ERR_PARSE = 4,
  POGS_ERR_MISSING_METADATA = 5,
  POGS_ERR_IO = 6,
  POGS_ERR_NON_FINITE = 7,
  POGS_ERR_NULL_ARGUMENT = 8,
  POGS_ERR_BUFFER_TOO_SMALL = 9,
  POGS_ERR_INTERNAL = 10
} pogs_status;

POGS_API const char* pogs_version(void);
POGS_API const char* pogs_status_name(pogs_status status);
/* Message for the most recent failure on the calling thread ("" if none). */
POGS_API const char* pogs_last_error(void);

/* ---- penalty ---------------------------------------------------------- */

typedef enum pogs_penalty_family {
  POGS_PENALTY_ABS = 0,
  POGS_PENALTY_LOG = 1,
  POGS_PENALTY_RAT = 2,
  POGS_PENALTY_ATAN = 3
} pogs_penalty_family;

typedef struct pogs_penalty {
  pogs_penalty_family family;
  double a;
} pogs_penalty;

POGS_API pogs_status pogs_penalty_family_parse(const char* name, pogs_penalty_family* out);
POGS_API const char* pogs_penalty_family_name(pogs_penalty_family family);
POGS_API pogs_status pogs_penalty_phi(pogs_penalty penalty, double x, double* out);
POGS_API pogs_status pogs_penalty_psi(pogs_penalty penalty, double x, double* out);
POGS_API pogs_status pogs_max_noncvx_a(int64_t k1, double lambda, double safety, double* out);

/* ---- group pattern ---------------------------------------------------- */

typedef struct pogs_pattern pogs_pattern;

typedef struct pogs_pattern_info {
  size_t length; /* stored length, trailing zeros trimmed */
  int32_t k;     /* nominal group length K */
  int32_t k1;    /* number of ones */
  int32_t periodic;
  int32_t n0;    /* -1 when not defined (explicit patterns) */
  int32_t n1;
  int32_t m;
} pogs_pattern_info;

POGS_API pogs_status pogs_pattern_periodic(double fs, double fault_freq, int32_t n1, int32_t m,
                                           pogs_pattern** out);
POGS_API pogs_status pogs_pattern_contiguous(int32_t k, pogs_pattern** out);
POGS_API pogs_status pogs_pattern_explicit(const uint8_t* bits, size_t count, pogs_pattern** out);
POGS_API void pogs_pattern_free(pogs_pattern* pattern);
POGS_API pogs_status pogs_pattern_get_info(const pogs_pattern* pattern, pogs_pattern_info* out);
/* Copies the stored bits; *count receives the stored length even when the
 * buffer is too small. */
POGS_API pogs_status pogs_pattern_get_bits(const pogs_pattern* pattern, uint8_t* buffer,
                                           size_t capacity, size_t* count);

/* ---- solver ------------------------------------------------------------ */

typedef enum pogs_convexity {
  POGS_CONVEXITY_STRICT = 0,
  POGS_CONVEXITY_BOUNDARY = 1,
  POGS_CONVEXITY_VIOLATED = 2
} pogs_convexity;

typedef struct pogs_solver_params {
  double lambda;
  pogs_penalty penalty;
  int32_t max_iters;
  double tol;
  double support_eps;
} pogs_solver_params;

/* lambda = 1, atan with a = 0, max_iters = 200, tol = 1e-6, eps = 1e-10. */
POGS_API pogs_solver_params pogs_solver_params_default(void);
POGS_API pogs_status pogs_convexity_check(const pogs_solver_params* params,
                                          const pogs_pattern* pattern, pogs_convexity* out);
POGS_API const char* pogs_convexity_name(pogs_convexity status);

POGS_API pogs_status pogs_bnorm(const double* x, size_t n, const pogs_pattern* pattern,
                                int64_t start, double* out);
POGS_API pogs_status pogs_objective(const double* y, const double* x, size_t n,
                                    const pogs_pattern* pattern, const pogs_solver_params* params,
                                    double* out);

typedef struct pogs_result pogs_result;

POGS_API pogs_status pogs_denoise(const double* y, size_t n, const pogs_pattern* pattern,
                                  const pogs_solver_params* params, pogs_result** out);
/* Starts the iteration from x0 instead of y. */
POGS_API pogs_status pogs_denoise_from(const double* y, const double* x0, size_t n,
                                       const pogs_pattern* pattern,
                                       const pogs_solver_params* params, pogs_result** out);
POGS_API void pogs_result_free(pogs_result* result);
POGS_API size_t pogs_result_size(const pogs_result* result);
/* Pointers stay valid until the result is freed. */
POGS_API const double* pogs_result_estimate(const pogs_result* result);
POGS_API int32_t pogs_result_iterations(const pogs_result* result);
POGS_API int32_t pogs_result_converged(const pogs_result* result);
POGS_API size_t pogs_result_history_size(const pogs_result* result);
POGS_API const double* pogs_result_history(const pogs_result* result);
POGS_API pogs_convexity pogs_result_convexity(const pogs_result* result);
POGS_API size_t pogs_result_warning_count(const pogs_result* result);
POGS_API const char* pogs_result_warning(const pogs_result* result, size_t index);

/* ---- simulation --------------------------------------------------------- */

typedef struct pogs_sim_config {
  double fs;
  double duration;
  double fault_freq;
  double first_fault_time;
  int32_t n_faults;
  int32_t transient_len;
  int32_t max_components;
  double noise_sigma;
  uint64_t seed;
} pogs_sim_config;

typedef struct pogs_interval {
  int64_t start;
  int64_t end; /* exclusive */
} pogs_interval;

/* 6400 Hz, 1 s, 80 Hz faults, 50 faults from 0.36 s, 10-sample transients,
 * up to 10 components, sigma 2.5, seed 0. */
POGS_API pogs_sim_config pogs_sim_config_default(void);
POGS_API const char* pogs_sim_rng_name(void);

typedef struct pogs_simulation pogs_simulation;

POGS_API pogs_status pogs_simulate(const pogs_sim_config* config, pogs_simulation** out);
POGS_API void pogs_simulation_free(pogs_simulation* sim);
POGS_API size_t pogs_simulation_size(const pogs_simulation* sim);
POGS_API const double* pogs_simulation_clean(const pogs_simulation* sim);
POGS_API const double* pogs_simulation_noisy(const pogs_simulation* sim);
POGS_API size_t pogs_simulation_interval_count(const pogs_simulation* sim);
POGS_API const pogs_interval* pogs_simulation_intervals(const pogs_simulation* sim);

/* ---- noise level and lambda ------------------------------------------ */

POGS_API pogs_status pogs_estimate_sigma(const double* y, size_t n, double* out);
POGS_API pogs_status pogs_lambda_multiplier(int32_t m, int32_t n1, double* out);
POGS_API pogs_status pogs_lambda_from_table(double sigma, int32_t m, int32_t n1, double* out);

/* ---- metrics ------------------------------------------------------------ */

typedef struct pogs_labels pogs_labels;

POGS_API pogs_status pogs_labels_create(const pogs_interval* intervals, size_t count,
                                        int64_t n_samples, pogs_labels** out);
POGS_API void pogs_labels_free(pogs_labels* labels);
POGS_API int64_t pogs_labels_n_samples(const pogs_labels* labels);
POGS_API size_t pogs_labels_interval_count(const pogs_labels* labels);
POGS_API const pogs_interval* pogs_labels_intervals(const pogs_labels* labels);

POGS_API pogs_status pogs_rmse(const double* x, const double* ref, size_t n, double* out);
/* out must hold pogs_labels_n_samples() entries; it may alias detected. */
POGS_API pogs_status pogs_relabel(const uint8_t* detected, size_t n, const pogs_labels* labels,
                                  uint8_t* out);

typedef struct pogs_roc pogs_roc;

POGS_API pogs_status pogs_roc_compute(const double* x, size_t n, const pogs_labels* labels,
                                      int32_t n_thresholds, pogs_roc** out);
POGS_API void pogs_roc_free(pogs_roc* roc);
POGS_API size_t pogs_roc_size(const pogs_roc* roc);
POGS_API const double* pogs_roc_thresholds(const pogs_roc* roc);
POGS_API const double* pogs_roc_false_alarm(const pogs_roc* roc);
POGS_API const double* pogs_roc_detection(const pogs_roc* roc);
POGS_API double pogs_roc_auc(const pogs_roc* roc);

/* ---- spectra ------------------------------------------------------------- */

typedef struct pogs_spectrum pogs_spectrum;

POGS_API pogs_status pogs_magnitude_spectrum(const double* y, size_t n, double fs,
                                             pogs_spectrum** out);
POGS_API pogs_status pogs_envelope_spectrum(const double* y, size_t n, double fs,
                                            pogs_spectrum** out);
POGS_API void pogs_spectrum_free(pogs_spectrum* spectrum);
POGS_API size_t pogs_spectrum_size(const pogs_spectrum* spectrum);
POGS_API const double* pogs_spectrum_freqs(const pogs_spectrum* spectrum);
POGS_API const double* pogs_spectrum_mags(const pogs_spectrum* spectrum);
/* Centred moving average of the magnitudes; out holds pogs_spectrum_size(). */
POGS_API pogs_status pogs_spectrum_smoothed(const pogs_spectrum* spectrum, int32_t width,
                                            double* out);

typedef struct pogs_bearing_orders {
  double ftf;
  double bpfo;
  double bpfi;
  double bsf;
} pogs_bearing_orders;

POGS_API pogs_status pogs_fault_frequencies(double shaft_freq, const pogs_bearing_orders* orders,
                                            pogs_bearing_orders* out_hz);

/* ---- files --------------------------------------------------------------- */

typedef struct pogs_signal pogs_signal;

/* fs_override <= 0 or NaN means "use the file header". */
POGS_API pogs_status pogs_signal_read(const char* path, double fs_override, pogs_signal** out);
POGS_API void pogs_signal_free(pogs_signal* signal);
POGS_API size_t pogs_signal_size(const pogs_signal* signal);
POGS_API const double* pogs_signal_samples(const pogs_signal* signal);
POGS_API double pogs_signal_fs(const pogs_signal* signal);
/* NULL when the file named no channel. */
POGS_API const char* pogs_signal_channel(const pogs_signal* signal);
/* channel may be NULL. */
POGS_API pogs_status pogs_signal_write(const char* path, const double* samples, size_t n,
                                       double fs, const char* channel);

/* Labels files hold the intervals, signal length and fs, plus the generating
 * simulation config when written from a simulation. */
POGS_API pogs_status pogs_labels_read(const char* path, pogs_labels** out, double* fs);
POGS_API pogs_status pogs_labels_write_simulation(const char* path, const pogs_simulation* sim,
                                                  const pogs_sim_config* config);

#ifdef __cplusplus
}
#endif

#endif /* POGS_POGS_H */
