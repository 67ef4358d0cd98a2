/*
 * icts - induced-coherence tomography simulator, C API.
 *
 * The core is a C++ library; this header is the stable shared-library
 * surface. Handles are opaque, every call returns a status code, and the
 * last error message is kept per thread.
 */
#ifndef ICTS_H
#define ICTS_H

#include <stdint.h>

#if defined(_WIN32)
#define ICTS_API __declspec(dllexport)
#else
#define ICTS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum icts_status {
  ICTS_OK = 0,
  ICTS_E_VALIDATION = 1,       /* a numerical check failed */
  ICTS_E_CONFIG = 2,           /* malformed configuration */
  ICTS_E_IO = 3,               /* file system failure */
  ICTS_E_INVALID_ARGUMENT = 4, /* precondition violated */
  ICTS_E_INTERNAL = 5
} icts_status;

/* Opaque simulation handle: a parsed, schema-validated configuration. */
typedef struct icts_sim icts_sim;

ICTS_API const char* icts_version(void);

/* Message for the most recent failing call on this thread. */
ICTS_API const char* icts_last_error(void);

/* Parses and validates a JSON configuration document. On success *out_sim
 * owns the parsed state; release it with icts_sim_destroy. */
ICTS_API icts_status icts_sim_create(const char* config_json, icts_sim** out_sim);
ICTS_API void icts_sim_destroy(icts_sim* sim);

/* Runs one command ("coherence" | "spectrum" | "scan" | "validate"), writing
 * data products under out_dir.
 *   seed   >= 0 overrides the config seed; pass -1 to keep it.
 *   format "csv" | "json" | "both"; NULL keeps the config value.
 *   report receives a heap JSON string when non-NULL (also on
 *          ICTS_E_VALIDATION); release it with icts_string_free.
 * Returns ICTS_E_VALIDATION when the command ran but a check failed. */
ICTS_API icts_status icts_sim_run(icts_sim* sim, const char* command,
                                  const char* out_dir, int64_t seed,
                                  const char* format, char** report);
ICTS_API void icts_string_free(char* text);

/* Pure evaluators over the single-mode two-crystal model. */

/* |g1| from the Gaussian moment chain at parametric gain r and complex
 * transmissivity mu. Fails for gain = 0 (fluxes vanish). */
ICTS_API icts_status icts_degree_of_coherence(double gain, double mu_re,
                                              double mu_im, double* out_g1);

/* Closed form |mu| sqrt((1+V^2)/(1+|mu|^2 V^2)), V = sinh(gain). */
ICTS_API icts_status icts_coherence_closed_form(double gain, double mu_abs,
                                                double* out_g1);

/* Gain -> 0 limit: exactly |mu|. */
ICTS_API icts_status icts_low_gain_coherence(double mu_re, double mu_im,
                                             double* out_g1);

/* Truncated Fock-space oracle. cutoff <= 0 selects the default (12); the
 * cutoff escalates automatically while the boundary leakage stays above
 * 1e-6, up to a hard cap of 20. */
ICTS_API icts_status icts_oracle_coherence(double gain, double mu_abs, int cutoff,
                                           double* out_g1, double* out_leakage);

#ifdef __cplusplus
}
#endif

#endif /* ICTS_H */
