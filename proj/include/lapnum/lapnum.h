#ifndef LAPNUM_H
#define LAPNUM_H

/*
 * C interface to the lapnum library: weighted Laplace-type operators
 *   (L f)(x) = int_0^inf exp(-x y^lambda) f(y) v(y) dy
 * between Lebesgue spaces on the half-line.
 *
 * Objects are opaque handles created and destroyed through this interface.
 * Every function returns a status code; on failure the message is available
 * from lapnum_last_error() on the same thread until the next call.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(LAPNUM_BUILDING)
#define LAPNUM_API __attribute__((visibility("default")))
#else
#define LAPNUM_API
#endif

typedef enum lapnum_status {
  LAPNUM_OK = 0,
  LAPNUM_INVALID_ARGUMENT = 1,
  LAPNUM_UNSUPPORTED = 2,
  LAPNUM_NOT_COMPACT = 3,
  LAPNUM_UNBOUNDED = 4,
  LAPNUM_CONFIG_ERROR = 5,
  LAPNUM_INTERNAL_ERROR = 6
} lapnum_status;

typedef struct lapnum_weight lapnum_weight;
typedef struct lapnum_params lapnum_params;
typedef struct lapnum_config lapnum_config;

LAPNUM_API const char* lapnum_version(void);
LAPNUM_API const char* lapnum_last_error(void);

/* Piecewise-power weight v(y) = coeff[i] * y^exponent[i] on [lo[i], hi[i]); hi may be INFINITY. */
LAPNUM_API lapnum_status lapnum_weight_create(const double* lo, const double* hi, const double* coeff,
                                              const double* exponent, size_t pieces, lapnum_weight** out);
LAPNUM_API void lapnum_weight_destroy(lapnum_weight* w);
LAPNUM_API lapnum_status lapnum_weight_eval(const lapnum_weight* w, double y, double* out);

/* Exponents p in [1, inf], q in (0, inf] and lambda > 0. */
LAPNUM_API lapnum_status lapnum_params_create(double p, double q, double lambda, lapnum_params** out);
LAPNUM_API void lapnum_params_destroy(lapnum_params* params);

typedef struct lapnum_bound {
  double value;       /* criterion quantity */
  double lower_bound; /* lower estimate of the operator norm */
  double upper_bound; /* upper estimate (INFINITY when unavailable) */
  int bounded;        /* 1 bounded, 0 unbounded, -1 undecided */
  int compact;        /* 1 compact, 0 not compact, -1 not applicable or undecided */
} lapnum_bound;

LAPNUM_API lapnum_status lapnum_norm_bounds(const lapnum_params* params, const lapnum_weight* w, lapnum_bound* out);

/* int_0^inf (exp(-x z^lambda) - exp(-x b^lambda))^delta dx for 0 < z < b <= inf. */
LAPNUM_API lapnum_status lapnum_tail_integral(double z, double b, double delta, double lambda, double* out);

/* Local norm bounds on the interval (a, b). */
LAPNUM_API lapnum_status lapnum_local_bounds(const lapnum_params* params, const lapnum_weight* w, double a,
                                             double b, double* lower, double* upper);

/* Greedy epsilon-partition: interval count N + 1 and the bound on a_{N+1}. */
LAPNUM_API lapnum_status lapnum_partition(const lapnum_params* params, const lapnum_weight* w, double epsilon,
                                          int* N, double* an_bound);

LAPNUM_API lapnum_status lapnum_J_s(const lapnum_params* params, const lapnum_weight* w, double s, double* out);
LAPNUM_API lapnum_status lapnum_asymptotic_constant(const lapnum_params* params, const lapnum_weight* w,
                                                    double* out);
LAPNUM_API lapnum_status lapnum_hilbert_schmidt(double lambda, const lapnum_weight* w, double* out);

/* Largest `count` singular values of the discretized operator with `size` nodes per axis. */
LAPNUM_API lapnum_status lapnum_singular_values(const lapnum_params* params, const lapnum_weight* w, int size,
                                                double* out, int count);

/* Experiment configuration: JSON text, or the built-in default (fixture W1, p = q = 2, lambda = 1). */
LAPNUM_API lapnum_status lapnum_config_from_json(const char* text, lapnum_config** out);
LAPNUM_API lapnum_status lapnum_config_default(lapnum_config** out);
/* Overrides one top-level key; value_json is JSON text (a bare word is read as a string). */
LAPNUM_API lapnum_status lapnum_config_set(lapnum_config* cfg, const char* key, const char* value_json);
LAPNUM_API void lapnum_config_destroy(lapnum_config* cfg);

/*
 * Runs a subcommand (criteria, kbounds, partition, an-curve, schatten,
 * asymptotics, oracle, verify, all) and writes its reports. exit_code is
 * 0 on success, 1 when verification fails and 2 on a configuration error.
 */
LAPNUM_API lapnum_status lapnum_run(const char* subcommand, const lapnum_config* cfg, int* exit_code);

/* Paths written by the last lapnum_run on this thread, newline separated. */
LAPNUM_API const char* lapnum_last_outputs(void);

#ifdef __cplusplus
}
#endif

#endif /* LAPNUM_H */
