/* Exercises the C interface from a C translation unit. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "lapnum/lapnum.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static int near(double a, double b, double tol) { return fabs(a - b) <= tol * fmax(1.0, fabs(b)); }

int main(void) {
  const double lo[] = {0.0}, hi[] = {1.0}, coeff[] = {1.0}, ex[] = {1.0};
  lapnum_weight* w = NULL;
  lapnum_params* p22 = NULL;
  lapnum_params* p21 = NULL;
  double v = 0.0;

  EXPECT(strlen(lapnum_version()) > 0);
  EXPECT(lapnum_weight_create(lo, hi, coeff, ex, 1, &w) == LAPNUM_OK);
  EXPECT(lapnum_params_create(2.0, 2.0, 1.0, &p22) == LAPNUM_OK);
  EXPECT(lapnum_params_create(2.0, 1.0, 1.0, &p21) == LAPNUM_OK);

  EXPECT(lapnum_weight_eval(w, 0.5, &v) == LAPNUM_OK && near(v, 0.5, 1e-15));

  lapnum_bound b;
  EXPECT(lapnum_norm_bounds(p22, w, &b) == LAPNUM_OK);
  EXPECT(b.bounded == 1 && b.compact == 1);
  EXPECT(b.lower_bound <= b.upper_bound);

  EXPECT(lapnum_tail_integral(1.0, 2.0, 2.0, 1.0, &v) == LAPNUM_OK && near(v, 1.0 / 12.0, 1e-12));

  double klo = 0.0, khi = 0.0;
  EXPECT(lapnum_local_bounds(p21, w, 0.0, 1.0, &klo, &khi) == LAPNUM_OK);
  EXPECT(near(klo, 1.0 / sqrt(3.0), 1e-9) && near(khi, klo, 1e-12));

  int N = -1;
  EXPECT(lapnum_partition(p22, w, 0.2, &N, &v) == LAPNUM_OK && N == 4 && near(v, 0.2 * sqrt(5.0), 1e-12));

  EXPECT(lapnum_J_s(p22, w, 1.0, &v) == LAPNUM_OK && near(v, sqrt(3.0), 1e-9));
  EXPECT(lapnum_asymptotic_constant(p22, w, &v) == LAPNUM_OK && near(v, 1.0, 1e-10));
  EXPECT(lapnum_hilbert_schmidt(1.0, w, &v) == LAPNUM_OK && near(v, 0.5, 1e-12));

  double sv[4];
  EXPECT(lapnum_singular_values(p22, w, 128, sv, 4) == LAPNUM_OK);
  EXPECT(sv[0] >= sv[1] && sv[1] >= sv[2] && sv[3] >= 0.0);

  /* Error paths. */
  lapnum_params* bad = NULL;
  EXPECT(lapnum_params_create(0.5, 2.0, 1.0, &bad) == LAPNUM_INVALID_ARGUMENT && bad == NULL);
  EXPECT(strlen(lapnum_last_error()) > 0);
  EXPECT(lapnum_tail_integral(2.0, 1.0, 1.0, 1.0, &v) == LAPNUM_INVALID_ARGUMENT);
  EXPECT(lapnum_norm_bounds(NULL, w, &b) == LAPNUM_INVALID_ARGUMENT);
  lapnum_weight* flat = NULL;
  const double flo[] = {0.0}, fhi[] = {INFINITY}, fc[] = {1.0}, fe[] = {0.0};
  EXPECT(lapnum_weight_create(flo, fhi, fc, fe, 1, &flat) == LAPNUM_OK);
  EXPECT(lapnum_partition(p22, flat, 0.1, &N, &v) == LAPNUM_NOT_COMPACT);

  lapnum_config* cfg = NULL;
  int code = -1;
  EXPECT(lapnum_config_from_json("{\"nonsense\": 1}", &cfg) == LAPNUM_OK);
  EXPECT(lapnum_run("criteria", cfg, &code) == LAPNUM_CONFIG_ERROR && code == 2);
  lapnum_config_destroy(cfg);
  EXPECT(lapnum_config_from_json("{", &cfg) == LAPNUM_CONFIG_ERROR);

  EXPECT(lapnum_config_default(&cfg) == LAPNUM_OK);
  EXPECT(lapnum_config_set(cfg, "output_dir", "\"capi-test-out\"") == LAPNUM_OK);
  EXPECT(lapnum_config_set(cfg, "weight", "not json") == LAPNUM_OK);
  EXPECT(lapnum_run("criteria", cfg, &code) == LAPNUM_CONFIG_ERROR && code == 2);
  EXPECT(lapnum_config_set(cfg, "weight", "[{\"lo\":0,\"hi\":1,\"coeff\":1,\"exp\":1}]") == LAPNUM_OK);
  EXPECT(lapnum_run("criteria", cfg, &code) == LAPNUM_OK && code == 0);
  EXPECT(strstr(lapnum_last_outputs(), "criteria-W1.json") != NULL);
  lapnum_config_destroy(cfg);

  lapnum_weight_destroy(flat);
  lapnum_weight_destroy(w);
  lapnum_params_destroy(p22);
  lapnum_params_destroy(p21);
  lapnum_params_destroy(bad);

  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
