/*
 * (C) Copyright 2026 tfpoisson developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

/* C interface to the time-fractional Poisson kernel library.
 *
 * Conventions:
 *   - Every fallible call returns a tfp_status; outputs are written only
 *     on TFP_OK.  tfp_last_error() describes the most recent failure in
 *     the calling thread.
 *   - Handles are created from JSON spec strings and released with the
 *     matching destroy call.  NULL is always safe to destroy.
 *   - Handles are immutable after creation; concurrent reads from many
 *     threads are safe.
 *   - Strings returned through char** outputs are released with
 *     tfp_string_free().
 */

#ifndef TFP_H
#define TFP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tfp_status {
  TFP_OK = 0,
  TFP_ERR_DOMAIN = 1,      /* argument outside its mathematical domain */
  TFP_ERR_CONFIG = 2,      /* malformed spec JSON or call plumbing */
  TFP_ERR_NUMERIC = 3,     /* quadrature or solver failure */
  TFP_ERR_UNSUPPORTED = 4, /* operation unavailable for this spec */
  TFP_ERR_INTERNAL = 5
} tfp_status;

/* Version string of the library, e.g. "1.0.0". */
const char* tfp_version(void);

/* Message for the most recent failure in this thread; never NULL. */
const char* tfp_last_error(void);

/* Releases strings returned through char** outputs. */
void tfp_string_free(char* s);

/* ---- Bernstein exponent -------------------------------------------- */

typedef struct tfp_bernstein tfp_bernstein;

/* spec_json shapes:
 *   {"kind":"stable","beta":0.5}
 *   {"kind":"mixture","components":[{"weight":0.5,"beta":0.3},...]}
 *   {"kind":"tabulated","lambda":[...],"phi":[...]}
 */
tfp_status tfp_bernstein_create(const char* spec_json, tfp_bernstein** out);
void tfp_bernstein_destroy(tfp_bernstein* b);

tfp_status tfp_bernstein_phi(const tfp_bernstein* b, double lambda,
                             double* out);
tfp_status tfp_bernstein_phi_inverse(const tfp_bernstein* b, double y,
                                     double* out);
/* Levy tail w(x) = nu(x, inf). */
tfp_status tfp_bernstein_levy_tail(const tfp_bernstein* b, double x,
                                   double* out);

/* ---- Clock density evaluator ---------------------------------------- */

typedef struct tfp_density tfp_density;

tfp_status tfp_density_create(const tfp_bernstein* b, tfp_density** out);
void tfp_density_destroy(tfp_density* d);

/* Density of the clock at level r evaluated in t. */
tfp_status tfp_density_eval(const tfp_density* d, double r, double t,
                            double* out);
/* Density of the running clock (time change) at level r, time t. */
tfp_status tfp_density_inverse(const tfp_density* d, double t, double r,
                               double* out);
/* Potential density G(t). */
tfp_status tfp_density_potential(const tfp_density* d, double t, double* out);
/* P(clock at level r exceeds t). */
tfp_status tfp_density_survival(const tfp_density* d, double r, double t,
                                double* out);
/* argmax_t of the level-r density. */
tfp_status tfp_density_mode(const tfp_density* d, double r, double* out);

/* ---- Heat kernels and fundamental solutions ------------------------- */

typedef struct tfp_kernel tfp_kernel;

/* spec_json shapes:
 *   {"kind":"gaussian"}            one-dimensional Gaussian kernel
 *   {"kind":"cauchy"}              one-dimensional Cauchy kernel
 *   {"kind":"stable","alpha":1.5}  one-dimensional symmetric stable kernel
 */
tfp_status tfp_kernel_create(const char* spec_json, tfp_kernel** out);
void tfp_kernel_destroy(tfp_kernel* k);

/* Radial kernel value p0(t, z); first argument is time. */
tfp_status tfp_kernel_p0(const tfp_kernel* k, double t, double z,
                         double* out);

/* Fundamental solution with the killed clock.  error may be NULL. */
tfp_status tfp_qkernel(const tfp_kernel* k, const tfp_density* d, double t,
                       double z, double* value, double* error);
/* Fundamental solution with the running clock.  error may be NULL. */
tfp_status tfp_pkernel(const tfp_kernel* k, const tfp_density* d, double t,
                       double z, double* value, double* error);

/* Mild solution of the forced problem on a product grid (t outer, x
 * inner, row-major).  Sources are chosen by name:
 *   g_name in {"zero", "cos", "gauss"}  initial data (gauss = exp(-x^2))
 *   f_name in {"zero", "cos"}           forcing, constant in time
 * "zero" drops the term.  Gaussian kernel only.  values must hold nt*nx
 * doubles; errors may be NULL or the same size.
 */
tfp_status tfp_solve_duhamel(const tfp_kernel* k, const tfp_density* d,
                             const char* g_name, const char* f_name,
                             const double* t_grid, size_t nt,
                             const double* x_grid, size_t nx, double rel_tol,
                             double* values, double* errors);

/* ---- Sampling -------------------------------------------------------- */

/* n independent draws of the clock at level r (stable exponent beta). */
tfp_status tfp_sample_stable(double beta, double r, uint64_t seed, size_t n,
                             double* out);
/* n independent first-passage draws of the running clock at time t;
 * step is the simulation resolution as a fraction of t, in (0, 0.1]. */
tfp_status tfp_sample_inverse(double beta, double t, double step,
                              uint64_t seed, size_t n, double* out);

/* ---- Validation ------------------------------------------------------ */

/* Runs a named validation suite: one of scaling, unimodality,
 * sub-envelope, identities, conjugate, q-envelope, pde, montecarlo, all.
 * quick != 0 halves grids and relaxes tolerances five-fold.  On TFP_OK,
 * *pass_out is 1 iff every criterion passed; *json_report (required) and
 * *table_text (optional, may be NULL) receive malloc'd strings for
 * tfp_string_free.
 */
tfp_status tfp_validate(const char* suite, int quick, uint64_t seed,
                        int* pass_out, char** json_report, char** table_text);

/* Runs a single numbered criterion (1..13); *json_report receives the
 * criterion record as a malloc'd string for tfp_string_free. */
tfp_status tfp_validate_criterion(int id, int quick, uint64_t seed,
                                  int* pass_out, char** json_report);

#ifdef __cplusplus
}
#endif

#endif /* TFP_H */
