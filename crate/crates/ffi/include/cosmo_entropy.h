/* C ABI for the cosmo-entropy library. Generated by cbindgen; do not edit. */

#ifndef COSMO_ENTROPY_H
#define COSMO_ENTROPY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Matching-mode selector for matched-vacuum calls.
typedef enum CosmoMatchMode {
  COSMO_MATCH_MODE_EXACT_NUMERIC = 0,
  COSMO_MATCH_MODE_PAPER_LEADING_ORDER = 1,
} CosmoMatchMode;

// Inner-solution parity selector for matched-vacuum calls.
typedef enum CosmoParity {
  COSMO_PARITY_SINH = 0,
  COSMO_PARITY_COSH = 1,
} CosmoParity;

// Status codes returned by every fallible call.
typedef enum CosmoStatus {
  COSMO_STATUS_OK = 0,
  COSMO_STATUS_NULL_POINTER = 1,
  COSMO_STATUS_INVALID_ARGUMENT = 2,
  COSMO_STATUS_PARSE_ERROR = 3,
  COSMO_STATUS_NUMERICAL_ERROR = 4,
} CosmoStatus;

// Opaque parameter set; create via `cosmo_params_*`, release via
// [`cosmo_params_free`].
typedef struct CosmoParamsHandle CosmoParamsHandle;

// A possibly huge positive-or-negative value in log representation:
// `value = sign * exp(ln_mag)`, with `log10 = ln_mag / ln(10)`.
typedef struct CosmoLogValue {
  int8_t sign;
  double ln_mag;
  double log10;
} CosmoLogValue;

// Dimensionless scales derived from a parameter set. `sigma0` may be
// `+inf` in double precision; the log representation is always finite.
typedef struct CosmoScales {
  double lambda0;
  double sigma0;
  struct CosmoLogValue sigma0_log;
  double a;
  double e0;
  double k_eff;
} CosmoScales;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a UTF-8 JSON profile document into a new handle.
//
// # Safety
// `json` must point to a NUL-terminated string; `out` must be a valid
// pointer to a handle slot.
enum CosmoStatus cosmo_params_from_json(const char *json, struct CosmoParamsHandle **out);

// Creates a handle holding the built-in `planck2015` profile.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum CosmoStatus cosmo_params_planck2015(struct CosmoParamsHandle **out);

// Creates a handle holding the built-in all-ones profile.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
enum CosmoStatus cosmo_params_unit(struct CosmoParamsHandle **out);

// Releases a handle returned by one of the `cosmo_params_*` constructors.
// A null pointer is a no-op.
//
// # Safety
// `handle` must have been produced by this library and not freed before.
void cosmo_params_free(struct CosmoParamsHandle *handle);

// Derives the dimensionless scales of a parameter set.
//
// # Safety
// `handle` must be a live handle; `out` must point to writable memory.
enum CosmoStatus cosmo_derive_scales(const struct CosmoParamsHandle *handle,
                                     struct CosmoScales *out);

// Radius of a universe with entropy scale `sigma`:
// `R = sqrt(sigma hbar / (m H0))` in metres.
//
// # Safety
// `handle` must be a live handle; `out` must point to writable memory.
enum CosmoStatus cosmo_radius_for_entropy(const struct CosmoParamsHandle *handle,
                                          double sigma,
                                          double *out);

// Plane-wave gravitational entropy `N m H0 R0^2 / hbar` in units of `kB`.
//
// # Safety
// `handle` must be a live handle; `out` must point to writable memory.
enum CosmoStatus cosmo_grav_entropy_plane(const struct CosmoParamsHandle *handle,
                                          double n_factor,
                                          struct CosmoLogValue *out);

// Spherical-wave gravitational entropy `N m H0 R0^2 / (3 hbar)` in `kB`.
//
// # Safety
// `handle` must be a live handle; `out` must point to writable memory.
enum CosmoStatus cosmo_grav_entropy_spherical(const struct CosmoParamsHandle *handle,
                                              double n_factor,
                                              struct CosmoLogValue *out);

// Nonperturbative gravitational entropy `N sigma0 <x^2>(x0)` in `kB`; at
// `x0 = 1` bit-identical to the plane-wave value.
//
// # Safety
// `handle` must be a live handle; `out` must point to writable memory.
enum CosmoStatus cosmo_grav_entropy_nonperturbative(const struct CosmoParamsHandle *handle,
                                                    double x0,
                                                    double n_factor,
                                                    struct CosmoLogValue *out);

// Closed-form `<x^2>(x0) = (x0^2 + 3 x0 + 6)/10`.
//
// # Safety
// `out` must point to writable memory.
enum CosmoStatus cosmo_x2_closed(double x0, double *out);

// `<x^2>` of the matched vacuum state by quadrature; valid at any sigma,
// including the astronomical regime.
//
// # Safety
// `out` must point to writable memory.
enum CosmoStatus cosmo_x2_quadrature(double sigma,
                                     double x0,
                                     enum CosmoParity parity,
                                     enum CosmoMatchMode mode,
                                     double *out);

// Confluent hypergeometric function `1F1(alpha; gamma; z)` for complex
// arguments within the documented validity radius.
//
// # Safety
// `out_re` and `out_im` must point to writable memory.
enum CosmoStatus cosmo_hyp1f1(double alpha_re,
                              double alpha_im,
                              double gamma_re,
                              double gamma_im,
                              double z_re,
                              double z_im,
                              double *out_re,
                              double *out_im);

// Exact interacting radial solution (branch 1 or 2) at radius `r`.
//
// # Safety
// `out_re` and `out_im` must point to writable memory.
enum CosmoStatus cosmo_exact_radial(uint8_t branch,
                                    double lambda,
                                    double a,
                                    double r,
                                    double *out_re,
                                    double *out_im);

// Static human-readable message for a status code. Do not free.
const char *cosmo_status_message(enum CosmoStatus status);

// Library version as a static string. Do not free.
const char *cosmo_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COSMO_ENTROPY_H */
