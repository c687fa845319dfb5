#ifndef XHR_H
#define XHR_H

/* Generated with cbindgen; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum XhrStatus {
  XHR_STATUS_OK = 0,
  // Null pointer, unparsable string, or out-of-range argument.
  XHR_STATUS_INVALID_ARGUMENT = 1,
  // A closed form degenerates for these parameters (vanishing Pochhammer
  // factor or Gamma pole).
  XHR_STATUS_DEGENERATE_PARAMETER = 2,
  // The requested weight or integrand diverges on the unit circle.
  XHR_STATUS_DIVERGENT_WEIGHT = 3,
  // Index outside the family's index set.
  XHR_STATUS_INDEX_OUT_OF_SET = 4,
  // A verification suite ran and reported failures.
  XHR_STATUS_VERIFICATION_FAILED = 5,
  // Internal invariant violation.
  XHR_STATUS_INTERNAL_ERROR = 6,
} XhrStatus;

// Opaque handle onto one exceptional HR family.
typedef struct XhrFamily XhrFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Detail message for the most recent failure on this thread. Owned by the
// library; valid until the next failing call.
const char *xhr_last_error_message(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be a pointer previously returned through an out-parameter of this
// library, or null.
void xhr_string_free(char *s);

// Creates an exceptional-family handle for type `j0` (1..4), seed degree
// `l0` (>= 1) and exact rational parameters (e.g. "1/2").
//
// # Safety
// `alpha` and `beta` must be valid NUL-terminated strings; `out` must be a
// valid pointer.
enum XhrStatus xhr_family_new(uint8_t j0,
                              uint32_t l0,
                              const char *alpha,
                              const char *beta,
                              struct XhrFamily **out);

// Releases a family handle.
//
// # Safety
// `fam` must come from [`xhr_family_new`] (or be null) and not be used
// afterwards.
void xhr_family_free(struct XhrFamily *fam);

// Writes `P^(j0,l0,n)` as a JSON record
// `{family, n, degree, coefficients: [[exponent, "p/q"], ...]}`.
//
// # Safety
// `fam` must be a live handle; `out_json` must be valid. The result is
// released with [`xhr_string_free`].
enum XhrStatus xhr_family_poly_json(const struct XhrFamily *fam, int64_t n, char **out_json);

// Writes the biorthogonal partner `Q^(j0,l0,n)` as a JSON record.
//
// # Safety
// As [`xhr_family_poly_json`].
enum XhrStatus xhr_family_partner_json(const struct XhrFamily *fam, int64_t n, char **out_json);

// Degree of `P^(j0,l0,n)`; fails for indices outside the index set.
//
// # Safety
// `fam` must be a live handle; `out` must be valid.
enum XhrStatus xhr_family_degree(const struct XhrFamily *fam, int64_t n, int64_t *out);

// The closed-form norm `h^(j0,l0)_n` (state-addition index excluded).
//
// # Safety
// `fam` must be a live handle; `out` must be valid.
enum XhrStatus xhr_family_norm(const struct XhrFamily *fam, int64_t n, double *out);

// Writes the classical HR polynomial `P_n(z; alpha, beta)` as a JSON record.
//
// # Safety
// `alpha`, `beta` must be valid strings; `out_json` as above.
enum XhrStatus xhr_hr_poly_json(const char *alpha, const char *beta, uint32_t n, char **out_json);

// The classical norm `h_n` as a double.
//
// # Safety
// `alpha`, `beta` must be valid strings; `out` must be valid.
enum XhrStatus xhr_hr_norm(const char *alpha, const char *beta, uint32_t n, double *out);

// Runs a named verification suite and writes its JSON report. Returns
// `XHR_OK` when every case passed, `XHR_VERIFICATION_FAILED` when the suite
// ran but reported failures (the report is still written).
//
// Suites that need a seed read `j0`/`l0`; the others ignore them. The
// multi-step suite is driven through the CLI instead (it needs a seed list).
//
// # Safety
// `suite`, `alpha`, `beta` must be valid strings; `out_report_json` as
// above.
enum XhrStatus xhr_verify_suite(const char *suite,
                                const char *alpha,
                                const char *beta,
                                uint8_t j0,
                                uint32_t l0,
                                uint32_t n_max,
                                uint32_t quad_level,
                                char **out_report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XHR_H */
