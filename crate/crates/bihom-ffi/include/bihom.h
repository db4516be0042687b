#ifndef BIHOM_H
#define BIHOM_H

/* This file is generated from the bihom-ffi crate; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a fallible call; mirrors the CLI exit codes.
typedef enum BihomStatus {
  // The call succeeded (for checks: the suite passed).
  BIHOM_STATUS_OK = 0,
  // The requested suite ran and failed (the report is still written).
  BIHOM_STATUS_CHECK_FAILED = 1,
  // Usage, parse, or validation error; see `bihom_last_error_message`.
  BIHOM_STATUS_ERROR = 2,
} BihomStatus;

// An algebra bundle behind an opaque pointer.
typedef struct BihomAlgebra BihomAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the message of the most recent status-2 failure on this
// thread, or NULL if none. The caller owns the string and must free it
// with `bihom_string_free`.
char *bihom_last_error_message(void);

// Frees a string returned by this library. NULL is accepted.
//
// # Safety
// `s` must be NULL or a pointer previously returned by a function of
// this library and not yet freed.
void bihom_string_free(char *s);

// Frees an algebra handle. NULL is accepted.
//
// # Safety
// `alg` must be NULL or a handle previously returned by this library
// and not yet freed.
void bihom_algebra_free(struct BihomAlgebra *alg);

// Parses an algebra file from JSON text and validates its syntax. On
// success writes a fresh handle to `out` and returns OK.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum BihomStatus bihom_algebra_from_json(const char *json, struct BihomAlgebra **out);

// Serializes a handle back to deterministic JSON. Returns NULL on a NULL
// handle. The caller frees the string.
//
// # Safety
// `alg` must be NULL or a live handle from this library.
char *bihom_algebra_to_json(const struct BihomAlgebra *alg);

// Carrier dimension of the algebra behind the handle; 0 for NULL.
//
// # Safety
// `alg` must be NULL or a live handle from this library.
uintptr_t bihom_algebra_dim(const struct BihomAlgebra *alg);

// Builds a generator-family instance. `family` is `truncated-poly`,
// `nilpotent` or `zero`; `size` is the family's carrier parameter;
// `a` and `b` are canonical rational scalings (NULL means `1`).
//
// # Safety
// `family` must be a NUL-terminated string; `a`/`b` NULL or such
// strings; `out` a valid pointer.
enum BihomStatus bihom_gen(const char *family,
                           uintptr_t size,
                           const char *a,
                           const char *b,
                           struct BihomAlgebra **out);

// Runs a named identity suite against the handle. Returns OK when the
// suite passes and CHECK_FAILED when it ran and failed (in both cases
// the JSON report is written to `report_json`), and ERROR for unknown or
// inapplicable suites and invalid bundles. `max_witnesses` of 0 means
// the default cap of 16.
//
// # Safety
// `alg` must be a live handle, `suite` a NUL-terminated string,
// `report_json` NULL or a valid pointer.
enum BihomStatus bihom_check(const struct BihomAlgebra *alg,
                             const char *suite,
                             uintptr_t max_witnesses,
                             char **report_json);

// Applies a construction. `kind` is one of the construct kind names
// (`yau-twist`, `twist-power`, `tensor`, `perturb-mu`, `perturb-thm1`,
// `perturb-thm2`, `perturb-double`, `derivation-bhnp`,
// `derivation-perturbed`, `bracket`); `second` is required only for
// `tensor`. `params_json` is NULL or a JSON object with optional keys
// `element`, `element_b` (rational lists like "1,0" or "auto"), `n`
// (twist power), `ta`/`tb` (row-major matrices of rational strings) and
// `verify` (re-run the promised suite on the output). Returns
// CHECK_FAILED when `verify` is set and the promised suite fails.
//
// # Safety
// `kind` must be a NUL-terminated string; `first` a live handle;
// `second` NULL or a live handle; `params_json` NULL or a
// NUL-terminated string; `out` a valid pointer.
enum BihomStatus bihom_construct(const char *kind,
                                 const struct BihomAlgebra *first,
                                 const struct BihomAlgebra *second,
                                 const char *params_json,
                                 struct BihomAlgebra **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIHOM_H */
